// entangle.hpp
// Two-particle spin-1/2 states: pairwise Lorentz transformation, the
// spin-spin reduced state and CHSH correlations.

#pragma once

#include <array>
#include <vector>

#include "rqi/density.hpp"
#include "rqi/grid.hpp"
#include "rqi/lorentz.hpp"

namespace rqi::entangle {

/// g(σ₁σ₂, p₁, p₂) stored as four planes (σ index 2σ₁+σ₂, 0 = up) of
/// N₁×N₂ values, row-major in (p₁, p₂).
class TwoParticleState {
 public:
  using Planes = std::array<std::vector<Complex>, 4>;

  /// Validates sizes and unit norm within 1e-6.
  TwoParticleState(MomentumGrid grid1, MomentumGrid grid2, Planes g);

  const MomentumGrid& grid1() const { return grid1_; }
  const MomentumGrid& grid2() const { return grid2_; }
  double mass() const { return grid1_.mass(); }
  const Planes& planes() const { return g_; }
  Complex operator()(int spin, std::size_t i1, std::size_t i2) const {
    return g_[spin][i1 * grid2_.size() + i2];
  }
  double norm() const;

 private:
  MomentumGrid grid1_, grid2_;
  Planes g_;
};

/// Product of identical Gaussians in p₁ and p₂ times `spin_state`.
TwoParticleState two_particle_gaussian(double mass, double delta, const CVec4& spin_state,
                                       const GridSpec& spec);

/// U(Λ)⊗U(Λ).
TwoParticleState apply_boost_pair(const TwoParticleState& state, const lorentz::LorentzMatrix& lambda);

DensityMatrix4 spin_spin_dm(const TwoParticleState& state);

/// Wootters concurrence.
double concurrence(const DensityMatrix4& rho);

/// Entanglement entropy (bits) of particle 1 vs particle 2, momenta included.
double bipartition_entropy(const TwoParticleState& state);

CVec4 singlet();

enum class SpinModel {
  momentum_dependent,  // α(a,p)·σ
  wigner_spin          // a·σ
};

struct CHSHSettings {
  Vec3 a1 = Vec3::UnitX(), a2 = Vec3::UnitY();
  Vec3 b1 = Vec3::UnitX(), b2 = Vec3::UnitY();
  Vec3 p_a = Vec3::Zero(), p_b = Vec3::Zero();
  double mass = 1;
  SpinModel model = SpinModel::momentum_dependent;

  /// Throws std::domain_error unless the four settings are unit and m > 0.
  void validate() const;
};

/// a₁ = x̂, a₂ = ŷ, b₁,₂ = (x̂ ± ŷ)/√2 at rest.
CHSHSettings optimal_rest_settings();

/// α = (m/p⁰)a + (1-m/p⁰)(a·n)n, n = p/|p|.
Vec3 alpha_vector(const Vec3& a, const Vec3& p, double mass);
/// α(a,p)·σ.
CMat2 chsh_operator(const Vec3& a, const Vec3& p, double mass);

/// |⟨A₁(B₁+B₂)⟩ + ⟨A₂(B₁-B₂)⟩| / 2 at sharp momenta.
double chsh_value(const CHSHSettings& settings, const DensityMatrix4& rho);
/// Same, with operators evaluated at every grid momentum.
double chsh_value(const CHSHSettings& settings, const TwoParticleState& state);

/// Settings rotated by W(Λ,p_i) with momenta carried to Λp_i.
CHSHSettings compensate_settings(const lorentz::LorentzMatrix& lambda, const Vec3& p1,
                                 const Vec3& p2, double mass, const CHSHSettings& settings);

/// A₁A₂ + A₂A₁ = 0 and B₁B₂ + B₂B₁ = 0 within `tol`.
bool anticommuting_settings(const CHSHSettings& settings, double tol = 1e-10);

}  // namespace rqi::entangle
