// massive.hpp
// Spin-1/2 wavepackets, their Lorentz transformation and the reduced spin
// state seen in the boosted frame.

#pragma once

#include <vector>

#include "rqi/density.hpp"
#include "rqi/grid.hpp"
#include "rqi/lorentz.hpp"
#include "rqi/sweep.hpp"

namespace rqi::massive {

/// ψ_σ(p) on a momentum grid; `up` is σ = +1/2, `down` is σ = -1/2.
class SpinorWavepacket {
 public:
  /// Validates sizes, m > 0 and unit norm within 1e-6.
  SpinorWavepacket(MomentumGrid grid, std::vector<Complex> up, std::vector<Complex> down);

  const MomentumGrid& grid() const { return grid_; }
  double mass() const { return grid_.mass(); }
  std::size_t size() const { return grid_.size(); }
  const std::vector<Complex>& up() const { return up_; }
  const std::vector<Complex>& down() const { return down_; }
  CVec2 amplitude(std::size_t i) const { return {up_[i], down_[i]}; }

  /// Σ w (|ψ₊|² + |ψ₋|²).
  double norm() const;

 private:
  MomentumGrid grid_;
  std::vector<Complex> up_, down_;
};

struct BoostScenario {
  double delta_over_m = 0;
  double speed = 0;
  double gamma_param = 0;
  double theta = 0;

  static BoostScenario make(double delta_over_m, double speed, double theta);
};

/// Γ = (Δ/m)(1-√(1-v²))/v; 0 at v = 0.
double gamma_parameter(double delta, double mass, double v);

/// N exp(-p²/2Δ²) χ on a cylindrical grid of extent spec.cutoff·Δ.
SpinorWavepacket gaussian_wavepacket(double mass, double delta, const CVec2& chi,
                                     const GridSpec& spec);

/// ψ'(Λp) = D[W(Λ,p)] ψ(p) on the image grid.
SpinorWavepacket apply_boost(const SpinorWavepacket& state, const lorentz::LorentzMatrix& lambda);

/// ρ = Σ w ψ(p)ψ†(p).
DensityMatrix2 reduced_spin_dm(const SpinorWavepacket& state);

double spin_entropy(const DensityMatrix2& rho);

/// Leading-order boosted state of χ = (ζ, η) for a z-boost.
DensityMatrix2 boosted_dm_closed_form(double zeta, double eta, double gamma_param);

/// χ†ρχ.
double fidelity(const CVec2& chi, const DensityMatrix2& rho);
/// 1 - Γ²(3 + cos4θ)/16.
double fidelity_closed_form(double theta, double gamma_param);

/// ρ(1-Γ²/4) + (σx ρ σx + σy ρ σy)Γ²/8.
DensityMatrix2 effective_channel(const DensityMatrix2& rho, double gamma_param);

/// Boosted reduced spin state for a Gaussian packet with spinor χ, seen by
/// an observer moving with velocity `velocity`.
DensityMatrix2 boosted_spin_dm(double delta_over_m, const Vec3& velocity, const CVec2& chi,
                               const GridSpec& spec);

/// What the sweep angle θ controls.
enum class ThetaRole {
  spinor,          // χ = (cosθ, sinθ), boost along z
  boost_direction  // χ = (1, 0), boost in the xz-plane at angle θ from z
};

/// Rows (θ, Γ, S) sorted by θ then Γ.
SweepResult entropy_surface(double delta_over_m, const std::vector<double>& v_list,
                            const std::vector<double>& theta_list, const GridSpec& spec,
                            ThetaRole role = ThetaRole::spinor);

}  // namespace rqi::massive
