// photon.hpp
// Photon polarization: helicity bases, the transverse-POVM effective
// polarization density matrix, Gaussian beams and longitudinal Doppler shifts.

#pragma once

#include <array>
#include <vector>

#include "rqi/density.hpp"
#include "rqi/grid.hpp"
#include "rqi/lorentz.hpp"

namespace rqi::photon {

using PolarizationVector = CVec3;

struct HelicityBasis {
  PolarizationVector plus;
  PolarizationVector minus;
};

/// ε±_p = R(p̂)(1, ±i, 0)/√2.
HelicityBasis polarization_basis(const Vec3& p_hat);

/// Coefficients of a unit direction d̂ in the basis {ε⁺_p, ε⁻_p, p̂}:
/// x± = ⟨ε±_p|d̂⟩, x_ℓ = d̂·p̂.
struct DirectionComponents {
  Complex plus;
  Complex minus;
  double longitudinal = 0;
};
DirectionComponents generalized_direction_state(const Vec3& d_hat, const Vec3& p_hat);

enum class Axis { x = 0, y = 1, z = 2 };

/// Transverse part x₊ε⁺_p + x₋ε⁻_p of the axis direction.
PolarizationVector b_vector(Axis m, const Vec3& p_hat);

/// Σ_m |b_m⟩⟨b_m| at direction p̂.
CMat3 transverse_completeness(const Vec3& p_hat);

/// Helicity amplitudes a_σ(p) (momentum profile included) on a null-shell grid.
class PhotonWavepacket {
 public:
  struct Beam {
    double k_a = 1;
    double delta_z = 0;
    double delta_r = 0;
  };

  /// Validates a massless grid, sizes, unit norm within 1e-8 and Ω < 0.3.
  PhotonWavepacket(MomentumGrid grid, std::vector<Complex> plus, std::vector<Complex> minus,
                   Beam beam);

  const MomentumGrid& grid() const { return grid_; }
  std::size_t size() const { return grid_.size(); }
  const std::vector<Complex>& plus() const { return plus_; }
  const std::vector<Complex>& minus() const { return minus_; }
  const Beam& beam() const { return beam_; }
  /// Δ_r / k_A.
  double omega() const { return beam_.delta_r / beam_.k_a; }

  /// Cartesian polarization vector α(p_i) = a₊ε⁺ + a₋ε⁻.
  CVec3 alpha(std::size_t i) const;
  double norm() const;

 private:
  MomentumGrid grid_;
  std::vector<Complex> plus_, minus_;
  Beam beam_;
};

/// f(p) = N exp(-(p_z-k_A)²/2Δ_z²) exp(-p_r²/2Δ_r²) in a single helicity.
PhotonWavepacket gaussian_photon(double k_a, double delta_z, double delta_r, int helicity,
                                 const GridSpec& spec);

/// Gaussian profile with an arbitrary helicity superposition (c₊, c₋).
PhotonWavepacket gaussian_photon(double k_a, double delta_z, double delta_r, const CVec2& helicity,
                                 const GridSpec& spec);

/// ρ_mn = Σ w ⟨b_m|α⟩⟨α|b_n⟩.
DensityMatrix3 effective_density_matrix(const PhotonWavepacket& state);
/// ρ_mn = Σ w α_m α_n*.
DensityMatrix3 naive_density_matrix(const PhotonWavepacket& state);

/// POVM expectation ⟨Ψ|E_dd|Ψ⟩ for a complex probe direction d (normalized internally).
double probe_expectation(const PhotonWavepacket& state, const CVec3& direction);
/// ρ_mn from diagonal and x+z / x-iz style probe expectations.
Complex tomographic_element(const PhotonWavepacket& state, Axis m, Axis n);

/// a'_σ(Λp) = e^{-iσξ(Λ,p)} a_σ(p) on the image grid; beam parameters follow
/// the z-Doppler factor.
PhotonWavepacket apply_boost(const PhotonWavepacket& state, const lorentz::LorentzMatrix& lambda);

double photon_error_probability(const PhotonWavepacket& state_plus,
                                const PhotonWavepacket& state_minus);
/// Ω²/4.
double photon_error_probability_closed_form(double omega);

/// √((1+v)/(1-v)) for a receiver moving with velocity v along the beam.
double doppler_factor(double v);
/// Ωᴮ = √((1+v)/(1-v)) Ωᴬ.
double doppler_omega(double omega, double v);

struct DopplerResult {
  double value = 0;
  bool clamped = false;
};
/// P_Eᴮ = ((1+v)/(1-v)) P_Eᴬ, clamped at 1/2.
DopplerResult doppler_pe(double pe, double v);

/// Full-pipeline P_E between the ± beams seen by a receiver moving with
/// velocity v ẑ.
double boosted_error_probability(double omega, double v, const GridSpec& spec,
                                 double delta_z_over_k = 0.01);

}  // namespace rqi::photon
