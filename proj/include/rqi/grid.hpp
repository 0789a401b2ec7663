// grid.hpp
// Momentum-space quadrature grids for the Lorentz-invariant measure
// dμ(p) = d³p / ((2π)³ 2E(p)).

#pragma once

#include <string>
#include <vector>

#include "rqi/lorentz.hpp"
#include "rqi/types.hpp"

namespace rqi {

/// Resolution of a cylindrical (p_r, φ, p_z) product grid. Extents are
/// `cutoff` spreads from the packet centre.
struct GridSpec {
  int n_r = 48;
  int n_phi = 32;
  int n_z = 48;
  double cutoff = 6.0;

  std::size_t size() const { return std::size_t(n_r) * std::size_t(n_phi) * std::size_t(n_z); }
};

enum class GridPreset { coarse, standard, fine };

GridPreset parse_grid_preset(const std::string& name);
std::string to_string(GridPreset p);

/// Single-particle grids: 16x8x16, 48x32x48, 64x48x64.
GridSpec single_particle_grid(GridPreset p);
/// Per-particle grids for dense two-particle states: 8x4x8, 16x8x16, 20x8x20.
GridSpec pair_grid(GridPreset p);

/// Gauss–Legendre nodes and weights on [a, b].
struct Quadrature1D {
  std::vector<double> nodes;
  std::vector<double> weights;
};
Quadrature1D gauss_legendre(int n, double a, double b);

/// Quadrature nodes (3-momenta) with weights approximating ∫dμ(p).
class MomentumGrid {
 public:
  MomentumGrid() = default;
  MomentumGrid(double mass, std::vector<Vec3> momenta, std::vector<double> weights);

  /// Cylindrical product grid around (0, 0, z_center): Gauss–Legendre in
  /// p_r ∈ [0, cutoff·spread_r] and p_z ∈ z_center ± cutoff·spread_z, uniform
  /// periodic rule in φ. `mass` = 0 gives a null-shell grid.
  static MomentumGrid cylindrical(const GridSpec& spec, double mass, double spread_r,
                                  double spread_z, double z_center = 0.0);

  std::size_t size() const { return momenta_.size(); }
  double mass() const { return mass_; }
  bool massless() const { return mass_ == 0.0; }
  const std::vector<Vec3>& momenta() const { return momenta_; }
  const std::vector<double>& weights() const { return weights_; }
  const Vec3& momentum(std::size_t i) const { return momenta_[i]; }
  double weight(std::size_t i) const { return weights_[i]; }
  double energy(std::size_t i) const;
  lorentz::FourVector four_momentum(std::size_t i) const;

  /// Image grid {Λp_i}; the weights carry over because dμ is invariant.
  MomentumGrid transformed(const lorentz::LorentzMatrix& lambda) const;

 private:
  double mass_ = 0;
  std::vector<Vec3> momenta_;
  std::vector<double> weights_;
};

}  // namespace rqi
