#include "rqi/grid.hpp"

#include <cmath>
#include <memory>
#include <stdexcept>

#include <gsl/gsl_integration.h>

namespace rqi {

GridPreset parse_grid_preset(const std::string& name) {
  if (name == "COARSE" || name == "coarse") return GridPreset::coarse;
  if (name == "DEFAULT" || name == "default") return GridPreset::standard;
  if (name == "FINE" || name == "fine") return GridPreset::fine;
  throw std::invalid_argument("unknown grid preset '" + name + "' (expected COARSE|DEFAULT|FINE)");
}

std::string to_string(GridPreset p) {
  switch (p) {
    case GridPreset::coarse: return "COARSE";
    case GridPreset::standard: return "DEFAULT";
    case GridPreset::fine: return "FINE";
  }
  return "DEFAULT";
}

GridSpec single_particle_grid(GridPreset p) {
  switch (p) {
    case GridPreset::coarse: return {16, 8, 16, 6.0};
    case GridPreset::standard: return {48, 32, 48, 6.0};
    case GridPreset::fine: return {64, 48, 64, 6.0};
  }
  return {};
}

GridSpec pair_grid(GridPreset p) {
  switch (p) {
    case GridPreset::coarse: return {8, 4, 8, 6.0};
    case GridPreset::standard: return {16, 8, 16, 6.0};
    case GridPreset::fine: return {20, 8, 20, 6.0};
  }
  return {};
}

Quadrature1D gauss_legendre(int n, double a, double b) {
  if (n < 1) throw std::domain_error("gauss_legendre: need at least one node");
  std::unique_ptr<gsl_integration_glfixed_table, decltype(&gsl_integration_glfixed_table_free)>
      table(gsl_integration_glfixed_table_alloc(static_cast<std::size_t>(n)),
            &gsl_integration_glfixed_table_free);
  if (!table) throw std::runtime_error("gauss_legendre: table allocation failed");
  Quadrature1D q;
  q.nodes.resize(n);
  q.weights.resize(n);
  for (int i = 0; i < n; ++i) {
    gsl_integration_glfixed_point(a, b, static_cast<std::size_t>(i), &q.nodes[i], &q.weights[i],
                                  table.get());
  }
  return q;
}

MomentumGrid::MomentumGrid(double mass, std::vector<Vec3> momenta, std::vector<double> weights)
    : mass_(mass), momenta_(std::move(momenta)), weights_(std::move(weights)) {
  if (mass_ < 0) throw std::domain_error("MomentumGrid: negative mass");
  if (momenta_.size() != weights_.size()) {
    throw std::invalid_argument("MomentumGrid: node/weight count mismatch");
  }
  for (double w : weights_) {
    if (!(w > 0)) throw std::domain_error("MomentumGrid: weights must be positive");
  }
}

MomentumGrid MomentumGrid::cylindrical(const GridSpec& spec, double mass, double spread_r,
                                       double spread_z, double z_center) {
  if (spec.n_r < 1 || spec.n_phi < 1 || spec.n_z < 1 || !(spec.cutoff > 0)) {
    throw std::domain_error("MomentumGrid: invalid grid specification");
  }
  if (!(spread_r > 0) || !(spread_z > 0)) {
    throw std::domain_error("MomentumGrid: spreads must be positive");
  }
  const Quadrature1D qr = gauss_legendre(spec.n_r, 0.0, spec.cutoff * spread_r);
  const Quadrature1D qz =
      gauss_legendre(spec.n_z, z_center - spec.cutoff * spread_z, z_center + spec.cutoff * spread_z);
  const double dphi = 2.0 * kPi / spec.n_phi;
  const double measure = 1.0 / std::pow(2.0 * kPi, 3);

  std::vector<Vec3> momenta;
  std::vector<double> weights;
  momenta.reserve(spec.size());
  weights.reserve(spec.size());
  for (int ir = 0; ir < spec.n_r; ++ir) {
    const double pr = qr.nodes[ir];
    for (int ip = 0; ip < spec.n_phi; ++ip) {
      const double phi = ip * dphi;
      const double c = std::cos(phi), s = std::sin(phi);
      for (int iz = 0; iz < spec.n_z; ++iz) {
        const Vec3 p(pr * c, pr * s, qz.nodes[iz]);
        const double e = std::sqrt(p.squaredNorm() + mass * mass);
        momenta.push_back(p);
        weights.push_back(measure * qr.weights[ir] * pr * dphi * qz.weights[iz] / (2.0 * e));
      }
    }
  }
  return MomentumGrid(mass, std::move(momenta), std::move(weights));
}

double MomentumGrid::energy(std::size_t i) const {
  return std::sqrt(momenta_[i].squaredNorm() + mass_ * mass_);
}

lorentz::FourVector MomentumGrid::four_momentum(std::size_t i) const {
  const Vec3& p = momenta_[i];
  return {energy(i), p.x(), p.y(), p.z()};
}

MomentumGrid MomentumGrid::transformed(const lorentz::LorentzMatrix& lambda) const {
  std::vector<Vec3> image;
  image.reserve(size());
  for (std::size_t i = 0; i < size(); ++i) image.push_back((lambda * four_momentum(i)).spatial());
  return MomentumGrid(mass_, std::move(image), weights_);
}

}  // namespace rqi
