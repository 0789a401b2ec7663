#include "rqi/photon.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "rqi/kernels.hpp"

namespace rqi::photon {

namespace {

void require_unit(const Vec3& v, const char* what) {
  if (std::abs(v.norm() - 1.0) > 1e-10) throw std::domain_error(std::string(what) + ": expected a unit vector");
}

Vec3 axis_vector(Axis m) { return Vec3::Unit(static_cast<int>(m)); }

}  // namespace

HelicityBasis polarization_basis(const Vec3& p_hat) {
  require_unit(p_hat, "polarization_basis");
  const Mat3 r = lorentz::standard_rotation(p_hat).matrix();
  const double s = 1.0 / std::sqrt(2.0);
  const CVec3 plus = r.cast<Complex>() * CVec3(s, Complex(0, s), 0);
  return {plus, plus.conjugate()};
}

DirectionComponents generalized_direction_state(const Vec3& d_hat, const Vec3& p_hat) {
  require_unit(d_hat, "generalized_direction_state");
  const HelicityBasis e = polarization_basis(p_hat);
  const CVec3 d = d_hat.cast<Complex>();
  return {e.plus.dot(d), e.minus.dot(d), d_hat.dot(p_hat)};
}

PolarizationVector b_vector(Axis m, const Vec3& p_hat) {
  const HelicityBasis e = polarization_basis(p_hat);
  const DirectionComponents c = generalized_direction_state(axis_vector(m), p_hat);
  return c.plus * e.plus + c.minus * e.minus;
}

CMat3 transverse_completeness(const Vec3& p_hat) {
  CMat3 s = CMat3::Zero();
  for (Axis m : {Axis::x, Axis::y, Axis::z}) {
    const CVec3 b = b_vector(m, p_hat);
    s += b * b.adjoint();
  }
  return s;
}

PhotonWavepacket::PhotonWavepacket(MomentumGrid grid, std::vector<Complex> plus,
                                   std::vector<Complex> minus, Beam beam)
    : grid_(std::move(grid)), plus_(std::move(plus)), minus_(std::move(minus)), beam_(beam) {
  if (!grid_.massless()) throw std::domain_error("PhotonWavepacket: grid must be on the null shell");
  if (plus_.size() != grid_.size() || minus_.size() != grid_.size()) {
    throw std::invalid_argument("PhotonWavepacket: amplitude count does not match grid");
  }
  if (!(beam_.k_a > 0) || !(beam_.delta_r > 0) || !(beam_.delta_z > 0)) {
    throw std::domain_error("PhotonWavepacket: beam parameters must be positive");
  }
  if (!(omega() < 0.3)) throw std::domain_error("PhotonWavepacket: Omega must be below 0.3");
  if (std::abs(norm() - 1.0) > 1e-8) throw std::domain_error("PhotonWavepacket: state not normalized");
}

CVec3 PhotonWavepacket::alpha(std::size_t i) const {
  const HelicityBasis e = polarization_basis(grid_.momentum(i).normalized());
  return plus_[i] * e.plus + minus_[i] * e.minus;
}

double PhotonWavepacket::norm() const {
  double s = 0;
  for (std::size_t i = 0; i < size(); ++i) {
    s += grid_.weight(i) * (std::norm(plus_[i]) + std::norm(minus_[i]));
  }
  return s;
}

PhotonWavepacket gaussian_photon(double k_a, double delta_z, double delta_r, const CVec2& helicity,
                                 const GridSpec& spec) {
  if (!(k_a > 0)) throw std::domain_error("gaussian_photon: k_A must be positive");
  if (!(delta_z > 0) || !(delta_r > 0)) throw std::domain_error("gaussian_photon: spreads must be positive");
  if (delta_z > 0.3 * k_a || delta_r > 0.3 * k_a) {
    throw std::domain_error("gaussian_photon: spreads must not exceed 0.3 k_A");
  }
  if (std::abs(helicity.norm() - 1.0) > 1e-10) {
    throw std::domain_error("gaussian_photon: helicity vector not normalized");
  }
  MomentumGrid grid = MomentumGrid::cylindrical(spec, 0.0, delta_r, delta_z, k_a);
  std::vector<double> f(grid.size());
  double n2 = 0;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const Vec3& p = grid.momentum(i);
    const double dz = (p.z() - k_a) / delta_z;
    const double r2 = (p.x() * p.x() + p.y() * p.y()) / (delta_r * delta_r);
    f[i] = std::exp(-0.5 * dz * dz - 0.5 * r2);
    n2 += grid.weight(i) * f[i] * f[i];
  }
  const double inv = 1.0 / std::sqrt(n2);
  std::vector<Complex> plus(grid.size()), minus(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) {
    plus[i] = f[i] * inv * helicity[0];
    minus[i] = f[i] * inv * helicity[1];
  }
  return PhotonWavepacket(std::move(grid), std::move(plus), std::move(minus),
                          {k_a, delta_z, delta_r});
}

PhotonWavepacket gaussian_photon(double k_a, double delta_z, double delta_r, int helicity,
                                 const GridSpec& spec) {
  if (helicity != 1 && helicity != -1) throw std::domain_error("gaussian_photon: helicity must be +1 or -1");
  return gaussian_photon(k_a, delta_z, delta_r, helicity > 0 ? CVec2(1, 0) : CVec2(0, 1), spec);
}

namespace {

DensityMatrix3 gram3(const std::vector<Complex>& c0, const std::vector<Complex>& c1,
                     const std::vector<Complex>& c2, const std::vector<double>& w) {
  const std::array<const Complex*, 3> planes{c0.data(), c1.data(), c2.data()};
  std::array<Complex, 9> out{};
  kernels::hermitian_gram(planes, w.data(), w.size(), 1.0, out.data());
  CMat3 rho;
  for (int a = 0; a < 3; ++a)
    for (int b = 0; b < 3; ++b) rho(a, b) = out[3 * a + b];
  return DensityMatrix3(rho);
}

}  // namespace

DensityMatrix3 effective_density_matrix(const PhotonWavepacket& state) {
  const std::size_t n = state.size();
  std::array<std::vector<Complex>, 3> c;
  for (auto& v : c) v.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    const Vec3 p_hat = state.grid().momentum(i).normalized();
    const CVec3 a = state.alpha(i);
    for (Axis m : {Axis::x, Axis::y, Axis::z}) {
      c[static_cast<int>(m)][i] = b_vector(m, p_hat).dot(a);
    }
  }
  return gram3(c[0], c[1], c[2], state.grid().weights());
}

DensityMatrix3 naive_density_matrix(const PhotonWavepacket& state) {
  const std::size_t n = state.size();
  std::array<std::vector<Complex>, 3> c;
  for (auto& v : c) v.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    const CVec3 a = state.alpha(i);
    for (int m = 0; m < 3; ++m) c[m][i] = a[m];
  }
  return gram3(c[0], c[1], c[2], state.grid().weights());
}

double probe_expectation(const PhotonWavepacket& state, const CVec3& direction) {
  const double len = direction.norm();
  if (!(len > 0)) throw std::domain_error("probe_expectation: zero direction");
  const CVec3 d = direction / len;
  double s = 0;
  for (std::size_t i = 0; i < state.size(); ++i) {
    const Vec3 p_hat = state.grid().momentum(i).normalized();
    const HelicityBasis e = polarization_basis(p_hat);
    const CVec3 b = e.plus * e.plus.dot(d) + e.minus * e.minus.dot(d);
    s += state.grid().weight(i) * std::norm(b.dot(state.alpha(i)));
  }
  return s;
}

Complex tomographic_element(const PhotonWavepacket& state, Axis m, Axis n) {
  const CVec3 dm = axis_vector(m).cast<Complex>();
  const CVec3 dn = axis_vector(n).cast<Complex>();
  const Complex i(0, 1);
  const double e_mm = probe_expectation(state, dm);
  if (m == n) return e_mm;
  const double e_nn = probe_expectation(state, dn);
  const double e_sum = probe_expectation(state, dn + dm);
  const double e_phase = probe_expectation(state, dn - i * dm);
  return e_sum - i * e_phase - 0.5 * (1.0 - i) * (e_nn + e_mm);
}

PhotonWavepacket apply_boost(const PhotonWavepacket& state, const lorentz::LorentzMatrix& lambda) {
  const MomentumGrid& g = state.grid();
  std::vector<Complex> plus(state.size()), minus(state.size());
  for (std::size_t i = 0; i < state.size(); ++i) {
    const double xi = lorentz::photon_wigner_phase(lambda, g.four_momentum(i)).xi;
    const Complex ph = std::polar(1.0, -xi);
    plus[i] = ph * state.plus()[i];
    minus[i] = std::conj(ph) * state.minus()[i];
  }
  PhotonWavepacket::Beam beam = state.beam();
  const lorentz::FourVector centre(beam.k_a, 0, 0, beam.k_a);
  const double k_new = (lambda * centre).t;
  beam.delta_z *= k_new / beam.k_a;
  beam.k_a = k_new;
  return PhotonWavepacket(g.transformed(lambda), std::move(plus), std::move(minus), beam);
}

double photon_error_probability(const PhotonWavepacket& state_plus,
                                const PhotonWavepacket& state_minus) {
  return error_probability(effective_density_matrix(state_plus),
                           effective_density_matrix(state_minus));
}

double photon_error_probability_closed_form(double omega) { return omega * omega / 4.0; }

double doppler_factor(double v) {
  if (!(std::abs(v) < 1)) throw std::domain_error("doppler: |v| must be below 1");
  return std::sqrt((1 + v) / (1 - v));
}

double doppler_omega(double omega, double v) { return doppler_factor(v) * omega; }

DopplerResult doppler_pe(double pe, double v) {
  const double f = doppler_factor(v);
  const double value = f * f * pe;
  if (value > 0.5) return {0.5, true};
  return {value, false};
}

double boosted_error_probability(double omega, double v, const GridSpec& spec,
                                 double delta_z_over_k) {
  const double k_a = 1.0;
  const auto lambda = lorentz::boost_from_velocity(Vec3(0, 0, -v));
  const PhotonWavepacket plus =
      apply_boost(gaussian_photon(k_a, delta_z_over_k * k_a, omega * k_a, +1, spec), lambda);
  const PhotonWavepacket minus =
      apply_boost(gaussian_photon(k_a, delta_z_over_k * k_a, omega * k_a, -1, spec), lambda);
  return photon_error_probability(plus, minus);
}

}  // namespace rqi::photon
