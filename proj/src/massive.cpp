#include "rqi/massive.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <stdexcept>

#include "rqi/kernels.hpp"

namespace rqi::massive {

using lorentz::LorentzMatrix;

SpinorWavepacket::SpinorWavepacket(MomentumGrid grid, std::vector<Complex> up,
                                   std::vector<Complex> down)
    : grid_(std::move(grid)), up_(std::move(up)), down_(std::move(down)) {
  if (!(grid_.mass() > 0)) throw std::domain_error("SpinorWavepacket: mass must be positive");
  if (up_.size() != grid_.size() || down_.size() != grid_.size()) {
    throw std::invalid_argument("SpinorWavepacket: amplitude count does not match grid");
  }
  if (std::abs(norm() - 1.0) > 1e-6) throw std::domain_error("SpinorWavepacket: state not normalized");
}

double SpinorWavepacket::norm() const {
  double s = 0;
  for (std::size_t i = 0; i < size(); ++i) {
    s += grid_.weight(i) * (std::norm(up_[i]) + std::norm(down_[i]));
  }
  return s;
}

BoostScenario BoostScenario::make(double delta_over_m, double speed, double theta) {
  if (!(delta_over_m > 0)) throw std::domain_error("BoostScenario: delta_over_m must be positive");
  return {delta_over_m, speed, gamma_parameter(delta_over_m, 1.0, speed), theta};
}

double gamma_parameter(double delta, double mass, double v) {
  if (!(delta > 0) || !(mass > 0)) throw std::domain_error("gamma_parameter: delta and mass must be positive");
  if (v < 0 || v >= 1) throw std::domain_error("gamma_parameter: speed must lie in [0, 1)");
  if (v == 0) return 0;
  return (delta / mass) * v / (1.0 + std::sqrt(1.0 - v * v));
}

SpinorWavepacket gaussian_wavepacket(double mass, double delta, const CVec2& chi,
                                     const GridSpec& spec) {
  if (!(mass > 0)) throw std::domain_error("gaussian_wavepacket: mass must be positive");
  if (!(delta > 0)) throw std::domain_error("gaussian_wavepacket: delta must be positive");
  if (std::abs(chi.norm() - 1.0) > 1e-10) throw std::domain_error("gaussian_wavepacket: spinor not normalized");

  MomentumGrid grid = MomentumGrid::cylindrical(spec, mass, delta, delta);
  std::vector<double> f(grid.size());
  double n2 = 0;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    f[i] = std::exp(-grid.momentum(i).squaredNorm() / (2 * delta * delta));
    n2 += grid.weight(i) * f[i] * f[i];
  }
  const double inv = 1.0 / std::sqrt(n2);
  std::vector<Complex> up(grid.size()), down(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) {
    up[i] = f[i] * inv * chi[0];
    down[i] = f[i] * inv * chi[1];
  }
  return SpinorWavepacket(std::move(grid), std::move(up), std::move(down));
}

SpinorWavepacket apply_boost(const SpinorWavepacket& state, const LorentzMatrix& lambda) {
  const MomentumGrid& g = state.grid();
  const std::size_t n = g.size();
  std::vector<Complex> mats(4 * n);
  for (std::size_t i = 0; i < n; ++i) {
    const auto r = lorentz::wigner_rotation(lambda, g.momentum(i), g.mass());
    const CMat2& d = lorentz::wigner_D_half(r).matrix();
    mats[4 * i + 0] = d(0, 0);
    mats[4 * i + 1] = d(0, 1);
    mats[4 * i + 2] = d(1, 0);
    mats[4 * i + 3] = d(1, 1);
  }
  std::vector<Complex> up = state.up(), down = state.down();
  kernels::apply_2x2(mats.data(), 1, up.data(), down.data(), n);
  return SpinorWavepacket(g.transformed(lambda), std::move(up), std::move(down));
}

DensityMatrix2 reduced_spin_dm(const SpinorWavepacket& state) {
  const std::array<const Complex*, 2> planes{state.up().data(), state.down().data()};
  std::array<Complex, 4> out{};
  kernels::hermitian_gram(planes, state.grid().weights().data(), state.size(), 1.0, out.data());
  CMat2 rho;
  rho << out[0], out[1], out[2], out[3];
  return DensityMatrix2(rho);
}

double spin_entropy(const DensityMatrix2& rho) { return von_neumann_entropy_bits(rho.matrix()); }

DensityMatrix2 boosted_dm_closed_form(double zeta, double eta, double gamma_param) {
  if (std::abs(zeta * zeta + eta * eta - 1.0) > 1e-10) {
    throw std::domain_error("boosted_dm_closed_form: spinor not normalized");
  }
  if (gamma_param < 0) throw std::domain_error("boosted_dm_closed_form: negative gamma");
  const double g = gamma_param * gamma_param / 4;
  CMat2 rho;
  rho << zeta * zeta * (1 - g) + eta * eta * g, zeta * eta * (1 - g),
         zeta * eta * (1 - g), zeta * zeta * g + eta * eta * (1 - g);
  return DensityMatrix2(rho);
}

double fidelity(const CVec2& chi, const DensityMatrix2& rho) {
  return std::clamp((chi.adjoint() * rho.matrix() * chi)(0, 0).real(), 0.0, 1.0);
}

double fidelity_closed_form(double theta, double gamma_param) {
  return 1.0 - gamma_param * gamma_param * (3.0 + std::cos(4 * theta)) / 16.0;
}

DensityMatrix2 effective_channel(const DensityMatrix2& rho, double gamma_param) {
  const double g2 = gamma_param * gamma_param;
  if (g2 > 2) throw std::domain_error("effective_channel: gamma^2 > 2 gives a negative Kraus weight");
  const CMat2& r = rho.matrix();
  const CMat2 sx = pauli_x(), sy = pauli_y();
  return DensityMatrix2(CMat2(r * (1 - g2 / 4) + (sx * r * sx + sy * r * sy) * (g2 / 8)));
}

DensityMatrix2 boosted_spin_dm(double delta_over_m, const Vec3& velocity, const CVec2& chi,
                               const GridSpec& spec) {
  const SpinorWavepacket psi = gaussian_wavepacket(1.0, delta_over_m, chi, spec);
  return reduced_spin_dm(apply_boost(psi, lorentz::boost_from_velocity(-velocity)));
}

SweepResult entropy_surface(double delta_over_m, const std::vector<double>& v_list,
                            const std::vector<double>& theta_list, const GridSpec& spec,
                            ThetaRole role) {
  if (v_list.empty() || theta_list.empty()) throw std::invalid_argument("entropy_surface: empty sweep");
  SweepResult out;
  out.columns = {"theta", "gamma", "entropy"};
  for (double theta : theta_list) {
    for (double v : v_list) {
      const double gamma = gamma_parameter(delta_over_m, 1.0, v);
      CVec2 chi;
      Vec3 vel;
      if (role == ThetaRole::spinor) {
        chi << std::cos(theta), std::sin(theta);
        vel = Vec3(0, 0, v);
      } else {
        chi << 1, 0;
        vel = Vec3(v * std::sin(theta), 0, v * std::cos(theta));
      }
      const double s = spin_entropy(boosted_spin_dm(delta_over_m, vel, chi, spec));
      out.add_row({theta, gamma, s});
    }
  }
  out.sort_rows(2);
  return out;
}

}  // namespace rqi::massive
