#include "rqi/entangle.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include <Eigen/Eigenvalues>

#include "rqi/kernels.hpp"

namespace rqi::entangle {

using lorentz::LorentzMatrix;

TwoParticleState::TwoParticleState(MomentumGrid grid1, MomentumGrid grid2, Planes g)
    : grid1_(std::move(grid1)), grid2_(std::move(grid2)), g_(std::move(g)) {
  if (!(grid1_.mass() > 0) || grid1_.mass() != grid2_.mass()) {
    throw std::domain_error("TwoParticleState: both grids need the same positive mass");
  }
  const std::size_t n = grid1_.size() * grid2_.size();
  for (const auto& plane : g_) {
    if (plane.size() != n) throw std::invalid_argument("TwoParticleState: amplitude count does not match grids");
  }
  if (std::abs(norm() - 1.0) > 1e-6) throw std::domain_error("TwoParticleState: state not normalized");
}

double TwoParticleState::norm() const {
  const std::size_t n2 = grid2_.size();
  double s = 0;
  for (std::size_t i1 = 0; i1 < grid1_.size(); ++i1) {
    double row = 0;
    for (const auto& plane : g_) {
      const Complex* x = plane.data() + i1 * n2;
      for (std::size_t i2 = 0; i2 < n2; ++i2) row += grid2_.weight(i2) * std::norm(x[i2]);
    }
    s += grid1_.weight(i1) * row;
  }
  return s;
}

TwoParticleState two_particle_gaussian(double mass, double delta, const CVec4& spin_state,
                                       const GridSpec& spec) {
  if (!(mass > 0)) throw std::domain_error("two_particle_gaussian: mass must be positive");
  if (!(delta > 0)) throw std::domain_error("two_particle_gaussian: delta must be positive");
  if (std::abs(spin_state.norm() - 1.0) > 1e-10) {
    throw std::domain_error("two_particle_gaussian: spin state not normalized");
  }
  MomentumGrid grid = MomentumGrid::cylindrical(spec, mass, delta, delta);
  const std::size_t n = grid.size();
  std::vector<double> f(n);
  double n2 = 0;
  for (std::size_t i = 0; i < n; ++i) {
    f[i] = std::exp(-grid.momentum(i).squaredNorm() / (2 * delta * delta));
    n2 += grid.weight(i) * f[i] * f[i];
  }
  for (double& x : f) x /= std::sqrt(n2);
  TwoParticleState::Planes g;
  for (int s = 0; s < 4; ++s) {
    g[s].resize(n * n);
    for (std::size_t i1 = 0; i1 < n; ++i1)
      for (std::size_t i2 = 0; i2 < n; ++i2) g[s][i1 * n + i2] = f[i1] * f[i2] * spin_state[s];
  }
  return TwoParticleState(grid, grid, std::move(g));
}

namespace {

std::vector<Complex> wigner_matrices(const MomentumGrid& g, const LorentzMatrix& lambda) {
  std::vector<Complex> mats(4 * g.size());
  for (std::size_t i = 0; i < g.size(); ++i) {
    const CMat2& d = lorentz::wigner_D_half(lorentz::wigner_rotation(lambda, g.momentum(i), g.mass())).matrix();
    mats[4 * i + 0] = d(0, 0);
    mats[4 * i + 1] = d(0, 1);
    mats[4 * i + 2] = d(1, 0);
    mats[4 * i + 3] = d(1, 1);
  }
  return mats;
}

}  // namespace

TwoParticleState apply_boost_pair(const TwoParticleState& state, const LorentzMatrix& lambda) {
  const std::size_t n1 = state.grid1().size(), n2 = state.grid2().size();
  const std::vector<Complex> d1 = wigner_matrices(state.grid1(), lambda);
  const std::vector<Complex> d2 = wigner_matrices(state.grid2(), lambda);
  TwoParticleState::Planes g = state.planes();
  for (std::size_t i1 = 0; i1 < n1; ++i1) {
    const std::size_t off = i1 * n2;
    for (int s2 = 0; s2 < 2; ++s2) {
      kernels::apply_2x2(d1.data() + 4 * i1, 0, g[s2].data() + off, g[2 + s2].data() + off, n2);
    }
    for (int s1 = 0; s1 < 2; ++s1) {
      kernels::apply_2x2(d2.data(), 1, g[2 * s1].data() + off, g[2 * s1 + 1].data() + off, n2);
    }
  }
  return TwoParticleState(state.grid1().transformed(lambda), state.grid2().transformed(lambda),
                          std::move(g));
}

DensityMatrix4 spin_spin_dm(const TwoParticleState& state) {
  const std::size_t n1 = state.grid1().size(), n2 = state.grid2().size();
  const auto& g = state.planes();
  const double* w2 = state.grid2().weights().data();
  std::array<Complex, 16> out{};
  for (std::size_t i1 = 0; i1 < n1; ++i1) {
    const std::size_t off = i1 * n2;
    const std::array<const Complex*, 4> rows{g[0].data() + off, g[1].data() + off,
                                             g[2].data() + off, g[3].data() + off};
    kernels::hermitian_gram(rows, w2, n2, state.grid1().weight(i1), out.data());
  }
  CMat4 rho;
  for (int a = 0; a < 4; ++a)
    for (int b = 0; b < 4; ++b) rho(a, b) = out[4 * a + b];
  return DensityMatrix4(rho);
}

double concurrence(const DensityMatrix4& rho) {
  const CMat4& r = rho.matrix();
  CMat4 yy;
  yy.setZero();
  yy(0, 3) = -1;
  yy(1, 2) = 1;
  yy(2, 1) = 1;
  yy(3, 0) = -1;
  const CMat4 tilde = yy * r.conjugate() * yy;
  Eigen::SelfAdjointEigenSolver<CMat4> es(0.5 * (r + r.adjoint()));
  const Eigen::Vector4d ev = es.eigenvalues().cwiseMax(0.0);
  const CMat4 sq = es.eigenvectors() * ev.cwiseSqrt().cast<Complex>().asDiagonal() *
                   es.eigenvectors().adjoint();
  const CMat4 m = sq * tilde * sq;
  Eigen::SelfAdjointEigenSolver<CMat4> es2(0.5 * (m + m.adjoint()), Eigen::EigenvaluesOnly);
  Eigen::Vector4d l = es2.eigenvalues().cwiseMax(0.0).cwiseSqrt();
  std::sort(l.data(), l.data() + 4, std::greater<double>());
  return std::clamp(l[0] - l[1] - l[2] - l[3], 0.0, 1.0);
}

double bipartition_entropy(const TwoParticleState& state) {
  const std::size_t n1 = state.grid1().size(), n2 = state.grid2().size();
  CMatX m(2 * n1, 2 * n2);
  for (int s1 = 0; s1 < 2; ++s1)
    for (int s2 = 0; s2 < 2; ++s2)
      for (std::size_t i1 = 0; i1 < n1; ++i1) {
        const double w1 = std::sqrt(state.grid1().weight(i1));
        for (std::size_t i2 = 0; i2 < n2; ++i2) {
          m(s1 * n1 + i1, s2 * n2 + i2) =
              w1 * std::sqrt(state.grid2().weight(i2)) * state(2 * s1 + s2, i1, i2);
        }
      }
  const CMatX reduced = m * m.adjoint();
  return von_neumann_entropy_bits(reduced);
}

CVec4 singlet() {
  const double s = 1.0 / std::sqrt(2.0);
  return CVec4(0, s, -s, 0);
}

void CHSHSettings::validate() const {
  for (const Vec3* v : {&a1, &a2, &b1, &b2}) {
    if (std::abs(v->norm() - 1.0) > 1e-12) throw std::domain_error("CHSHSettings: settings must be unit vectors");
  }
  if (!(mass > 0)) throw std::domain_error("CHSHSettings: mass must be positive");
}

CHSHSettings optimal_rest_settings() {
  CHSHSettings s;
  const double r = 1.0 / std::sqrt(2.0);
  s.a1 = Vec3::UnitX();
  s.a2 = Vec3::UnitY();
  s.b1 = Vec3(r, r, 0);
  s.b2 = Vec3(r, -r, 0);
  return s;
}

Vec3 alpha_vector(const Vec3& a, const Vec3& p, double mass) {
  if (!(mass > 0)) throw std::domain_error("alpha_vector: mass must be positive");
  const double pn = p.norm();
  if (pn == 0) return a;
  const Vec3 n = p / pn;
  const double r = mass / std::sqrt(pn * pn + mass * mass);
  return r * a + (1 - r) * a.dot(n) * n;
}

CMat2 chsh_operator(const Vec3& a, const Vec3& p, double mass) {
  return pauli_dot(alpha_vector(a, p, mass));
}

namespace {

struct Operators {
  CMat2 a1, a2, b1, b2;
};

Operators build_operators(const CHSHSettings& s, const Vec3& pa, const Vec3& pb) {
  if (s.model == SpinModel::wigner_spin) {
    return {pauli_dot(s.a1), pauli_dot(s.a2), pauli_dot(s.b1), pauli_dot(s.b2)};
  }
  return {chsh_operator(s.a1, pa, s.mass), chsh_operator(s.a2, pa, s.mass),
          chsh_operator(s.b1, pb, s.mass), chsh_operator(s.b2, pb, s.mass)};
}

CMat4 kron2(const CMat2& a, const CMat2& b) {
  CMat4 out;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) out.block<2, 2>(2 * i, 2 * j) = a(i, j) * b;
  return out;
}

CMat4 chsh_observable(const Operators& o) {
  return kron2(o.a1, o.b1 + o.b2) + kron2(o.a2, o.b1 - o.b2);
}

}  // namespace

double chsh_value(const CHSHSettings& settings, const DensityMatrix4& rho) {
  settings.validate();
  const CMat4 obs = chsh_observable(build_operators(settings, settings.p_a, settings.p_b));
  return std::abs((rho.matrix() * obs).trace()) / 2;
}

double chsh_value(const CHSHSettings& settings, const TwoParticleState& state) {
  settings.validate();
  if (settings.model == SpinModel::wigner_spin) return chsh_value(settings, spin_spin_dm(state));
  const std::size_t n1 = state.grid1().size(), n2 = state.grid2().size();
  std::vector<std::array<CMat2, 2>> bops(n2);
  for (std::size_t i2 = 0; i2 < n2; ++i2) {
    const Vec3& p = state.grid2().momentum(i2);
    const CMat2 b1 = chsh_operator(settings.b1, p, settings.mass);
    const CMat2 b2 = chsh_operator(settings.b2, p, settings.mass);
    bops[i2] = {b1 + b2, b1 - b2};
  }
  Complex total = 0;
  for (std::size_t i1 = 0; i1 < n1; ++i1) {
    const Vec3& p = state.grid1().momentum(i1);
    const CMat2 a1 = chsh_operator(settings.a1, p, settings.mass);
    const CMat2 a2 = chsh_operator(settings.a2, p, settings.mass);
    Complex row = 0;
    for (std::size_t i2 = 0; i2 < n2; ++i2) {
      const CMat4 obs = kron2(a1, bops[i2][0]) + kron2(a2, bops[i2][1]);
      const CVec4 g(state(0, i1, i2), state(1, i1, i2), state(2, i1, i2), state(3, i1, i2));
      row += state.grid2().weight(i2) * g.dot(obs * g);
    }
    total += state.grid1().weight(i1) * row;
  }
  return std::abs(total) / 2;
}

CHSHSettings compensate_settings(const LorentzMatrix& lambda, const Vec3& p1, const Vec3& p2,
                                 double mass, const CHSHSettings& settings) {
  settings.validate();
  const Mat3 w1 = lorentz::wigner_rotation(lambda, p1, mass).matrix();
  const Mat3 w2 = lorentz::wigner_rotation(lambda, p2, mass).matrix();
  CHSHSettings out = settings;
  out.a1 = (w1 * settings.a1).normalized();
  out.a2 = (w1 * settings.a2).normalized();
  out.b1 = (w2 * settings.b1).normalized();
  out.b2 = (w2 * settings.b2).normalized();
  out.p_a = (lambda * lorentz::FourVector::on_shell(p1, mass)).spatial();
  out.p_b = (lambda * lorentz::FourVector::on_shell(p2, mass)).spatial();
  out.mass = mass;
  return out;
}

bool anticommuting_settings(const CHSHSettings& settings, double tol) {
  settings.validate();
  const Operators o = build_operators(settings, settings.p_a, settings.p_b);
  const double ea = (o.a1 * o.a2 + o.a2 * o.a1).cwiseAbs().maxCoeff();
  const double eb = (o.b1 * o.b2 + o.b2 * o.b1).cwiseAbs().maxCoeff();
  return ea <= tol && eb <= tol;
}

}  // namespace rqi::entangle
