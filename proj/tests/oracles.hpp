// oracles.hpp
// Independent reference computations and random generators for the tests.

#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <functional>
#include <random>

#include <Eigen/Dense>
#include <unsupported/Eigen/MatrixFunctions>

namespace oracle {

using Complex = std::complex<double>;
using Vec3 = Eigen::Vector3d;
using Mat3 = Eigen::Matrix3d;
using Mat4 = Eigen::Matrix4d;
using CMat2 = Eigen::Matrix2cd;
using CMat4 = Eigen::Matrix4cd;
using CMatX = Eigen::MatrixXcd;
using CVecX = Eigen::VectorXcd;

inline constexpr double kPi = 3.14159265358979323846;

inline Mat4 eta() { return Eigen::Vector4d(1, -1, -1, -1).asDiagonal(); }

inline Vec3 random_unit(std::mt19937_64& rng) {
  std::normal_distribution<double> n(0, 1);
  Vec3 v(n(rng), n(rng), n(rng));
  return v.normalized();
}

inline Vec3 random_velocity(std::mt19937_64& rng, double vmax) {
  std::uniform_real_distribution<double> u(0, vmax);
  return u(rng) * random_unit(rng);
}

inline Vec3 random_momentum(std::mt19937_64& rng, double pmax) {
  std::uniform_real_distribution<double> u(0, pmax);
  return u(rng) * random_unit(rng);
}

/// Rotation matrix from a random unit quaternion.
inline Mat3 random_rotation(std::mt19937_64& rng) {
  std::normal_distribution<double> n(0, 1);
  Eigen::Quaterniond q(n(rng), n(rng), n(rng), n(rng));
  q.normalize();
  return q.toRotationMatrix();
}

/// Pure boost of velocity v written out componentwise.
inline Mat4 boost_matrix(const Vec3& v) {
  const double v2 = v.squaredNorm();
  const double g = 1.0 / std::sqrt(1.0 - v2);
  Mat4 b = Mat4::Identity();
  b(0, 0) = g;
  for (int i = 0; i < 3; ++i) {
    b(0, i + 1) = b(i + 1, 0) = g * v[i];
    for (int j = 0; j < 3; ++j) {
      b(i + 1, j + 1) = (i == j ? 1.0 : 0.0) + (v2 > 0 ? (g - 1) * v[i] * v[j] / v2 : 0.0);
    }
  }
  return b;
}

/// L(p): L⁰₀ = E/m, L⁰ᵢ = pᵢ/m, Lⁱⱼ = δᵢⱼ + pᵢpⱼ/(m(E+m)).
inline Mat4 standard_boost(const Vec3& p, double m) {
  const double e = std::sqrt(p.squaredNorm() + m * m);
  Mat4 l = Mat4::Identity();
  l(0, 0) = e / m;
  for (int i = 0; i < 3; ++i) {
    l(0, i + 1) = l(i + 1, 0) = p[i] / m;
    for (int j = 0; j < 3; ++j) l(i + 1, j + 1) += p[i] * p[j] / (m * (e + m));
  }
  return l;
}

/// R(θ, φ) with columns (cθcφ, cθsφ, -sθ), (-sφ, cφ, 0), (cφsθ, sφsθ, cθ).
inline Mat3 standard_rotation(double theta, double phi) {
  const double ct = std::cos(theta), st = std::sin(theta), cp = std::cos(phi), sp = std::sin(phi);
  Mat3 r;
  r << ct * cp, -sp, cp * st,
       ct * sp, cp, sp * st,
       -st, 0, ct;
  return r;
}

inline Mat4 embed(const Mat3& r) {
  Mat4 m = Mat4::Identity();
  m.block<3, 3>(1, 1) = r;
  return m;
}

/// exp(-i (angle/2) n·σ) via the matrix exponential.
inline CMat2 su2_exp(const Vec3& n, double angle) {
  CMat2 sx, sy, sz;
  sx << 0, 1, 1, 0;
  sy << 0, Complex(0, -1), Complex(0, 1), 0;
  sz << 1, 0, 0, -1;
  const CMat2 h = n.x() * sx + n.y() * sy + n.z() * sz;
  const CMat2 arg = Complex(0, -angle / 2) * h;
  return arg.exp();
}

/// Composite Simpson rule with n (even) intervals.
inline double simpson(const std::function<double(double)>& f, double a, double b, int n) {
  const double h = (b - a) / n;
  double s = f(a) + f(b);
  for (int i = 1; i < n; ++i) s += (i % 2 ? 4 : 2) * f(a + i * h);
  return s * h / 3;
}

/// ∫ d³p/((2π)³ 2E) exp(-p²/Δ²) for a massive particle, by radial Simpson.
inline double gaussian_norm_massive(double delta, double m) {
  auto f = [&](double p) {
    return 4 * kPi * p * p * std::exp(-p * p / (delta * delta)) / (2 * std::sqrt(p * p + m * m));
  };
  return simpson(f, 0, 12 * delta, 20000) / std::pow(2 * kPi, 3);
}

/// Wootters concurrence from the non-Hermitian spectrum of ρ(σy⊗σy)ρ*(σy⊗σy).
inline double wootters(const CMat4& rho) {
  CMat4 yy = CMat4::Zero();
  yy(0, 3) = -1;
  yy(1, 2) = 1;
  yy(2, 1) = 1;
  yy(3, 0) = -1;
  const CMat4 r = rho * yy * rho.conjugate() * yy;
  Eigen::ComplexEigenSolver<CMat4> es(r);
  std::array<double, 4> l;
  for (int i = 0; i < 4; ++i) l[i] = std::sqrt(std::max(0.0, es.eigenvalues()[i].real()));
  std::sort(l.begin(), l.end(), std::greater<double>());
  return std::max(0.0, l[0] - l[1] - l[2] - l[3]);
}

inline CMatX random_unitary(int d, std::mt19937_64& rng) {
  std::normal_distribution<double> n(0, 1);
  CMatX z(d, d);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) z(i, j) = Complex(n(rng), n(rng));
  Eigen::HouseholderQR<CMatX> qr(z);
  CMatX q = qr.householderQ() * CMatX::Identity(d, d);
  for (int j = 0; j < d; ++j) {
    const Complex r = qr.matrixQR()(j, j);
    q.col(j) *= r / std::abs(r);
  }
  return q;
}

inline CVecX random_state(int d, std::mt19937_64& rng) {
  std::normal_distribution<double> n(0, 1);
  CVecX v(d);
  for (int i = 0; i < d; ++i) v(i) = Complex(n(rng), n(rng));
  return v.normalized();
}

/// Ginibre-distributed mixed state.
inline CMatX random_density(int d, std::mt19937_64& rng) {
  std::normal_distribution<double> n(0, 1);
  CMatX g(d, d);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) g(i, j) = Complex(n(rng), n(rng));
  CMatX r = g * g.adjoint();
  return r / r.trace();
}

inline CMatX kron(const CMatX& a, const CMatX& b) {
  CMatX out(a.rows() * b.rows(), a.cols() * b.cols());
  for (int i = 0; i < a.rows(); ++i)
    for (int j = 0; j < a.cols(); ++j) out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

/// ⟨A⊗B⟩ by explicit index sums.
inline Complex correlator(const CMat2& a, const CMat2& b, const CMat4& rho) {
  Complex s = 0;
  for (int i1 = 0; i1 < 2; ++i1)
    for (int i2 = 0; i2 < 2; ++i2)
      for (int j1 = 0; j1 < 2; ++j1)
        for (int j2 = 0; j2 < 2; ++j2) s += a(i1, j1) * b(i2, j2) * rho(2 * j1 + j2, 2 * i1 + i2);
  return s;
}

/// Choi matrix Σ |i⟩⟨j| ⊗ Φ(|i⟩⟨j|) of a map on d×d matrices.
inline CMatX choi(const std::function<CMatX(const CMatX&)>& phi, int d) {
  CMatX c = CMatX::Zero(d * d, d * d);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) {
      CMatX e = CMatX::Zero(d, d);
      e(i, j) = 1;
      c += kron(e, phi(e));
    }
  return c;
}

inline double min_eigenvalue(const CMatX& h) {
  Eigen::SelfAdjointEigenSolver<CMatX> es(0.5 * (h + h.adjoint()), Eigen::EigenvaluesOnly);
  return es.eigenvalues().minCoeff();
}

}  // namespace oracle
