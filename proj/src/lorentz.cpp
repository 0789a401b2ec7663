#include "rqi/lorentz.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include <Eigen/Geometry>
#include <Eigen/LU>

namespace rqi::lorentz {

namespace {

Mat3 skew(const Vec3& n) {
  Mat3 k;
  k << 0, -n.z(), n.y(),
       n.z(), 0, -n.x(),
       -n.y(), n.x(), 0;
  return k;
}

// (R - Rᵀ) "vee": equals 2 sin(angle) axis.
Vec3 vee(const Mat3& r) {
  return {r(2, 1) - r(1, 2), r(0, 2) - r(2, 0), r(1, 0) - r(0, 1)};
}

void require_null(const FourVector& p, const char* what) {
  const double scale = std::max(1.0, p.t * p.t);
  if (!(p.t > 0) || std::abs(p.square()) > kConstructTol * scale) {
    throw std::domain_error(std::string(what) + ": momentum is not a future-pointing null vector");
  }
}

void require_mass_shell(const FourVector& p, double mass, const char* what) {
  if (!(mass > 0)) throw std::domain_error(std::string(what) + ": mass must be positive");
  const double scale = std::max(1.0, p.t * p.t);
  if (!(p.t > 0) || std::abs(p.square() - mass * mass) > kDerivedTol * scale) {
    throw std::domain_error(std::string(what) + ": momentum is off the mass shell");
  }
}

}  // namespace

FourVector FourVector::on_shell(const Vec3& p, double mass) {
  return {std::sqrt(p.squaredNorm() + mass * mass), p.x(), p.y(), p.z()};
}

FourVector FourVector::null(const Vec3& p) { return {p.norm(), p.x(), p.y(), p.z()}; }

Mat4 metric() { return Vec4(1, -1, -1, -1).asDiagonal(); }

//---------------------------------------------------------------------------//

Rotation3::Rotation3(const Mat3& m, double tol) : m_(m) {
  const double ortho = (m.transpose() * m - Mat3::Identity()).cwiseAbs().maxCoeff();
  if (!(ortho <= tol) || std::abs(m.determinant() - 1.0) > tol) {
    throw std::domain_error("Rotation3: matrix is not a proper rotation");
  }
}

Rotation3 Rotation3::about(const Vec3& axis, double angle) {
  return AxisAngle{axis.normalized(), angle}.to_rotation();
}

Rotation3 AxisAngle::to_rotation() const {
  const Mat3 k = skew(axis);
  return Rotation3(Mat3::Identity() + std::sin(angle) * k + (1 - std::cos(angle)) * k * k);
}

//---------------------------------------------------------------------------//

LorentzMatrix::LorentzMatrix(const Mat4& m, double tol) : m_(m) {
  if (!(metric_defect() <= tol) || std::abs(m.determinant() - 1.0) > tol * std::max(1.0, m(0, 0)) ||
      m(0, 0) < 1.0 - tol) {
    throw std::domain_error("LorentzMatrix: not a proper orthochronous Lorentz transformation");
  }
}

double LorentzMatrix::metric_defect() const {
  const Mat4 eta = metric();
  return (m_.transpose() * eta * m_ - eta).cwiseAbs().maxCoeff();
}

LorentzMatrix LorentzMatrix::from_rotation(const Rotation3& r) {
  Mat4 m = Mat4::Identity();
  m.block<3, 3>(1, 1) = r.matrix();
  return LorentzMatrix(m);
}

LorentzMatrix LorentzMatrix::inverse() const {
  const Mat4 eta = metric();
  return LorentzMatrix(eta * m_.transpose() * eta, kDerivedTol);
}

LorentzMatrix LorentzMatrix::operator*(const LorentzMatrix& o) const {
  return LorentzMatrix(m_ * o.m_, kDerivedTol);
}

//---------------------------------------------------------------------------//

SpinHalfD::SpinHalfD(const CMat2& m, double tol) : m_(m) {
  const double unit = (m.adjoint() * m - CMat2::Identity()).cwiseAbs().maxCoeff();
  if (!(unit <= tol) || std::abs(m.determinant() - Complex(1, 0)) > tol) {
    throw std::domain_error("SpinHalfD: matrix is not in SU(2)");
  }
}

Mat4 MasslessLittleGroupParams::reconstruct() const {
  Mat4 rz = Mat4::Identity();
  rz(1, 1) = std::cos(xi);
  rz(1, 2) = -std::sin(xi);
  rz(2, 1) = std::sin(xi);
  rz(2, 2) = std::cos(xi);
  return null_rotation(beta, gamma) * rz;
}

//---------------------------------------------------------------------------//

LorentzMatrix boost_from_velocity(const Vec3& v) {
  const double v2 = v.squaredNorm();
  if (!(std::sqrt(v2) < 1.0 - 1e-12)) {
    throw std::domain_error("boost_from_velocity: superluminal velocity");
  }
  Mat4 m = Mat4::Identity();
  if (v2 == 0) return LorentzMatrix(m);
  const double g = 1.0 / std::sqrt(1.0 - v2);
  m(0, 0) = g;
  m.block<1, 3>(0, 1) = g * v.transpose();
  m.block<3, 1>(1, 0) = g * v;
  m.block<3, 3>(1, 1) += (g - 1.0) / v2 * v * v.transpose();
  return LorentzMatrix(m);
}

LorentzMatrix standard_boost_massive(const Vec3& p, double mass) {
  if (!(mass > 0)) throw std::domain_error("standard_boost_massive: mass must be positive");
  const double e = std::sqrt(p.squaredNorm() + mass * mass);
  Mat4 m;
  m(0, 0) = e / mass;
  m.block<1, 3>(0, 1) = p.transpose() / mass;
  m.block<3, 1>(1, 0) = p / mass;
  m.block<3, 3>(1, 1) = Mat3::Identity() + p * p.transpose() / (mass * (mass + e));
  return LorentzMatrix(m);
}

Rotation3 standard_rotation(const Vec3& p_hat) {
  if (std::abs(p_hat.norm() - 1.0) > kConstructTol) {
    throw std::domain_error("standard_rotation: direction is not a unit vector");
  }
  const double cos_t = std::clamp(p_hat.z(), -1.0, 1.0);
  const double sin_t = std::hypot(p_hat.x(), p_hat.y());
  double cos_f = 1.0, sin_f = 0.0;
  if (sin_t > 0) {
    cos_f = p_hat.x() / sin_t;
    sin_f = p_hat.y() / sin_t;
  }
  Mat3 r;
  r << cos_t * cos_f, -sin_f, cos_f * sin_t,
       cos_t * sin_f,  cos_f, sin_f * sin_t,
       -sin_t,         0,     cos_t;
  return Rotation3(r);
}

LorentzMatrix boost_z_rapidity(double rapidity) {
  Mat4 m = Mat4::Identity();
  const double ch = std::cosh(rapidity), sh = std::sinh(rapidity);
  m(0, 0) = ch;
  m(0, 3) = sh;
  m(3, 0) = sh;
  m(3, 3) = ch;
  return LorentzMatrix(m);
}

LorentzMatrix standard_transform_photon(const FourVector& p) {
  require_null(p, "standard_transform_photon");
  const Vec3 sp = p.spatial();
  const double k = sp.norm();
  return LorentzMatrix::from_rotation(standard_rotation(sp / k)) * boost_z_rapidity(std::log(k));
}

Mat4 null_rotation(double beta, double gamma) {
  const double zeta = 0.5 * (beta * beta + gamma * gamma);
  Mat4 s;
  s << 1 + zeta, beta, gamma, -zeta,
       beta,     1,    0,     -beta,
       gamma,    0,    1,     -gamma,
       zeta,     beta, gamma, 1 - zeta;
  return s;
}

LorentzMatrix little_group_element(const LorentzMatrix& lambda, const FourVector& p,
                                   ParticleKind kind, double mass) {
  const FourVector q = lambda * p;
  if (kind == ParticleKind::massive) {
    require_mass_shell(p, mass, "little_group_element");
    return standard_boost_massive(q.spatial(), mass).inverse() * lambda *
           standard_boost_massive(p.spatial(), mass);
  }
  require_null(p, "little_group_element");
  return standard_transform_photon(q).inverse() * lambda * standard_transform_photon(p);
}

Rotation3 wigner_rotation(const LorentzMatrix& lambda, const Vec3& p, double mass) {
  const LorentzMatrix w =
      little_group_element(lambda, FourVector::on_shell(p, mass), ParticleKind::massive, mass);
  return Rotation3(w.spatial_block(), kDerivedTol);
}

AxisAngle rotation_axis_angle(const Rotation3& rot) {
  const Mat3& r = rot.matrix();
  const Vec3 w = vee(r);
  const double s = 0.5 * w.norm();
  const double c = 0.5 * (r.trace() - 1.0);
  const double angle = std::atan2(s, c);

  if (c >= 0) {
    if (s == 0) return {Vec3::UnitZ(), 0.0};
    return {w / w.norm(), angle};
  }

  // Near π the antisymmetric part vanishes; read the axis from the
  // symmetric part (R + Rᵀ)/2 - c·I = (1 - c) n nᵀ instead.
  const Mat3 b = 0.5 * (r + r.transpose()) - c * Mat3::Identity();
  int k = 0;
  b.diagonal().maxCoeff(&k);
  Vec3 n = b.col(k).normalized();
  if (w.norm() > 1e-12) {
    if (n.dot(w) < 0) n = -n;
  } else {
    for (int i = 0; i < 3; ++i) {
      if (std::abs(n[i]) > 1e-12) {
        if (n[i] < 0) n = -n;
        break;
      }
    }
  }
  return {n, angle};
}

SpinHalfD wigner_D_half(const AxisAngle& aa) {
  const double h = 0.5 * aa.angle;
  const CMat2 d = std::cos(h) * CMat2::Identity() - Complex(0, std::sin(h)) * pauli_dot(aa.axis);
  return SpinHalfD(d);
}

AxisAngle wigner_axis_angle_massive(const Vec3& v, const Vec3& p, double mass) {
  const LorentzMatrix lambda = boost_from_velocity(-v);
  if (!(mass > 0)) throw std::domain_error("wigner_axis_angle_massive: mass must be positive");
  if (v.cross(p).norm() <= 1e-12 * v.norm() * p.norm() || v.norm() == 0 || p.norm() == 0) {
    return {Vec3::UnitZ(), 0.0};
  }
  return rotation_axis_angle(wigner_rotation(lambda, p, mass));
}

double wigner_angle_leading_order(const Vec3& v, const Vec3& p, double mass) {
  const double speed = v.norm();
  if (speed == 0 || p.norm() == 0) return 0.0;
  const double sin_t = v.normalized().cross(p.normalized()).norm();
  return (1.0 - std::sqrt(1.0 - speed * speed)) / speed * (p.norm() / mass) * sin_t;
}

MasslessLittleGroupParams photon_wigner_phase(const LorentzMatrix& lambda, const FourVector& p) {
  const Mat4 w = little_group_element(lambda, p, ParticleKind::massless).matrix();
  MasslessLittleGroupParams out;
  out.beta = w(1, 0);
  out.gamma = w(2, 0);
  out.xi = std::atan2(w(2, 1), w(1, 1));
  if (out.xi <= -kPi) out.xi = kPi;
  if ((out.reconstruct() - w).cwiseAbs().maxCoeff() > kDerivedTol * std::max(1.0, w.cwiseAbs().maxCoeff())) {
    throw std::runtime_error("photon_wigner_phase: E(2) factorization failed");
  }
  return out;
}

}  // namespace rqi::lorentz
