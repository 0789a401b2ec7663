// lorentz.hpp
// Classical Lorentz-group machinery: boosts, standard transformations,
// little-group (Wigner) elements and their spin-1/2 / helicity images.
//
// Conventions: natural units, metric signature (+,-,-,-), four-vectors are
// ordered (t, x, y, z). Matrices act on column vectors (active transforms).

#pragma once

#include "rqi/types.hpp"

namespace rqi::lorentz {

/// Tolerance used when validating constructed values.
inline constexpr double kConstructTol = 1e-10;
/// Tolerance used for identities derived through chains of products.
inline constexpr double kDerivedTol = 1e-8;

struct FourVector {
  double t = 0, x = 0, y = 0, z = 0;

  FourVector() = default;
  FourVector(double t_, double x_, double y_, double z_) : t(t_), x(x_), y(y_), z(z_) {}
  explicit FourVector(const Vec4& v) : t(v[0]), x(v[1]), y(v[2]), z(v[3]) {}

  /// On-shell massive momentum (E(p), p).
  static FourVector on_shell(const Vec3& p, double mass);
  /// Null momentum (|p|, p).
  static FourVector null(const Vec3& p);

  Vec4 vec() const { return {t, x, y, z}; }
  Vec3 spatial() const { return {x, y, z}; }
  /// Minkowski square t^2 - |x|^2.
  double square() const { return t * t - x * x - y * y - z * z; }
};

/// Minkowski metric diag(1,-1,-1,-1).
Mat4 metric();

class Rotation3 {
 public:
  /// Validates R^T R = I and det R = +1 within `tol`.
  explicit Rotation3(const Mat3& m, double tol = kConstructTol);

  static Rotation3 identity() { return Rotation3(Mat3::Identity()); }
  /// Active rotation by `angle` about the unit vector `axis`.
  static Rotation3 about(const Vec3& axis, double angle);
  static Rotation3 about_z(double angle) { return about(Vec3::UnitZ(), angle); }

  const Mat3& matrix() const { return m_; }
  Rotation3 inverse() const { return Rotation3(m_.transpose(), kDerivedTol); }
  Vec3 operator*(const Vec3& v) const { return m_ * v; }
  Rotation3 operator*(const Rotation3& o) const { return Rotation3(m_ * o.m_, kDerivedTol); }

 private:
  Mat3 m_;
};

class LorentzMatrix {
 public:
  /// Validates metric preservation, det = +1 and Λ⁰₀ ≥ 1 within `tol`.
  explicit LorentzMatrix(const Mat4& m, double tol = kConstructTol);

  static LorentzMatrix identity() { return LorentzMatrix(Mat4::Identity()); }
  /// Embeds a spatial rotation.
  static LorentzMatrix from_rotation(const Rotation3& r);

  const Mat4& matrix() const { return m_; }
  double operator()(int i, int j) const { return m_(i, j); }

  /// Λ⁻¹ = η Λᵀ η.
  LorentzMatrix inverse() const;
  FourVector operator*(const FourVector& p) const { return FourVector(Vec4(m_ * p.vec())); }
  LorentzMatrix operator*(const LorentzMatrix& o) const;

  /// Lower-right 3x3 block.
  Mat3 spatial_block() const { return m_.block<3, 3>(1, 1); }

  /// Largest entrywise deviation of ΛᵀηΛ from η.
  double metric_defect() const;

 private:
  Mat4 m_;
};

struct AxisAngle {
  Vec3 axis = Vec3::UnitZ();  // unit
  double angle = 0;           // radians in [0, π]

  /// Rodrigues reconstruction.
  Rotation3 to_rotation() const;
};

/// SU(2) representative of a rotation: exp(-i (angle/2) axis·σ).
class SpinHalfD {
 public:
  explicit SpinHalfD(const CMat2& m, double tol = kConstructTol);
  const CMat2& matrix() const { return m_; }
  SpinHalfD operator*(const SpinHalfD& o) const { return SpinHalfD(m_ * o.m_, kDerivedTol); }

 private:
  CMat2 m_;
};

/// E(2) parameters of a massless little-group element W = S(β,γ) R_z(ξ).
struct MasslessLittleGroupParams {
  double beta = 0;
  double gamma = 0;
  double xi = 0;  // (-π, π]

  /// Rebuilds S(β,γ) R_z(ξ).
  Mat4 reconstruct() const;
};

enum class ParticleKind { massive, massless };

/// Pure boost giving a particle at rest the velocity `v`.
LorentzMatrix boost_from_velocity(const Vec3& v);

/// Standard rotation-free boost L(p) taking (m,0,0,0) to (E(p), p).
LorentzMatrix standard_boost_massive(const Vec3& p, double mass);

/// R(p̂): rotation by θ about y followed by φ about z; carries ẑ to p̂.
Rotation3 standard_rotation(const Vec3& p_hat);

/// Pure z-boost with the given rapidity.
LorentzMatrix boost_z_rapidity(double rapidity);

/// L(p) = R(p̂) B_z(u) taking k_R = (1,0,0,1) to the null momentum p.
LorentzMatrix standard_transform_photon(const FourVector& p);

/// Null rotation S(β,γ): the E(2) translations fixing (1,0,0,1).
Mat4 null_rotation(double beta, double gamma);

/// W(Λ,p) = L⁻¹(Λp) Λ L(p).
/// For `massive`, `mass` must match p (checked); for `massless` p must be null.
LorentzMatrix little_group_element(const LorentzMatrix& lambda, const FourVector& p,
                                   ParticleKind kind, double mass = 0);

/// Spatial 3x3 block of a massive little-group element.
Rotation3 wigner_rotation(const LorentzMatrix& lambda, const Vec3& p, double mass);

/// Axis and angle of a rotation. The identity maps to (ẑ, 0); at angle π the
/// axis sign is fixed so its first nonzero component is positive.
AxisAngle rotation_axis_angle(const Rotation3& r);

SpinHalfD wigner_D_half(const AxisAngle& aa);
inline SpinHalfD wigner_D_half(const Rotation3& r) { return wigner_D_half(rotation_axis_angle(r)); }

/// Wigner rotation seen by an observer moving with velocity `v` relative to
/// the frame where the particle has momentum `p` (Λ = boost(-v)). The axis is
/// along v̂×p̂; a degenerate cross product gives (ẑ, 0).
AxisAngle wigner_axis_angle_massive(const Vec3& v, const Vec3& p, double mass);

/// Leading-order angle ((1-√(1-v²))/v)(|p|/m) sinθ, θ the angle between v and p.
double wigner_angle_leading_order(const Vec3& v, const Vec3& p, double mass);

/// Factor the massless little-group element W(Λ,p) into S(β,γ) R_z(ξ).
MasslessLittleGroupParams photon_wigner_phase(const LorentzMatrix& lambda, const FourVector& p);

}  // namespace rqi::lorentz
