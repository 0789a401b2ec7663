// types.hpp
// Common numeric aliases shared by every module.

#pragma once

#include <complex>

#include <Eigen/Core>

namespace rqi {

using Complex = std::complex<double>;

using Vec3 = Eigen::Vector3d;
using Vec4 = Eigen::Vector4d;
using Mat3 = Eigen::Matrix3d;
using Mat4 = Eigen::Matrix4d;

using CVec2 = Eigen::Vector2cd;
using CVec3 = Eigen::Vector3cd;
using CVec4 = Eigen::Vector4cd;
using CMat2 = Eigen::Matrix2cd;
using CMat3 = Eigen::Matrix3cd;
using CMat4 = Eigen::Matrix4cd;
using CMatX = Eigen::MatrixXcd;
using CVecX = Eigen::VectorXcd;

inline constexpr double kPi = 3.14159265358979323846;

// Pauli matrices.
inline CMat2 pauli_x() { CMat2 m; m << 0, 1, 1, 0; return m; }
inline CMat2 pauli_y() { CMat2 m; m << 0, Complex(0, -1), Complex(0, 1), 0; return m; }
inline CMat2 pauli_z() { CMat2 m; m << 1, 0, 0, -1; return m; }

/// n·σ for a real 3-vector n.
inline CMat2 pauli_dot(const Vec3& n) {
  return n.x() * pauli_x() + n.y() * pauli_y() + n.z() * pauli_z();
}

}  // namespace rqi
