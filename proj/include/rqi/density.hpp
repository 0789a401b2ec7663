// density.hpp
// Validated density matrices and the spectral quantities computed on them.

#pragma once

#include <Eigen/Core>

#include "rqi/types.hpp"

namespace rqi {

struct DensityTolerance {
  double hermitian;
  double trace;
  double psd;
};

template <int N>
struct DensityTraits {
  static constexpr DensityTolerance tol{1e-10, 1e-10, 1e-10};
};
// 3x3 effective polarization matrices come out of quadrature.
template <>
struct DensityTraits<3> {
  static constexpr DensityTolerance tol{1e-10, 1e-8, 1e-8};
};
// Two-particle spin-spin matrices carry the dense-grid normalization error.
template <>
struct DensityTraits<4> {
  static constexpr DensityTolerance tol{1e-10, 1e-6, 1e-8};
};

/// Throws std::domain_error unless `m` is square, Hermitian, unit-trace and
/// PSD within `tol`.
void validate_density(const CMatX& m, const DensityTolerance& tol, const char* what);

template <int N>
class DensityMatrix {
 public:
  using Matrix = Eigen::Matrix<Complex, N, N>;

  explicit DensityMatrix(const Matrix& m) : m_(m) {
    validate_density(CMatX(m), DensityTraits<N>::tol, "DensityMatrix");
  }

  static DensityMatrix pure(const Eigen::Matrix<Complex, N, 1>& psi) {
    return DensityMatrix(Matrix(psi * psi.adjoint()));
  }

  const Matrix& matrix() const { return m_; }
  Complex operator()(Eigen::Index i, Eigen::Index j) const { return m_(i, j); }
  Eigen::Index dim() const { return m_.rows(); }

 private:
  Matrix m_;
};

using DensityMatrix2 = DensityMatrix<2>;
using DensityMatrix3 = DensityMatrix<3>;
using DensityMatrix4 = DensityMatrix<4>;
using DensityMatrixX = DensityMatrix<Eigen::Dynamic>;

/// Ascending eigenvalues of the Hermitian part of `m`.
Eigen::VectorXd hermitian_eigenvalues(const CMatX& m);

/// -Σ λ log₂ λ with 0·log 0 = 0; eigenvalues are clipped to [0, 1].
double von_neumann_entropy_bits(const CMatX& rho);

/// tr √(X²) for Hermitian X.
double trace_norm(const CMatX& hermitian);

/// Optimal single-copy discrimination error 1/2 - tr|ρ₁-ρ₂|/4, in [0, 1/2].
double error_probability(const CMatX& rho1, const CMatX& rho2);

template <int N, int M>
double error_probability(const DensityMatrix<N>& rho1, const DensityMatrix<M>& rho2) {
  return error_probability(CMatX(rho1.matrix()), CMatX(rho2.matrix()));
}

/// Kronecker product.
CMatX kron(const CMatX& a, const CMatX& b);

/// Partial traces of an operator on C^dA ⊗ C^dB.
CMatX partial_trace_b(const CMatX& x, int dim_a, int dim_b);
CMatX partial_trace_a(const CMatX& x, int dim_a, int dim_b);

/// Largest singular value.
double operator_norm(const CMatX& x);

}  // namespace rqi
