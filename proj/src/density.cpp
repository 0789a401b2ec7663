#include "rqi/density.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

namespace rqi {

void validate_density(const CMatX& m, const DensityTolerance& tol, const char* what) {
  if (m.rows() != m.cols() || m.rows() == 0) {
    throw std::domain_error(std::string(what) + ": matrix must be square and nonempty");
  }
  if ((m - m.adjoint()).cwiseAbs().maxCoeff() > tol.hermitian) {
    throw std::domain_error(std::string(what) + ": matrix is not Hermitian");
  }
  if (std::abs(m.trace() - Complex(1, 0)) > tol.trace) {
    throw std::domain_error(std::string(what) + ": trace is not 1");
  }
  if (hermitian_eigenvalues(m).minCoeff() < -tol.psd) {
    throw std::domain_error(std::string(what) + ": matrix is not positive semidefinite");
  }
}

Eigen::VectorXd hermitian_eigenvalues(const CMatX& m) {
  const CMatX h = 0.5 * (m + m.adjoint());
  Eigen::SelfAdjointEigenSolver<CMatX> es(h, Eigen::EigenvaluesOnly);
  return es.eigenvalues();
}

double von_neumann_entropy_bits(const CMatX& rho) {
  const Eigen::VectorXd ev = hermitian_eigenvalues(rho);
  double s = 0;
  for (Eigen::Index i = 0; i < ev.size(); ++i) {
    const double l = std::min(ev[i], 1.0);
    if (l > 1e-15) s -= l * std::log2(l);
  }
  return s;
}

double trace_norm(const CMatX& hermitian) {
  return hermitian_eigenvalues(hermitian).cwiseAbs().sum();
}

double error_probability(const CMatX& rho1, const CMatX& rho2) {
  if (rho1.rows() != rho2.rows() || rho1.cols() != rho2.cols()) {
    throw std::domain_error("error_probability: dimension mismatch");
  }
  return std::clamp(0.5 - 0.25 * trace_norm(rho1 - rho2), 0.0, 0.5);
}

CMatX kron(const CMatX& a, const CMatX& b) {
  CMatX out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    }
  }
  return out;
}

CMatX partial_trace_b(const CMatX& x, int dim_a, int dim_b) {
  if (x.rows() != dim_a * dim_b || x.cols() != dim_a * dim_b) {
    throw std::domain_error("partial_trace_b: dimension mismatch");
  }
  CMatX out = CMatX::Zero(dim_a, dim_a);
  for (int i = 0; i < dim_a; ++i)
    for (int j = 0; j < dim_a; ++j)
      for (int k = 0; k < dim_b; ++k) out(i, j) += x(i * dim_b + k, j * dim_b + k);
  return out;
}

CMatX partial_trace_a(const CMatX& x, int dim_a, int dim_b) {
  if (x.rows() != dim_a * dim_b || x.cols() != dim_a * dim_b) {
    throw std::domain_error("partial_trace_a: dimension mismatch");
  }
  CMatX out = CMatX::Zero(dim_b, dim_b);
  for (int i = 0; i < dim_b; ++i)
    for (int j = 0; j < dim_b; ++j)
      for (int k = 0; k < dim_a; ++k) out(i, j) += x(k * dim_b + i, k * dim_b + j);
  return out;
}

double operator_norm(const CMatX& x) {
  if (x.size() == 0) return 0;
  Eigen::JacobiSVD<CMatX> svd(x);
  return svd.singularValues()(0);
}

}  // namespace rqi
