#include "qidlab/linalg.hpp"

#include <unsupported/Eigen/KroneckerProduct>

#include <algorithm>
#include <cmath>

#include "qidlab/errors.hpp"

namespace qidlab {

double hermitian_defect(const CMatrix& m) {
  return (m - m.adjoint()).cwiseAbs().maxCoeff();
}

RVector hermitian_eigenvalues(const CMatrix& m) {
  Eigen::SelfAdjointEigenSolver<CMatrix> solver(m, Eigen::EigenvaluesOnly);
  require_internal(solver.info() == Eigen::Success,
                   "hermitian_eigenvalues: solver failed");
  return solver.eigenvalues();
}

CMatrix inv_sqrt_psd(const CMatrix& m, double cutoff_rel) {
  Eigen::SelfAdjointEigenSolver<CMatrix> solver(m);
  require_internal(solver.info() == Eigen::Success,
                   "inv_sqrt_psd: solver failed");
  const RVector& vals = solver.eigenvalues();
  const CMatrix& vecs = solver.eigenvectors();
  const double top = vals.size() > 0 ? std::max(0.0, vals(vals.size() - 1)) : 0.0;
  const double cutoff = std::max(cutoff_rel, cutoff_rel * top);
  RVector scaled(vals.size());
  for (Eigen::Index i = 0; i < vals.size(); ++i) {
    scaled(i) = vals(i) > cutoff ? 1.0 / std::sqrt(vals(i)) : 0.0;
  }
  return vecs * scaled.asDiagonal() * vecs.adjoint();
}

CMatrix kron(const CMatrix& a, const CMatrix& b) {
  return Eigen::kroneckerProduct(a, b);
}

double trace_product_hermitian(const CMatrix& a, const CMatrix& b) {
  // tr(ab) = sum_ij a_ij b_ji = sum_ij a_ij conj(b_ij) for Hermitian b.
  return a.cwiseProduct(b.conjugate()).sum().real();
}

}  // namespace qidlab
