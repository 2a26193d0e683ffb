#pragma once

#include <Eigen/Dense>

#include <complex>

namespace qidlab {

using Complex = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;
using RVector = Eigen::VectorXd;

// max_ij |m - m^dagger|; zero for exactly Hermitian input.
double hermitian_defect(const CMatrix& m);

// Eigenvalues of a Hermitian matrix, ascending.  The solver is
// deterministic, so repeated calls agree bit for bit.
RVector hermitian_eigenvalues(const CMatrix& m);

// Moore-Penrose inverse square root of a PSD matrix: eigenvalues at or
// below the cutoff are treated as exact zeros and inverted to zero.
// cutoff_rel scales the largest eigenvalue to form the threshold.
CMatrix inv_sqrt_psd(const CMatrix& m, double cutoff_rel = 1e-12);

CMatrix kron(const CMatrix& a, const CMatrix& b);

// Re tr(a * b) for Hermitian a, b in O(dim^2).
double trace_product_hermitian(const CMatrix& a, const CMatrix& b);

}  // namespace qidlab
