#include "qidlab/core.hpp"

#include <cmath>
#include <cstdint>
#include <utility>

#include "qidlab/errors.hpp"
#include "qidlab/settings.hpp"

namespace qidlab {

namespace {

void require_square(const CMatrix& m, const char* what) {
  if (m.rows() == 0 || m.rows() != m.cols()) {
    fail_validation(errkind::DimensionMismatch,
                    std::string(what) + ": matrix must be square and nonempty");
  }
}

void require_hermitian(const CMatrix& m, double tol, const char* what) {
  const double defect = hermitian_defect(m);
  if (!(defect <= tol)) {
    fail_validation(errkind::NonHermitian,
                    std::string(what) + ": hermiticity defect above tolerance",
                    defect);
  }
}

void check_product_dim(std::int64_t a, std::int64_t b, const char* what) {
  const std::int64_t product = a * b;
  if (product > settings().dim_limit) {
    fail_validation(errkind::ResourceLimit,
                    std::string(what) + ": product dimension exceeds limit",
                    static_cast<double>(product));
  }
}

}  // namespace

// --- DensityOperator -------------------------------------------------------

DensityOperator DensityOperator::validated(CMatrix matrix) {
  const double tol = settings().validation_tol;
  require_square(matrix, "density");
  require_hermitian(matrix, tol, "density");
  const RVector eigs = hermitian_eigenvalues(matrix);
  if (!(eigs(0) >= -tol)) {
    fail_validation(errkind::NotPSD, "density: negative eigenvalue", eigs(0));
  }
  const double trace = matrix.trace().real();
  if (!(std::abs(trace - 1.0) <= tol)) {
    fail_validation(errkind::TraceNotOne, "density: trace must be 1", trace);
  }
  return DensityOperator(std::move(matrix));
}

DensityOperator DensityOperator::trusted(CMatrix matrix) {
  const double tol = settings().algebra_tol;
  require_internal(matrix.rows() > 0 && matrix.rows() == matrix.cols(),
                   "trusted density: not square");
  require_internal(hermitian_defect(matrix) <= tol,
                   "trusted density: not Hermitian");
  require_internal(std::abs(matrix.trace().real() - 1.0) <= tol,
                   "trusted density: trace drifted from 1");
  return DensityOperator(std::move(matrix));
}

// --- Effect -----------------------------------------------------------------

Effect Effect::validated(CMatrix matrix) {
  const double tol = settings().validation_tol;
  require_square(matrix, "effect");
  require_hermitian(matrix, tol, "effect");
  const RVector eigs = hermitian_eigenvalues(matrix);
  const double lo = eigs(0);
  const double hi = eigs(eigs.size() - 1);
  if (!(lo >= -tol && hi <= 1.0 + tol)) {
    fail_validation(errkind::EffectOutOfRange,
                    "effect: spectrum outside [0, 1]", lo < -tol ? lo : hi);
  }
  return Effect(std::move(matrix));
}

Effect Effect::trusted(CMatrix matrix) {
  require_internal(matrix.rows() > 0 && matrix.rows() == matrix.cols(),
                   "trusted effect: not square");
  require_internal(hermitian_defect(matrix) <= settings().algebra_tol,
                   "trusted effect: not Hermitian");
  return Effect(std::move(matrix));
}

// --- POM --------------------------------------------------------------------

namespace {

std::vector<std::string> default_labels(std::size_t count) {
  std::vector<std::string> labels(count);
  for (std::size_t i = 0; i < count; ++i) labels[i] = std::to_string(i + 1);
  return labels;
}

void check_pom_shape(const std::vector<CMatrix>& effects,
                     std::vector<std::string>& labels) {
  if (effects.empty()) {
    fail_validation(errkind::DimensionMismatch, "pom: needs at least one effect");
  }
  const Eigen::Index dim = effects.front().rows();
  for (const CMatrix& e : effects) {
    if (e.rows() != dim || e.cols() != dim) {
      fail_validation(errkind::DimensionMismatch,
                      "pom: effects must share one square dimension");
    }
  }
  if (labels.empty()) {
    labels = default_labels(effects.size());
  } else if (labels.size() != effects.size()) {
    fail_validation(errkind::SizeMismatch, "pom: one label per effect");
  }
}

CMatrix effect_sum(const std::vector<CMatrix>& effects) {
  CMatrix sum = CMatrix::Zero(effects.front().rows(), effects.front().cols());
  for (const CMatrix& e : effects) sum += e;
  return sum;
}

}  // namespace

POM::POM() : effects_{CMatrix::Identity(1, 1)}, labels_{"1"} {}

POM POM::validated(std::vector<CMatrix> effects, std::vector<std::string> labels) {
  check_pom_shape(effects, labels);
  for (const CMatrix& e : effects) Effect::validated(e);
  const CMatrix sum = effect_sum(effects);
  const Eigen::Index dim = sum.rows();
  const double defect =
      (sum - CMatrix::Identity(dim, dim)).cwiseAbs().maxCoeff();
  if (!(defect <= settings().validation_tol)) {
    fail_validation(errkind::Incomplete,
                    "pom: effects must sum to the identity", defect);
  }
  return POM(std::move(effects), std::move(labels));
}

POM POM::trusted(std::vector<CMatrix> effects, std::vector<std::string> labels) {
  check_pom_shape(effects, labels);
  const CMatrix sum = effect_sum(effects);
  const Eigen::Index dim = sum.rows();
  const double defect =
      (sum - CMatrix::Identity(dim, dim)).cwiseAbs().maxCoeff();
  require_internal(defect <= settings().algebra_tol,
                   "trusted pom: completeness drifted");
  return POM(std::move(effects), std::move(labels));
}

POM POM::computational_basis(int dim) {
  if (dim <= 0) {
    fail_validation(errkind::DimensionMismatch, "basis: dimension must be positive");
  }
  std::vector<CMatrix> effects;
  effects.reserve(static_cast<std::size_t>(dim));
  for (int i = 0; i < dim; ++i) {
    CMatrix e = CMatrix::Zero(dim, dim);
    e(i, i) = 1.0;
    effects.push_back(std::move(e));
  }
  return POM(std::move(effects), default_labels(static_cast<std::size_t>(dim)));
}

const CMatrix& POM::effect(std::size_t outcome) const {
  if (outcome < 1 || outcome > effects_.size()) {
    fail_validation(errkind::IndexOutOfRange, "pom: outcome index",
                    static_cast<double>(outcome));
  }
  return effects_[outcome - 1];
}

// --- FiniteDistribution ------------------------------------------------------

FiniteDistribution FiniteDistribution::validated(std::vector<double> masses) {
  const double tol = settings().validation_tol;
  if (masses.empty()) {
    fail_validation(errkind::SizeMismatch, "distribution: empty");
  }
  double sum = 0.0;
  for (double& m : masses) {
    if (!(m >= -tol)) {
      fail_validation(errkind::NotNormalized,
                      "distribution: negative mass", m);
    }
    if (m < 0.0) m = 0.0;
    sum += m;
  }
  if (!(std::abs(sum - 1.0) <= tol)) {
    fail_validation(errkind::NotNormalized,
                    "distribution: masses must sum to 1", sum);
  }
  return FiniteDistribution(std::move(masses));
}

FiniteDistribution FiniteDistribution::trusted(std::vector<double> masses) {
  const double tol = settings().algebra_tol;
  require_internal(!masses.empty(), "trusted distribution: empty");
  double sum = 0.0;
  for (double& m : masses) {
    require_internal(m >= -tol, "trusted distribution: negative mass");
    if (m < 0.0) m = 0.0;
    sum += m;
  }
  require_internal(std::abs(sum - 1.0) <= tol,
                   "trusted distribution: sum drifted from 1");
  return FiniteDistribution(std::move(masses));
}

FiniteDistribution FiniteDistribution::uniform(std::size_t size) {
  require_internal(size > 0, "uniform distribution: empty");
  return trusted(std::vector<double>(size, 1.0 / static_cast<double>(size)));
}

FiniteDistribution FiniteDistribution::point_mass(std::size_t size,
                                                  std::size_t outcome) {
  if (outcome < 1 || outcome > size) {
    fail_validation(errkind::IndexOutOfRange, "point mass: outcome index",
                    static_cast<double>(outcome));
  }
  std::vector<double> masses(size, 0.0);
  masses[outcome - 1] = 1.0;
  return FiniteDistribution(std::move(masses));
}

double FiniteDistribution::mass(std::size_t outcome) const {
  if (outcome < 1 || outcome > masses_.size()) {
    fail_validation(errkind::IndexOutOfRange, "distribution: outcome index",
                    static_cast<double>(outcome));
  }
  return masses_[outcome - 1];
}

// --- operations --------------------------------------------------------------

DensityOperator tensor(const DensityOperator& a, const DensityOperator& b) {
  check_product_dim(a.dim(), b.dim(), "tensor");
  return DensityOperator::trusted(kron(a.matrix(), b.matrix()));
}

POM pom_tensor(const POM& a, const POM& b) {
  check_product_dim(a.dim(), b.dim(), "pom_tensor");
  std::vector<CMatrix> effects;
  std::vector<std::string> labels;
  effects.reserve(a.outcome_count() * b.outcome_count());
  labels.reserve(effects.capacity());
  for (std::size_t i = 0; i < a.outcome_count(); ++i) {
    for (std::size_t j = 0; j < b.outcome_count(); ++j) {
      effects.push_back(kron(a.effects()[i], b.effects()[j]));
      labels.push_back(a.labels()[i] + ":" + b.labels()[j]);
    }
  }
  return POM::trusted(std::move(effects), std::move(labels));
}

FiniteDistribution measure(const DensityOperator& rho, const POM& pom) {
  if (rho.dim() != pom.dim()) {
    fail_validation(errkind::DimensionMismatch,
                    "measure: state and measurement dimensions differ");
  }
  std::vector<double> masses(pom.outcome_count());
  for (std::size_t m = 0; m < masses.size(); ++m) {
    masses[m] = trace_product_hermitian(rho.matrix(), pom.effects()[m]);
  }
  return FiniteDistribution::trusted(std::move(masses));
}

Effect coarsen(const POM& pom, const std::vector<int>& outcomes) {
  const int count = static_cast<int>(pom.outcome_count());
  std::vector<bool> seen(static_cast<std::size_t>(count) + 1, false);
  CMatrix sum = CMatrix::Zero(pom.dim(), pom.dim());
  for (int outcome : outcomes) {
    if (outcome < 1 || outcome > count) {
      fail_validation(errkind::IndexOutOfRange, "coarsen: outcome index",
                      static_cast<double>(outcome));
    }
    if (seen[static_cast<std::size_t>(outcome)]) {
      fail_validation(errkind::BadParameter, "coarsen: duplicate outcome",
                      static_cast<double>(outcome));
    }
    seen[static_cast<std::size_t>(outcome)] = true;
    sum += pom.effects()[static_cast<std::size_t>(outcome - 1)];
  }
  return Effect::trusted(std::move(sum));
}

double von_neumann_entropy(const DensityOperator& rho) {
  const RVector eigs = hermitian_eigenvalues(rho.matrix());
  double entropy = 0.0;
  for (Eigen::Index i = 0; i < eigs.size(); ++i) {
    const double lambda = std::min(1.0, std::max(0.0, eigs(i)));
    if (lambda > 0.0) entropy -= lambda * std::log2(lambda);
  }
  return std::max(0.0, entropy);
}

double variational_distance(const FiniteDistribution& p,
                            const FiniteDistribution& q) {
  if (p.size() != q.size()) {
    fail_validation(errkind::DimensionMismatch,
                    "variational_distance: outcome counts differ");
  }
  double total = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    total += std::abs(p.masses()[i] - q.masses()[i]);
  }
  return total;
}

DensityOperator validate_density(const CMatrix& matrix) {
  return DensityOperator::validated(matrix);
}

Effect validate_effect(const CMatrix& matrix) { return Effect::validated(matrix); }

POM validate_pom(const std::vector<CMatrix>& effects,
                 const std::vector<std::string>& labels) {
  return POM::validated(effects, labels);
}

}  // namespace qidlab
