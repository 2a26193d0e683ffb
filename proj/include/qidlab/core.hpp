#pragma once

#include <string>
#include <vector>

#include "qidlab/linalg.hpp"

namespace qidlab {

// Finite-dimensional state: Hermitian, positive semidefinite, unit trace.
// Construct through validated() (full eigenvalue check, rejects bad input)
// or trusted() (cheap O(dim^2) checks only; for library code whose algebra
// guarantees the invariants, e.g. tensor products of validated states).
class DensityOperator {
 public:
  static DensityOperator validated(CMatrix matrix);
  static DensityOperator trusted(CMatrix matrix);

  const CMatrix& matrix() const { return matrix_; }
  int dim() const { return static_cast<int>(matrix_.rows()); }

 private:
  explicit DensityOperator(CMatrix matrix) : matrix_(std::move(matrix)) {}
  CMatrix matrix_;
};

// Measurement element: Hermitian with spectrum inside [0, 1].
class Effect {
 public:
  static Effect validated(CMatrix matrix);
  static Effect trusted(CMatrix matrix);

  const CMatrix& matrix() const { return matrix_; }
  int dim() const { return static_cast<int>(matrix_.rows()); }

 private:
  explicit Effect(CMatrix matrix) : matrix_(std::move(matrix)) {}
  CMatrix matrix_;
};

// Probability operator measurement: effects on a common space summing to
// the identity.  Outcomes are indexed 1..outcome_count() in the API, and
// carry string labels (defaulting to "1", "2", ...).
class POM {
 public:
  // Trivial measurement on a 1-dimensional space; placeholder so that
  // structs holding a POM stay default-constructible.
  POM();

  static POM validated(std::vector<CMatrix> effects,
                       std::vector<std::string> labels = {});
  static POM trusted(std::vector<CMatrix> effects,
                     std::vector<std::string> labels = {});
  static POM computational_basis(int dim);

  int dim() const { return static_cast<int>(effects_.front().rows()); }
  std::size_t outcome_count() const { return effects_.size(); }
  // outcome is 1-based.
  const CMatrix& effect(std::size_t outcome) const;
  const std::vector<CMatrix>& effects() const { return effects_; }
  const std::vector<std::string>& labels() const { return labels_; }

 private:
  POM(std::vector<CMatrix> effects, std::vector<std::string> labels)
      : effects_(std::move(effects)), labels_(std::move(labels)) {}
  std::vector<CMatrix> effects_;
  std::vector<std::string> labels_;
};

// Probability vector over outcomes 1..size().
class FiniteDistribution {
 public:
  static FiniteDistribution validated(std::vector<double> masses);
  static FiniteDistribution trusted(std::vector<double> masses);
  static FiniteDistribution uniform(std::size_t size);
  static FiniteDistribution point_mass(std::size_t size, std::size_t outcome);

  std::size_t size() const { return masses_.size(); }
  // outcome is 1-based.
  double mass(std::size_t outcome) const;
  const std::vector<double>& masses() const { return masses_; }

 private:
  explicit FiniteDistribution(std::vector<double> masses)
      : masses_(std::move(masses)) {}
  std::vector<double> masses_;
};

// --- operations -----------------------------------------------------------

// Kronecker product of states; rejects results above settings().dim_limit.
DensityOperator tensor(const DensityOperator& a, const DensityOperator& b);

// Product measurement with one effect per outcome pair, ordered with the
// second index fastest, labels joined "a:b".
POM pom_tensor(const POM& a, const POM& b);

// Outcome distribution tr(rho E_m).  Clamps the tiny negatives that float
// arithmetic can produce; anything beyond algebra_tol is an internal error.
FiniteDistribution measure(const DensityOperator& rho, const POM& pom);

// Sum of the effects at the given 1-based outcomes (may be empty: zero
// effect; duplicates rejected).  Coarse-graining a POM over disjoint
// outcome groups yields effects again, one per group.
Effect coarsen(const POM& pom, const std::vector<int>& outcomes);

// H(rho) = -sum lambda log2 lambda, in bits.
double von_neumann_entropy(const DensityOperator& rho);

// d1(p, q) = sum_m |p(m) - q(m)|, range [0, 2]; equals twice the maximum
// advantage max_A |p(A) - q(A)| over outcome subsets.
double variational_distance(const FiniteDistribution& p,
                            const FiniteDistribution& q);

// Free-function spellings used by callers that read like the interface
// documentation.
DensityOperator validate_density(const CMatrix& matrix);
Effect validate_effect(const CMatrix& matrix);
POM validate_pom(const std::vector<CMatrix>& effects,
                 const std::vector<std::string>& labels = {});

}  // namespace qidlab
