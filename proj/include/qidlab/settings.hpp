#pragma once

#include <cstdint>

namespace qidlab {

// Global numeric tolerances and resource limits.  Every hard-coded
// threshold in the library routes through this record so that a single
// override (CLI flag or test fixture) changes behavior everywhere.
struct Settings {
  // Type invariants: hermiticity defect, eigenvalue slack, trace error,
  // completeness error.  Inputs worse than this are rejected.
  double validation_tol = 1e-9;

  // Algebraic identity checks inside longer computations (probability
  // sums, decoder bookkeeping cross-checks).
  double algebra_tol = 1e-8;

  // Normalization slack for distributions given in floating point before
  // exact rational bookkeeping takes over.
  double rational_tol = 1e-12;

  // Hard cap on any tensor-product dimension.  Exceeding it raises
  // ResourceLimit before the allocation happens.
  int dim_limit = 4096;

  // Capacity optimizer refuses alphabets above this size.
  int alphabet_cap = 8;

  // Sparse distributions over words refuse supports above this size.
  std::uint64_t support_cap = 1u << 20;

  // Exhaustive codebook search gives up after this many ordered tuples.
  std::uint64_t exhaustive_tuple_cap = 20'000'000;

  // Greedy family builder stops scanning candidates after this many.
  std::uint64_t family_candidate_cap = 50'000'000;

  // Exact family maximizer refuses instances with more candidate sets
  // than this, and aborts after the node cap regardless.
  std::uint64_t brute_force_candidate_cap = 5'000;
  std::uint64_t brute_force_node_cap = 50'000'000;

  // Random-coding constructions redraw at most this many times before
  // returning the best attempt seen.
  int random_coding_retries = 16;

  // Code-from-family size bound refuses exponents above this many bits.
  std::uint64_t size_bound_max_bits = 1u << 20;

  // Worker threads for data-parallel loops.  Results are identical for
  // every value; this only trades wall time.
  int threads = 1;
};

// Mutable process-wide settings.  Tests and the CLI adjust fields in
// place; library code reads through this accessor only.
Settings& settings();

// Restores defaults.  Used by test fixtures.
void reset_settings();

}  // namespace qidlab
