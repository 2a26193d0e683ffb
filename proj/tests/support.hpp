#pragma once

#include <doctest.h>

#include <string>
#include <vector>

#include "qidlab/channel.hpp"
#include "qidlab/core.hpp"
#include "qidlab/errors.hpp"
#include "qidlab/linalg.hpp"
#include "qidlab/rng.hpp"
#include "qidlab/settings.hpp"

namespace qidlab::testing {

// Tests that touch global settings restore the defaults on exit.
struct SettingsGuard {
  SettingsGuard() { reset_settings(); }
  ~SettingsGuard() { reset_settings(); }
};

template <typename F>
void expect_kind(F&& body, const char* kind) {
  try {
    body();
    FAIL_CHECK("expected ValidationError of kind " << kind);
  } catch (const ValidationError& e) {
    CHECK(e.kind() == kind);
  } catch (const std::exception& e) {
    FAIL_CHECK("expected ValidationError, got: " << e.what());
  }
}

inline CMatrix random_complex(int rows, int cols, Prng& rng) {
  CMatrix g(rows, cols);
  for (int r = 0; r < rows; ++r) {
    for (int c = 0; c < cols; ++c) {
      g(r, c) = Complex(rng.uniform01() - 0.5, rng.uniform01() - 0.5);
    }
  }
  return g;
}

// Full-rank random state via G G^dagger / tr.
inline DensityOperator random_density(int dim, Prng& rng) {
  CMatrix g = random_complex(dim, dim, rng);
  CMatrix m = g * g.adjoint();
  m = ((m + m.adjoint()) / 2.0).eval();
  m /= m.trace().real();
  return DensityOperator::validated(m);
}

// Random POM: sandwich random PSD pieces with the inverse square root of
// their sum, which makes them complete by construction.
inline POM random_pom(int dim, int outcomes, Prng& rng) {
  std::vector<CMatrix> pieces;
  pieces.reserve(static_cast<std::size_t>(outcomes));
  CMatrix total = CMatrix::Zero(dim, dim);
  for (int k = 0; k < outcomes; ++k) {
    CMatrix g = random_complex(dim, dim, rng);
    CMatrix a = g * g.adjoint();
    total += a;
    pieces.push_back(std::move(a));
  }
  CMatrix w = inv_sqrt_psd(total);
  std::vector<CMatrix> effects;
  effects.reserve(pieces.size());
  for (const CMatrix& a : pieces) {
    CMatrix e = w * a * w;
    effects.push_back(((e + e.adjoint()) / 2.0).eval());
  }
  return POM::validated(std::move(effects));
}

// Channel whose two signals are pure qubit states with overlap s.
inline CQChannel overlap_channel(double s) {
  CMatrix a = CMatrix::Zero(2, 2);
  a(0, 0) = 1.0;
  Eigen::Vector2cd psi(s, std::sqrt(1.0 - s * s));
  CMatrix b = psi * psi.adjoint();
  return CQChannel::validated(
      {DensityOperator::validated(a), DensityOperator::validated(b)});
}

// Noiseless classical bit: orthogonal basis signals.
inline CQChannel noiseless_bit() {
  CMatrix a = CMatrix::Zero(2, 2);
  CMatrix b = CMatrix::Zero(2, 2);
  a(0, 0) = 1.0;
  b(1, 1) = 1.0;
  return CQChannel::validated(
      {DensityOperator::validated(a), DensityOperator::validated(b)});
}

// Every word of length n over {1..alphabet}, lexicographic.
inline std::vector<Word> enumerate_words(int alphabet, int n) {
  std::vector<Word> words;
  Word w(static_cast<std::size_t>(n), 1);
  while (true) {
    words.push_back(w);
    int i = n - 1;
    while (i >= 0 && w[static_cast<std::size_t>(i)] == alphabet) {
      w[static_cast<std::size_t>(i)] = 1;
      --i;
    }
    if (i < 0) break;
    ++w[static_cast<std::size_t>(i)];
  }
  return words;
}

}  // namespace qidlab::testing
