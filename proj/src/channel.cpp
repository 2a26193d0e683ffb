#include "qidlab/channel.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <utility>

#include "qidlab/errors.hpp"
#include "qidlab/fnv.hpp"
#include "qidlab/parallel.hpp"
#include "qidlab/settings.hpp"

namespace qidlab {

namespace {

std::uint64_t hash_matrix(const CMatrix& m, std::uint64_t basis) {
  std::uint64_t h = basis;
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    for (Eigen::Index c = 0; c < m.cols(); ++c) {
      const double re = m(r, c).real();
      const double im = m(r, c).imag();
      h = fnv64(&re, sizeof re, h);
      h = fnv64(&im, sizeof im, h);
    }
  }
  return h;
}

void check_letters(const CQChannel& channel, const Word& word) {
  for (int letter : word) {
    if (letter < 1 || letter > channel.alphabet_size()) {
      fail_validation(errkind::BadLetter, "word letter outside alphabet",
                      static_cast<double>(letter));
    }
  }
}

CMatrix build_word_state(const CQChannel& channel, const Word& word) {
  check_letters(channel, word);
  CMatrix acc = CMatrix::Ones(1, 1);
  for (int letter : word) {
    const std::int64_t next =
        static_cast<std::int64_t>(acc.rows()) * channel.dim();
    if (next > settings().dim_limit) {
      fail_validation(errkind::ResourceLimit,
                      "word state dimension exceeds limit",
                      static_cast<double>(next));
    }
    acc = kron(acc, channel.signal(letter).matrix()).eval();
  }
  return acc;
}

}  // namespace

// --- CQChannel ---------------------------------------------------------------

CQChannel::CQChannel(std::vector<DensityOperator> signals)
    : signals_(std::move(signals)) {
  std::uint64_t h = kFnvBasis;
  const std::uint64_t a = signals_.size();
  const std::uint64_t d = static_cast<std::uint64_t>(signals_.front().dim());
  h = fnv64(&a, sizeof a, h);
  h = fnv64(&d, sizeof d, h);
  for (const DensityOperator& s : signals_) h = hash_matrix(s.matrix(), h);
  fingerprint_ = h;
}

CQChannel CQChannel::validated(std::vector<DensityOperator> signals) {
  if (signals.empty()) {
    fail_validation(errkind::SizeMismatch, "channel: needs at least one signal");
  }
  const int dim = signals.front().dim();
  for (const DensityOperator& s : signals) {
    if (s.dim() != dim) {
      fail_validation(errkind::DimensionMismatch,
                      "channel: signals must share one dimension");
    }
  }
  return CQChannel(std::move(signals));
}

const DensityOperator& CQChannel::signal(int letter) const {
  if (letter < 1 || letter > alphabet_size()) {
    fail_validation(errkind::BadLetter, "channel: letter outside alphabet",
                    static_cast<double>(letter));
  }
  return signals_[static_cast<std::size_t>(letter - 1)];
}

// --- SparseDistribution ------------------------------------------------------

SparseDistribution SparseDistribution::from_pairs(
    std::vector<std::pair<Word, BigRational>> pairs) {
  if (pairs.empty()) {
    fail_validation(errkind::SizeMismatch, "distribution: empty support");
  }
  const std::size_t n = pairs.front().first.size();
  std::map<Word, BigRational> merged;
  for (auto& [word, mass] : pairs) {
    if (word.size() != n) {
      fail_validation(errkind::SizeMismatch,
                      "distribution: words must share one length");
    }
    for (int letter : word) {
      if (letter < 1) {
        fail_validation(errkind::BadLetter, "distribution: letters are 1-based",
                        static_cast<double>(letter));
      }
    }
    if (mass < 0) {
      fail_validation(errkind::NotNormalized, "distribution: negative mass",
                      static_cast<double>(mass));
    }
    merged[word] += mass;
  }
  if (merged.size() > settings().support_cap) {
    fail_validation(errkind::ResourceLimit, "distribution: support too large",
                    static_cast<double>(merged.size()));
  }
  BigRational total = 0;
  SparseDistribution dist;
  dist.word_length_ = static_cast<int>(n);
  for (auto& [word, mass] : merged) {
    total += mass;
    if (mass == 0) continue;  // support keeps positive masses only
    dist.words_.push_back(word);
    dist.masses_.push_back(mass);
    dist.mass_doubles_.push_back(static_cast<double>(mass));
  }
  if (total != 1) {
    fail_validation(errkind::NotNormalized,
                    "distribution: masses must sum to exactly 1",
                    static_cast<double>(total));
  }
  return dist;
}

SparseDistribution SparseDistribution::uniform_over(
    const std::vector<Word>& words) {
  if (words.empty()) {
    fail_validation(errkind::SizeMismatch, "distribution: empty support");
  }
  const BigRational unit(1, static_cast<long>(words.size()));
  std::vector<std::pair<Word, BigRational>> pairs;
  pairs.reserve(words.size());
  for (const Word& w : words) pairs.emplace_back(w, unit);
  return from_pairs(std::move(pairs));
}

SparseDistribution SparseDistribution::point_mass(Word word) {
  std::vector<std::pair<Word, BigRational>> pairs;
  pairs.emplace_back(std::move(word), BigRational(1));
  return from_pairs(std::move(pairs));
}

// --- WordStateCache ----------------------------------------------------------

namespace {

std::uint64_t hash_word(const Word& word) {
  std::uint64_t h = kFnvBasis;
  for (int letter : word) h = fnv64(&letter, sizeof letter, h);
  return h;
}

constexpr std::uint32_t kCacheVersion = 1;

bool load_cached_state(const std::filesystem::path& file, const Word& word,
                       CMatrix& out) {
  std::ifstream in(file, std::ios::binary);
  if (!in) return false;
  std::uint32_t version = 0;
  std::uint64_t length = 0;
  in.read(reinterpret_cast<char*>(&version), sizeof version);
  in.read(reinterpret_cast<char*>(&length), sizeof length);
  if (!in || version != kCacheVersion || length != word.size()) return false;
  Word stored(word.size());
  if (!stored.empty()) {
    in.read(reinterpret_cast<char*>(stored.data()),
            static_cast<std::streamsize>(stored.size() * sizeof(int)));
  }
  if (!in || stored != word) return false;
  std::int64_t dim = 0;
  in.read(reinterpret_cast<char*>(&dim), sizeof dim);
  if (!in || dim <= 0 || dim > settings().dim_limit) return false;
  CMatrix m(dim, dim);
  for (std::int64_t r = 0; r < dim && in; ++r) {
    for (std::int64_t c = 0; c < dim && in; ++c) {
      double re = 0.0, im = 0.0;
      in.read(reinterpret_cast<char*>(&re), sizeof re);
      in.read(reinterpret_cast<char*>(&im), sizeof im);
      m(r, c) = Complex(re, im);
    }
  }
  if (!in) return false;
  out = std::move(m);
  return true;
}

void store_cached_state(const std::filesystem::path& file, const Word& word,
                        const CMatrix& m) {
  std::ofstream out(file, std::ios::binary | std::ios::trunc);
  if (!out) return;  // cache is best effort
  const std::uint32_t version = kCacheVersion;
  const std::uint64_t length = word.size();
  out.write(reinterpret_cast<const char*>(&version), sizeof version);
  out.write(reinterpret_cast<const char*>(&length), sizeof length);
  if (!word.empty()) {
    out.write(reinterpret_cast<const char*>(word.data()),
              static_cast<std::streamsize>(word.size() * sizeof(int)));
  }
  const std::int64_t dim = m.rows();
  out.write(reinterpret_cast<const char*>(&dim), sizeof dim);
  for (std::int64_t r = 0; r < dim; ++r) {
    for (std::int64_t c = 0; c < dim; ++c) {
      const double re = m(r, c).real();
      const double im = m(r, c).imag();
      out.write(reinterpret_cast<const char*>(&re), sizeof re);
      out.write(reinterpret_cast<const char*>(&im), sizeof im);
    }
  }
}

}  // namespace

WordStateCache::WordStateCache(const CQChannel& channel) : channel_(&channel) {
  if (const char* dir = std::getenv("QIDLAB_CACHE_DIR")) {
    std::error_code ec;
    std::filesystem::path path(dir);
    std::filesystem::create_directories(path, ec);
    if (!ec && std::filesystem::is_directory(path, ec) && !ec) {
      disk_ = std::move(path);
    }
  }
}

const CMatrix& WordStateCache::state(const Word& word) {
  {
    std::lock_guard<std::mutex> guard(lock_);
    auto it = store_.find(word);
    if (it != store_.end()) return it->second;
  }
  std::filesystem::path file;
  if (disk_) {
    file = *disk_ / (to_hex(channel_->fingerprint()) + "-" +
                     to_hex(hash_word(word)) + ".wst");
    CMatrix cached;
    if (load_cached_state(file, word, cached)) {
      std::lock_guard<std::mutex> guard(lock_);
      return store_.emplace(word, std::move(cached)).first->second;
    }
  }
  CMatrix fresh = build_word_state(*channel_, word);
  if (disk_) store_cached_state(file, word, fresh);
  std::lock_guard<std::mutex> guard(lock_);
  return store_.emplace(word, std::move(fresh)).first->second;
}

// --- operations ----------------------------------------------------------------

DensityOperator word_state(const CQChannel& channel, const Word& word) {
  return DensityOperator::trusted(build_word_state(channel, word));
}

DensityOperator mixed_output(const CQChannel& channel,
                             const SparseDistribution& input) {
  WordStateCache cache(channel);
  const std::vector<double>& masses = input.mass_doubles();
  CMatrix acc;
  for (std::size_t i = 0; i < input.support_size(); ++i) {
    const CMatrix& state = cache.state(input.words()[i]);
    if (acc.size() == 0) acc = CMatrix::Zero(state.rows(), state.cols());
    acc += masses[i] * state;
  }
  return DensityOperator::trusted(std::move(acc));
}

double holevo_quantity(const CQChannel& channel, const FiniteDistribution& p) {
  if (p.size() != static_cast<std::size_t>(channel.alphabet_size())) {
    fail_validation(errkind::SizeMismatch,
                    "holevo_quantity: distribution size must match alphabet");
  }
  CMatrix mix = CMatrix::Zero(channel.dim(), channel.dim());
  double signal_term = 0.0;
  for (int x = 1; x <= channel.alphabet_size(); ++x) {
    const double mass = p.mass(static_cast<std::size_t>(x));
    if (mass == 0.0) continue;
    mix += mass * channel.signal(x).matrix();
    signal_term += mass * von_neumann_entropy(channel.signal(x));
  }
  const double mixed_term =
      von_neumann_entropy(DensityOperator::trusted(std::move(mix)));
  return std::max(0.0, mixed_term - signal_term);
}

// --- capacity ----------------------------------------------------------------

namespace {

// chi evaluation against precomputed signal entropies; masses need not be
// validated (they are exact simplex points by construction).
double chi_at(const CQChannel& channel, const std::vector<double>& masses,
              const std::vector<double>& signal_entropy) {
  CMatrix mix = CMatrix::Zero(channel.dim(), channel.dim());
  double signal_term = 0.0;
  for (std::size_t x = 0; x < masses.size(); ++x) {
    if (masses[x] == 0.0) continue;
    mix += masses[x] * channel.signals()[x].matrix();
    signal_term += masses[x] * signal_entropy[x];
  }
  const double mixed_term =
      von_neumann_entropy(DensityOperator::trusted(std::move(mix)));
  return std::max(0.0, mixed_term - signal_term);
}

// All compositions of `total` into `parts` nonnegative integers, in
// lexicographic order.  Recursion depth equals `parts`, which is bounded
// by the alphabet cap.
void compositions_rec(int total, int parts, std::vector<int>& value,
                      std::vector<std::vector<int>>& out) {
  const std::size_t level = value.size();
  if (level + 1 == static_cast<std::size_t>(parts)) {
    value.push_back(total);
    out.push_back(value);
    value.pop_back();
    return;
  }
  for (int take = 0; take <= total; ++take) {
    value.push_back(take);
    compositions_rec(total - take, parts, value, out);
    value.pop_back();
  }
}

void enumerate_compositions(int total, int parts,
                            std::vector<std::vector<int>>& out) {
  std::vector<int> value;
  value.reserve(static_cast<std::size_t>(parts));
  compositions_rec(total, parts, value, out);
}

std::size_t composition_count(int total, int parts) {
  const BigInt count = binomial(static_cast<std::uint64_t>(total + parts - 1),
                                static_cast<std::uint64_t>(parts - 1));
  if (count > std::numeric_limits<std::size_t>::max()) {
    return std::numeric_limits<std::size_t>::max();
  }
  return static_cast<std::size_t>(count);
}

}  // namespace

CapacityResult holevo_capacity(const CQChannel& channel,
                               const CapacityOptions& options) {
  const int a = channel.alphabet_size();
  if (a > settings().alphabet_cap) {
    fail_validation(errkind::AlphabetTooLarge,
                    "capacity: alphabet above optimizer cap",
                    static_cast<double>(a));
  }
  std::vector<double> signal_entropy(static_cast<std::size_t>(a));
  for (int x = 0; x < a; ++x) {
    signal_entropy[static_cast<std::size_t>(x)] =
        von_neumann_entropy(channel.signals()[static_cast<std::size_t>(x)]);
  }

  int g = options.grid_subdivisions;
  if (g <= 0) {
    static constexpr int kMeshLadder[] = {256, 128, 96, 64, 48, 32, 24, 16, 12, 8, 6, 4, 2};
    g = 2;
    for (int candidate : kMeshLadder) {
      if (composition_count(candidate, a) <= options.grid_point_cap) {
        g = candidate;
        break;
      }
    }
  }

  std::vector<std::vector<int>> grid;
  grid.reserve(composition_count(g, a));
  enumerate_compositions(g, a, grid);
  require_internal(grid.size() == composition_count(g, a),
                   "capacity: composition enumeration miscounted");

  std::vector<double> values(grid.size());
  parallel_for(grid.size(), [&](std::size_t i) {
    std::vector<double> masses(static_cast<std::size_t>(a));
    for (int x = 0; x < a; ++x) {
      masses[static_cast<std::size_t>(x)] =
          static_cast<double>(grid[i][static_cast<std::size_t>(x)]) /
          static_cast<double>(g);
    }
    values[i] = chi_at(channel, masses, signal_entropy);
  });

  std::size_t best_index = 0;
  for (std::size_t i = 1; i < values.size(); ++i) {
    if (values[i] > values[best_index]) best_index = i;
  }

  std::vector<double> best(static_cast<std::size_t>(a));
  for (int x = 0; x < a; ++x) {
    best[static_cast<std::size_t>(x)] =
        static_cast<double>(grid[best_index][static_cast<std::size_t>(x)]) /
        static_cast<double>(g);
  }
  double best_value = values[best_index];

  // Pairwise mass transfers; chi is concave along each segment, so a fixed
  // ternary-search schedule homes in on the per-pair optimum.
  int rounds_used = 0;
  for (int round = 0; round < options.ascent_rounds; ++round) {
    double round_gain = 0.0;
    for (int i = 0; i < a; ++i) {
      for (int j = 0; j < a; ++j) {
        if (i == j) continue;
        const double budget = best[static_cast<std::size_t>(i)];
        if (budget <= 0.0) continue;
        auto eval = [&](double t) {
          std::vector<double> moved = best;
          moved[static_cast<std::size_t>(i)] -= t;
          moved[static_cast<std::size_t>(j)] += t;
          return chi_at(channel, moved, signal_entropy);
        };
        double lo = 0.0, hi = budget;
        for (int step = 0; step < 48; ++step) {
          const double m1 = lo + (hi - lo) / 3.0;
          const double m2 = hi - (hi - lo) / 3.0;
          if (eval(m1) < eval(m2)) {
            lo = m1;
          } else {
            hi = m2;
          }
        }
        const double t = 0.5 * (lo + hi);
        const double candidate = eval(t);
        if (candidate > best_value) {
          round_gain += candidate - best_value;
          best_value = candidate;
          best[static_cast<std::size_t>(i)] -= t;
          best[static_cast<std::size_t>(j)] += t;
        }
      }
    }
    ++rounds_used;
    if (round_gain < options.ascent_tol) break;
  }

  CapacityResult result;
  result.value = best_value;
  result.argmax = std::move(best);
  result.grid_subdivisions = g;
  result.grid_points = grid.size();
  result.ascent_rounds_used = rounds_used;
  return result;
}

InducedClassicalChannel induced_channel(const CQChannel& channel,
                                        const std::vector<Word>& inputs,
                                        const POM& pom) {
  if (inputs.empty()) {
    fail_validation(errkind::SizeMismatch, "induced_channel: no input words");
  }
  const std::size_t n = inputs.front().size();
  for (const Word& w : inputs) {
    if (w.size() != n) {
      fail_validation(errkind::SizeMismatch,
                      "induced_channel: words must share one length");
    }
  }
  std::int64_t expected = 1;
  for (std::size_t i = 0; i < n; ++i) {
    expected *= channel.dim();
    if (expected > settings().dim_limit) {
      fail_validation(errkind::ResourceLimit,
                      "induced_channel: word dimension exceeds limit",
                      static_cast<double>(expected));
    }
  }
  if (pom.dim() != expected) {
    fail_validation(errkind::DimensionMismatch,
                    "induced_channel: measurement dimension must match words");
  }
  WordStateCache cache(channel);
  InducedClassicalChannel induced;
  induced.inputs = inputs;
  induced.outcome_labels = pom.labels();
  induced.rows.reserve(inputs.size());
  for (const Word& w : inputs) {
    induced.rows.push_back(
        measure(DensityOperator::trusted(cache.state(w)), pom));
  }
  return induced;
}

}  // namespace qidlab
