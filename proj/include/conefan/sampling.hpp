#pragma once

#include "conefan/rational.hpp"

#include <functional>
#include <optional>
#include <string>

#include <omp.h>

namespace conefan {

// Counter-based generator: the value at (seed, stream, index) is a pure
// function of its arguments, so any sampled point can be reconstructed from
// the seed and its index alone.
struct CounterRng {
  uint64_t seed = 0;
  uint64_t stream = 0;

  static uint64_t mix(uint64_t z) {
    z += 0x9e3779b97f4a7c15ull;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
  }
  static uint64_t hash_str(const std::string& s) {
    uint64_t h = 0xcbf29ce484222325ull;
    for (unsigned char ch : s) h = (h ^ ch) * 0x100000001b3ull;
    return h;
  }

  CounterRng() = default;
  CounterRng(uint64_t seed_, const std::string& stream_name)
      : seed(seed_), stream(hash_str(stream_name)) {}

  uint64_t at(uint64_t index, uint64_t lane = 0) const {
    return mix(mix(seed ^ mix(stream + lane)) + index);
  }

  // uniform in [0, bound)
  uint64_t bounded(uint64_t index, uint64_t lane, uint64_t bound) const {
    return at(index, lane) % bound;
  }

  // numerator in [-num_range, num_range], denominator in [1, den_range]
  Rat rat(uint64_t index, uint64_t lane, long num_range, long den_range) const {
    long num = (long)bounded(index, 2 * lane, 2 * num_range + 1) - num_range;
    long den = (long)bounded(index, 2 * lane + 1, den_range) + 1;
    Rat r(num, den);
    r.canonicalize();
    return r;
  }

  QVec rat_vec(uint64_t index, size_t dim, long num_range, long den_range) const {
    QVec v(dim);
    for (size_t i = 0; i < dim; ++i) v[i] = rat(index, i, num_range, den_range);
    return v;
  }
};

enum class ExecMode { Serial, Parallel };

struct Counterexample {
  uint64_t index = 0;
  std::string detail;
};

struct BatchOutcome {
  uint64_t samples = 0;
  uint64_t failures = 0;
  std::optional<Counterexample> first;  // lowest failing index
};

// Evaluates `check` at indices [0, n); a returned string is a failure
// description. The parallel path must produce the same outcome as the
// serial one: failures are counted exactly and the counterexample kept is
// the one with the lowest index.
inline BatchOutcome run_batch(uint64_t n,
                              const std::function<std::optional<std::string>(uint64_t)>& check,
                              ExecMode mode) {
  BatchOutcome out;
  out.samples = n;
  if (mode == ExecMode::Serial) {
    for (uint64_t i = 0; i < n; ++i) {
      auto bad = check(i);
      if (bad) {
        ++out.failures;
        if (!out.first) out.first = Counterexample{i, *bad};
      }
    }
    return out;
  }
  uint64_t failures = 0;
  uint64_t best_idx = ~0ull;
  std::string best_detail;
#pragma omp parallel
  {
    uint64_t loc_fail = 0, loc_idx = ~0ull;
    std::string loc_detail;
#pragma omp for schedule(dynamic, 64) nowait
    for (long long i = 0; i < (long long)n; ++i) {
      auto bad = check((uint64_t)i);
      if (bad) {
        ++loc_fail;
        if ((uint64_t)i < loc_idx) {
          loc_idx = (uint64_t)i;
          loc_detail = *bad;
        }
      }
    }
#pragma omp critical
    {
      failures += loc_fail;
      if (loc_idx < best_idx) {
        best_idx = loc_idx;
        best_detail = loc_detail;
      }
    }
  }
  out.failures = failures;
  if (best_idx != ~0ull) out.first = Counterexample{best_idx, best_detail};
  return out;
}

// Exact rational sum of term(i) over [0, n); the parallel reduction
// reassembles partial sums in deterministic (thread-ordered) sequence,
// and exact arithmetic makes the grouping immaterial anyway.
inline Rat sum_batch(uint64_t n, const std::function<Rat(uint64_t)>& term, ExecMode mode) {
  if (mode == ExecMode::Serial || n < 64) {
    Rat s = 0;
    for (uint64_t i = 0; i < n; ++i) s += term(i);
    return s;
  }
  int max_threads = omp_get_max_threads();
  std::vector<Rat> partial(max_threads, Rat(0));
#pragma omp parallel
  {
    int t = omp_get_thread_num();
    Rat local = 0;
#pragma omp for schedule(static) nowait
    for (long long i = 0; i < (long long)n; ++i) local += term((uint64_t)i);
    partial[t] = local;
  }
  Rat s = 0;
  for (const auto& p : partial) s += p;
  return s;
}

}  // namespace conefan
