#pragma once

#include "conefan/json_io.hpp"
#include "conefan/sampling.hpp"

namespace conefan {

struct SuiteSpec {
  std::string suite = "all";  // fan|orthoset|cone|germ|convex|coregular|padic|all
  uint64_t samples = 1000;
  uint64_t seed = 1;
  std::string corpus_dir;
  std::string out_path;
  std::string format = "json";
  ExecMode exec = ExecMode::Parallel;
};

struct CheckRecord {
  std::string suite;
  std::string check;
  std::string anchor;  // stable identity tag
  std::string datum;
  uint64_t samples = 0;
  uint64_t failures = 0;
  std::string counterexample;  // exact inputs of the first failure
  double wall_ms = 0;          // console diagnostics; not serialized
};

struct Report {
  std::vector<CheckRecord> records;
  bool pass = false;
};

bool known_suite(const std::string& name);

Report run_suite(const SuiteSpec& spec, const Corpus& corpus);
Report run_suite(const SuiteSpec& spec);  // loads the corpus from spec.corpus_dir

// Deterministic bytes: stable field order, rationals as "p/q", timing
// excluded so identical runs emit identical reports.
std::string emit_report(const Report& report, const std::string& format);
Report parse_report_json(const std::string& bytes);

// Space of all orthogonal sets of a mode as a basis of stacked chamber
// points; used by the samplers and exposed for tests.
std::vector<OrthogonalSet> orthogonal_set_space(const Fan& fan, Mode mode);

// Deterministic sampler: random element of the space, optionally shifted to
// a positive set.
OrthogonalSet sample_orthogonal_set(const Fan& fan, Mode mode, const CounterRng& rng,
                                    uint64_t index, bool positive);

// Off-wall offset: a vector delta such that lambda(H0 + delta) != c for every
// listed wall (lambda, c) with lambda != 0 and every integer vector H0.
QVec off_wall_offset(size_t dim, const std::vector<std::pair<QVec, Rat>>& walls);

int cli_main(int argc, char** argv);

}  // namespace conefan
