#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

namespace mcz {

// ---------------------------------------------------------------------------
// Corpus: reproducible families of analytic inputs, resampled at every grid
// level rather than stored as samples.  Item 0 of each kind is a fixed
// canonical member (independent of the seed); the rest are drawn from the
// seeded generator.
// ---------------------------------------------------------------------------

struct CorpusItem {
  std::string descriptor;
  std::function<double(double)> fn;  // profile on [-1, 1]
  double aux = 0.0;                  // power-weight exponent a, or p at infinity
};

// kind in {step-functions, smooth-bumps, power-weights, bmo-bumps, log-bmo,
// exponents}; unknown kinds throw.
std::vector<CorpusItem> generate_corpus(const std::string& kind, std::uint64_t seed, int count);

// ---------------------------------------------------------------------------
// Experiment configuration.  The seed fixes all randomness; per-level and
// per-family draws are forked from it, so shrinking the family or level list
// never reshuffles the members that remain.
// ---------------------------------------------------------------------------

struct ExperimentConfig {
  std::string experiment;
  std::uint64_t seed = 2026;
  std::vector<int> levels = {6, 7, 8};
  int family_size = 8;
  double halfwidth = 1.0;
  double dilation = 3.0;           // cube-family dilation factor
  double drift_tolerance = 0.25;   // allowed aggregate growth per level doubling
  double tol = 1e-8;               // bisection tolerance passed through to norms
  std::string operator_spec;       // "paraproduct" | "bpdo"; empty = experiment default
  std::string b_spec = "bmo-bumps";
  std::string f_spec;              // input corpus; empty = experiment default mix
  std::vector<double> weight_powers = {-0.4, 0.0, 0.4};
};

// FNV-1a over the canonical JSON form of the config.
std::string config_hash(const ExperimentConfig& cfg);

// ---------------------------------------------------------------------------
// Reports.
// ---------------------------------------------------------------------------

struct RecordRow {
  int level = 0;
  std::string config;         // which member/weight/exponent the row belongs to
  double lhs = 0.0;
  double rhs = 0.0;
  double ratio = 0.0;
  double pass_fraction = 1.0; // pointwise experiments only; 1 elsewhere
  bool aggregate = true;      // rows meant to diverge are kept but not aggregated
};

struct LevelAggregate {
  int level = 0;
  int records = 0;
  double max_ratio = 0.0;
  double min_ratio = 0.0;
  double pass_fraction = 1.0;  // minimum over the level's rows
};

struct Report {
  int schema = 1;
  std::string experiment;
  std::string claim;
  std::uint64_t seed = 0;
  std::string hash;
  std::vector<int> levels;
  std::vector<RecordRow> records;
  std::vector<LevelAggregate> aggregates;
  double drift = 0.0;   // worst max_ratio growth per level doubling (shrinkage ignored)
  std::string verdict;  // "pass" | "fail" | "skip"
  std::vector<std::string> notes;     // informational
  std::vector<std::string> failures;  // each one fails the run
};

// Registry: every experiment pairs one runner with one catalog claim.
struct Experiment {
  std::string id;
  std::string claim;
  std::string summary;
  std::function<void(const ExperimentConfig&, Report&)> run;
};

const std::vector<Experiment>& experiment_registry();

// Dispatch, sweep, aggregate, and set the verdict.  Throws
// std::invalid_argument for unknown ids.
Report run_experiment(const ExperimentConfig& cfg);

// Exit-code contract: pass = 0, fail = 2, skip = 3.
int verdict_exit_code(const Report& report);

// ---------------------------------------------------------------------------
// Emission.  JSON is the full record; CSV flattens the aggregates, one row
// per (experiment, level).  Doubles are rounded to 12 significant digits on
// the way out, so reruns and golden files compare byte-for-byte.
// ---------------------------------------------------------------------------

double round_sig(double x, int digits = 12);

std::string report_to_json(const Report& report);
std::string report_to_csv(const Report& report);

// Parse aggregates back out of the CSV form (round-trip checks).
std::vector<LevelAggregate> aggregates_from_csv(const std::string& csv);

// format in {json, csv}; writes <out_dir>/<experiment>.<ext> and returns the
// path.  I/O failures throw std::runtime_error.
std::string write_report(const Report& report, const std::string& out_dir,
                         const std::string& format);

}  // namespace mcz
