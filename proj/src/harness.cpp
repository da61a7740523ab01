#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

#include "mcz/harness.hpp"

namespace mcz {
namespace {

void aggregate_levels(const ExperimentConfig& cfg, Report& rep) {
  for (int level : cfg.levels) {
    LevelAggregate agg;
    agg.level = level;
    double maxr = -std::numeric_limits<double>::infinity();
    double minr = std::numeric_limits<double>::infinity();
    for (const RecordRow& row : rep.records) {
      if (row.level != level || !row.aggregate) continue;
      ++agg.records;
      if (std::isnan(row.ratio)) {
        maxr = minr = std::numeric_limits<double>::quiet_NaN();
        break;
      }
      maxr = std::max(maxr, row.ratio);
      minr = std::min(minr, row.ratio);
      agg.pass_fraction = std::min(agg.pass_fraction, row.pass_fraction);
    }
    if (agg.records == 0) continue;
    agg.max_ratio = maxr;
    agg.min_ratio = minr;
    rep.aggregates.push_back(agg);
  }
}

double level_drift(const Report& rep) {
  double drift = 0.0;
  for (std::size_t k = 0; k + 1 < rep.aggregates.size(); ++k) {
    const double prev = rep.aggregates[k].max_ratio;
    const double next = rep.aggregates[k + 1].max_ratio;
    if (!(prev > 0.0) || !std::isfinite(prev)) continue;
    if (!std::isfinite(next)) return std::numeric_limits<double>::infinity();
    drift = std::max(drift, next / prev - 1.0);
  }
  return drift;
}

void round_report(Report& rep) {
  for (RecordRow& row : rep.records) {
    row.lhs = round_sig(row.lhs);
    row.rhs = round_sig(row.rhs);
    row.ratio = round_sig(row.ratio);
    row.pass_fraction = round_sig(row.pass_fraction);
  }
  for (LevelAggregate& agg : rep.aggregates) {
    agg.max_ratio = round_sig(agg.max_ratio);
    agg.min_ratio = round_sig(agg.min_ratio);
    agg.pass_fraction = round_sig(agg.pass_fraction);
  }
  rep.drift = round_sig(rep.drift);
}

void finalize(const ExperimentConfig& cfg, Report& rep) {
  aggregate_levels(cfg, rep);
  rep.drift = level_drift(rep);
  if (rep.verdict == "skip" && rep.records.empty()) {
    round_report(rep);
    return;
  }
  for (const LevelAggregate& agg : rep.aggregates)
    if (!std::isfinite(agg.max_ratio) || !std::isfinite(agg.min_ratio))
      rep.failures.push_back("non-finite aggregate at level " + std::to_string(agg.level));
  if (rep.drift > cfg.drift_tolerance + 1e-12)
    rep.failures.push_back("max-ratio drift " + std::to_string(rep.drift) +
                           " exceeds the tolerance " + std::to_string(cfg.drift_tolerance));
  if (rep.records.empty() && rep.failures.empty())
    rep.notes.push_back("empty family: nothing to check");
  rep.verdict = rep.failures.empty() ? "pass" : "fail";
  round_report(rep);
}

}  // namespace

Report run_experiment(const ExperimentConfig& cfg) {
  const Experiment* found = nullptr;
  for (const Experiment& e : experiment_registry())
    if (e.id == cfg.experiment) {
      found = &e;
      break;
    }
  if (!found) throw std::invalid_argument("unknown experiment id: " + cfg.experiment);
  Report rep;
  rep.experiment = found->id;
  rep.claim = found->claim;
  rep.seed = cfg.seed;
  rep.hash = config_hash(cfg);
  rep.levels = cfg.levels;
  found->run(cfg, rep);
  finalize(cfg, rep);
  return rep;
}

}  // namespace mcz
