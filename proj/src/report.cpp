#include <charconv>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

#include "mcz/harness.hpp"
#include "mcz/rng.hpp"

namespace mcz {

namespace {

using nlohmann::json;

// Shortest exact decimal form; round-trips through strtod bit-for-bit.
// Non-finite values spell themselves out, since JSON and CSV lack them.
std::string number_text(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

json number_json(double v) {
  if (!std::isfinite(v)) return number_text(v);
  return v;
}

double parse_number(const std::string& s) {
  if (s == "nan") return std::nan("");
  if (s == "inf") return HUGE_VAL;
  if (s == "-inf") return -HUGE_VAL;
  return std::strtod(s.c_str(), nullptr);
}

json config_json(const ExperimentConfig& cfg) {
  json j;
  j["experiment"] = cfg.experiment;
  j["seed"] = cfg.seed;
  j["levels"] = cfg.levels;
  j["family_size"] = cfg.family_size;
  j["halfwidth"] = cfg.halfwidth;
  j["dilation"] = cfg.dilation;
  j["drift_tolerance"] = cfg.drift_tolerance;
  j["tol"] = cfg.tol;
  j["operator_spec"] = cfg.operator_spec;
  j["b_spec"] = cfg.b_spec;
  j["f_spec"] = cfg.f_spec;
  j["weight_powers"] = cfg.weight_powers;
  return j;
}

}  // namespace

double round_sig(double x, int digits) {
  if (x == 0.0 || !std::isfinite(x)) return x;
  const int exponent = static_cast<int>(std::floor(std::log10(std::fabs(x))));
  const double mag = std::pow(10.0, digits - 1 - exponent);
  if (!std::isfinite(mag) || mag == 0.0) return x;
  return std::round(x * mag) / mag;
}

std::string config_hash(const ExperimentConfig& cfg) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx",
                static_cast<unsigned long long>(fnv1a(config_json(cfg).dump())));
  return buf;
}

std::string report_to_json(const Report& r) {
  json j;
  j["schema"] = r.schema;
  j["experiment"] = r.experiment;
  j["claim"] = r.claim;
  j["seed"] = r.seed;
  j["hash"] = r.hash;
  j["levels"] = r.levels;
  j["drift"] = number_json(r.drift);
  j["verdict"] = r.verdict;
  j["notes"] = r.notes;
  j["failures"] = r.failures;
  j["records"] = json::array();
  for (const auto& row : r.records) {
    json o;
    o["level"] = row.level;
    o["config"] = row.config;
    o["lhs"] = number_json(row.lhs);
    o["rhs"] = number_json(row.rhs);
    o["ratio"] = number_json(row.ratio);
    o["pass_fraction"] = number_json(row.pass_fraction);
    o["aggregate"] = row.aggregate;
    j["records"].push_back(std::move(o));
  }
  j["aggregates"] = json::array();
  for (const auto& a : r.aggregates) {
    json o;
    o["level"] = a.level;
    o["records"] = a.records;
    o["max_ratio"] = number_json(a.max_ratio);
    o["min_ratio"] = number_json(a.min_ratio);
    o["pass_fraction"] = number_json(a.pass_fraction);
    j["aggregates"].push_back(std::move(o));
  }
  return j.dump(1) + "\n";
}

std::string report_to_csv(const Report& r) {
  std::ostringstream os;
  os << "experiment,level,records,max_ratio,min_ratio,pass_fraction,drift,verdict\n";
  for (const auto& a : r.aggregates) {
    os << r.experiment << ',' << a.level << ',' << a.records << ',' << number_text(a.max_ratio)
       << ',' << number_text(a.min_ratio) << ',' << number_text(a.pass_fraction) << ','
       << number_text(r.drift) << ',' << r.verdict << '\n';
  }
  return os.str();
}

std::vector<LevelAggregate> aggregates_from_csv(const std::string& csv) {
  std::vector<LevelAggregate> out;
  std::istringstream is(csv);
  std::string line;
  bool header = true;
  while (std::getline(is, line)) {
    if (header) {
      header = false;
      continue;
    }
    if (line.empty()) continue;
    std::istringstream ls(line);
    std::string field;
    std::vector<std::string> fields;
    while (std::getline(ls, field, ',')) fields.push_back(field);
    if (fields.size() < 8) throw std::runtime_error("aggregates_from_csv: short row");
    LevelAggregate a;
    a.level = std::stoi(fields[1]);
    a.records = std::stoi(fields[2]);
    a.max_ratio = parse_number(fields[3]);
    a.min_ratio = parse_number(fields[4]);
    a.pass_fraction = parse_number(fields[5]);
    out.push_back(a);
  }
  return out;
}

std::string write_report(const Report& r, const std::string& out_dir,
                         const std::string& format) {
  if (format != "json" && format != "csv")
    throw std::invalid_argument("write_report: format must be json or csv");
  namespace fs = std::filesystem;
  fs::create_directories(out_dir);
  const fs::path path = fs::path(out_dir) / (r.experiment + "." + format);
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("write_report: cannot open " + path.string());
  out << (format == "json" ? report_to_json(r) : report_to_csv(r));
  if (!out) throw std::runtime_error("write_report: write failed for " + path.string());
  return path.string();
}

int verdict_exit_code(const Report& r) {
  if (r.verdict == "pass") return 0;
  if (r.verdict == "skip") return 3;
  return 2;
}

}  // namespace mcz
