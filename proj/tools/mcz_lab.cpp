#include <cstdint>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "mcz/capi.h"

namespace {

using json = nlohmann::json;

std::string take(char* s) {
  std::string out = s ? s : "";
  mcz_string_free(s);
  return out;
}

int usage_error(const std::string& message) {
  std::cerr << "mcz-lab: " << message << "\n";
  return 1;
}

int api_error() { return usage_error(mcz_last_error()); }

int run_check(const std::string& id, const std::string& config_path, const std::string& out_path,
              const std::string& format, bool seed_set, std::uint64_t seed,
              const std::vector<int>& levels) {
  json cfg = json::object();
  if (!config_path.empty()) {
    std::ifstream in(config_path);
    if (!in) return usage_error("cannot read config: " + config_path);
    try {
      in >> cfg;
    } catch (const json::exception& e) {
      return usage_error("config " + config_path + ": " + e.what());
    }
    if (!cfg.is_object()) return usage_error("config must be a JSON object");
  }
  if (seed_set) cfg["seed"] = seed;
  if (!levels.empty()) cfg["levels"] = levels;
  char* raw = nullptr;
  const int status = mcz_check(id.c_str(), cfg.dump().c_str(), format.c_str(), &raw);
  if (status < 0) return api_error();
  const std::string text = take(raw);
  if (out_path.empty()) {
    std::cout << text;
  } else {
    std::ofstream out(out_path);
    out << text;
    if (!out) return usage_error("cannot write report: " + out_path);
    std::cout << id << ": " << (status == MCZ_OK ? "pass" : status == MCZ_SKIP ? "skip" : "fail")
              << " -> " << out_path << "\n";
  }
  return status;
}

int run_list(bool claims) {
  char* raw = nullptr;
  if (mcz_experiments_json(&raw) != MCZ_OK) return api_error();
  const json list = json::parse(take(raw));
  for (const json& e : list) {
    std::cout << e.at("id").get<std::string>() << "  " << e.at("summary").get<std::string>()
              << "\n";
    if (claims) std::cout << "    " << e.at("claim").get<std::string>() << "\n";
  }
  return 0;
}

int run_corpus(const std::string& kind, std::uint64_t seed, int count) {
  char* raw = nullptr;
  if (mcz_corpus_json(kind.c_str(), seed, count, &raw) != MCZ_OK) return api_error();
  std::cout << take(raw);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"desk-scale laboratory for multilinear Calderon-Zygmund bounds"};
  app.require_subcommand(1);

  std::string id, config_path, out_path, format = "json";
  std::uint64_t seed = 0;
  std::vector<int> levels;
  CLI::App* check = app.add_subcommand("check", "run one experiment and emit its report");
  check->add_option("id", id, "experiment id (see `list`)")->required();
  check->add_option("--config", config_path, "JSON config file");
  check->add_option("--out", out_path, "report file path (stdout if omitted)");
  check->add_option("--format", format, "json or csv")->check(CLI::IsMember({"json", "csv"}));
  CLI::Option* seed_opt = check->add_option("--seed", seed, "override the config seed");
  check->add_option("--levels", levels, "override the level list, e.g. 6,7,8")->delimiter(',');

  bool claims = false;
  CLI::App* list = app.add_subcommand("list", "list registered experiments");
  list->add_flag("--claims", claims, "include the claim catalog");

  std::string kind;
  std::uint64_t corpus_seed = 2026;
  int corpus_count = 8;
  CLI::App* corpus = app.add_subcommand("corpus", "print corpus member descriptors");
  corpus->add_option("kind", kind, "corpus kind")->required();
  corpus->add_option("--seed", corpus_seed, "corpus seed");
  corpus->add_option("--count", corpus_count, "number of members");

  CLI11_PARSE(app, argc, argv);

  if (check->parsed())
    return run_check(id, config_path, out_path, format, seed_opt->count() > 0, seed, levels);
  if (list->parsed()) return run_list(claims);
  return run_corpus(kind, corpus_seed, corpus_count);
}
