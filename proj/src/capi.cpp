#include "mcz/capi.h"

#include <cstring>
#include <exception>
#include <new>
#include <stdexcept>
#include <string>

#include <json.hpp>

#include "mcz/grid.hpp"
#include "mcz/grid_io.hpp"
#include "mcz/harness.hpp"

using json = nlohmann::json;

struct mcz_grid {
  mcz::GridFunction f;
};

namespace {

thread_local std::string t_last_error;

int set_error(int code, const std::string& message) {
  t_last_error = message;
  return code;
}

char* copy_out(const std::string& s) {
  char* p = static_cast<char*>(::operator new(s.size() + 1, std::nothrow));
  if (!p) return nullptr;
  std::memcpy(p, s.c_str(), s.size() + 1);
  return p;
}

int emit(const std::string& text, char** out) {
  *out = copy_out(text);
  if (!*out) return set_error(MCZ_ERR_INTERNAL, "out of memory");
  return MCZ_OK;
}

// Exceptions cross the C boundary as status codes.
template <class Fn>
int guarded(Fn&& fn) {
  try {
    t_last_error.clear();
    return fn();
  } catch (const std::invalid_argument& e) {
    return set_error(MCZ_ERR_ARGUMENT, e.what());
  } catch (const json::exception& e) {
    return set_error(MCZ_ERR_ARGUMENT, e.what());
  } catch (const std::runtime_error& e) {
    return set_error(MCZ_ERR_IO, e.what());
  } catch (const std::exception& e) {
    return set_error(MCZ_ERR_INTERNAL, e.what());
  } catch (...) {
    return set_error(MCZ_ERR_INTERNAL, "unknown error");
  }
}

void parse_config(const char* text, mcz::ExperimentConfig& cfg) {
  if (!text || !*text) return;
  const json j = json::parse(text);
  if (!j.is_object()) throw std::invalid_argument("config must be a JSON object");
  for (const auto& [key, value] : j.items()) {
    if (key == "experiment") {
      const std::string named = value.get<std::string>();
      if (!cfg.experiment.empty() && named != cfg.experiment)
        throw std::invalid_argument("config names a different experiment: " + named);
    } else if (key == "seed") {
      cfg.seed = value.get<std::uint64_t>();
    } else if (key == "levels") {
      cfg.levels = value.get<std::vector<int>>();
    } else if (key == "family_size") {
      cfg.family_size = value.get<int>();
    } else if (key == "halfwidth") {
      cfg.halfwidth = value.get<double>();
    } else if (key == "dilation") {
      cfg.dilation = value.get<double>();
    } else if (key == "drift_tolerance") {
      cfg.drift_tolerance = value.get<double>();
    } else if (key == "tol") {
      cfg.tol = value.get<double>();
    } else if (key == "operator_spec") {
      cfg.operator_spec = value.get<std::string>();
    } else if (key == "b_spec") {
      cfg.b_spec = value.get<std::string>();
    } else if (key == "f_spec") {
      cfg.f_spec = value.get<std::string>();
    } else if (key == "weight_powers") {
      cfg.weight_powers = value.get<std::vector<double>>();
    } else {
      throw std::invalid_argument("unknown config key: " + key);
    }
  }
}

}  // namespace

extern "C" {

const char* mcz_last_error(void) { return t_last_error.c_str(); }

const char* mcz_version(void) { return "0.1.0"; }

void mcz_string_free(char* s) { ::operator delete(s); }

int mcz_experiments_json(char** out) {
  if (!out) return set_error(MCZ_ERR_ARGUMENT, "out is null");
  return guarded([&] {
    json list = json::array();
    for (const mcz::Experiment& e : mcz::experiment_registry())
      list.push_back({{"id", e.id}, {"claim", e.claim}, {"summary", e.summary}});
    return emit(list.dump(1) + "\n", out);
  });
}

int mcz_check(const char* experiment, const char* config_json, const char* format,
              char** out_report) {
  if (!experiment || !out_report) return set_error(MCZ_ERR_ARGUMENT, "null argument");
  return guarded([&]() -> int {
    const std::string fmt = format && *format ? format : "json";
    if (fmt != "json" && fmt != "csv")
      throw std::invalid_argument("format must be json or csv, got: " + fmt);
    mcz::ExperimentConfig cfg;
    cfg.experiment = experiment;
    parse_config(config_json, cfg);
    const mcz::Report rep = mcz::run_experiment(cfg);
    const std::string text = fmt == "csv" ? mcz::report_to_csv(rep) : mcz::report_to_json(rep);
    const int status = emit(text, out_report);
    if (status != MCZ_OK) return status;
    return mcz::verdict_exit_code(rep);
  });
}

int mcz_corpus_json(const char* kind, uint64_t seed, int count, char** out) {
  if (!kind || !out) return set_error(MCZ_ERR_ARGUMENT, "null argument");
  return guarded([&] {
    json list = json::array();
    for (const mcz::CorpusItem& item : mcz::generate_corpus(kind, seed, count))
      list.push_back({{"descriptor", item.descriptor}, {"aux", item.aux}});
    return emit(list.dump(1) + "\n", out);
  });
}

int mcz_grid_create(int dim, double halfwidth, int levels, mcz_grid** out) {
  if (!out) return set_error(MCZ_ERR_ARGUMENT, "out is null");
  return guarded([&] {
    if (levels < 0 || levels > 24) throw std::invalid_argument("levels out of range");
    mcz_grid* g = new mcz_grid{mcz::GridFunction(mcz::Box(dim, halfwidth), levels)};
    *out = g;
    return MCZ_OK;
  });
}

int mcz_grid_read(const char* path, mcz_grid** out) {
  if (!path || !out) return set_error(MCZ_ERR_ARGUMENT, "null argument");
  return guarded([&] {
    *out = new mcz_grid{mcz::read_grid_file(path)};
    return MCZ_OK;
  });
}

int mcz_grid_write(const mcz_grid* g, const char* path, const char* encoding) {
  if (!g || !path) return set_error(MCZ_ERR_ARGUMENT, "null argument");
  return guarded([&] {
    const std::string enc = encoding && *encoding ? encoding : "csv";
    if (enc != "csv" && enc != "raw")
      throw std::invalid_argument("encoding must be csv or raw, got: " + enc);
    mcz::write_grid_file(g->f, path,
                         enc == "raw" ? mcz::GridEncoding::raw : mcz::GridEncoding::csv);
    return MCZ_OK;
  });
}

int mcz_grid_dim(const mcz_grid* g) {
  if (!g) return set_error(MCZ_ERR_ARGUMENT, "null handle");
  return g->f.dim();
}

int mcz_grid_levels(const mcz_grid* g) {
  if (!g) return set_error(MCZ_ERR_ARGUMENT, "null handle");
  return g->f.levels();
}

size_t mcz_grid_size(const mcz_grid* g) { return g ? g->f.size() : 0; }

int mcz_grid_get(const mcz_grid* g, size_t index, double* out) {
  if (!g || !out) return set_error(MCZ_ERR_ARGUMENT, "null argument");
  if (index >= g->f.size()) return set_error(MCZ_ERR_ARGUMENT, "index out of range");
  *out = g->f[index];
  return MCZ_OK;
}

int mcz_grid_set(mcz_grid* g, size_t index, double value) {
  if (!g) return set_error(MCZ_ERR_ARGUMENT, "null handle");
  if (index >= g->f.size()) return set_error(MCZ_ERR_ARGUMENT, "index out of range");
  g->f[index] = value;
  return MCZ_OK;
}

void mcz_grid_free(mcz_grid* g) { delete g; }

}  // extern "C"
