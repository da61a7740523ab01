// Exercises the shared-library C surface end to end: registry and corpus
// dumps, experiment runs with inline JSON configs, error reporting, and the
// opaque grid handles.  Nothing here links the C++ core directly.
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <cstring>
#include <filesystem>
#include <string>

#include <json.hpp>

#include "mcz/capi.h"

using nlohmann::json;

namespace {

// Wraps an out-string so every path frees it.
struct OutString {
  char* p = nullptr;
  ~OutString() { mcz_string_free(p); }
  std::string str() const { return p ? std::string(p) : std::string(); }
};

std::string temp_path(const char* name) {
  return (std::filesystem::temp_directory_path() / name).string();
}

}  // namespace

TEST_CASE("version and error channel") {
  REQUIRE(mcz_version() != nullptr);
  CHECK(std::strlen(mcz_version()) > 0);
  mcz_string_free(nullptr);  // must be a no-op
  mcz_grid_free(nullptr);
}

TEST_CASE("experiments are listed as JSON") {
  OutString out;
  REQUIRE(mcz_experiments_json(&out.p) == MCZ_OK);
  const json list = json::parse(out.str());
  REQUIRE(list.is_array());
  CHECK(list.size() == 17);
  bool saw_maximal = false, saw_symbol = false;
  for (const auto& e : list) {
    CHECK(e.contains("id"));
    CHECK(e.contains("claim"));
    CHECK(e.contains("summary"));
    if (e["id"] == "maximal-chain") saw_maximal = true;
    if (e["id"] == "symbol-class") saw_symbol = true;
  }
  CHECK(saw_maximal);
  CHECK(saw_symbol);
  CHECK(mcz_experiments_json(nullptr) == MCZ_ERR_ARGUMENT);
}

TEST_CASE("corpus dump") {
  OutString out;
  REQUIRE(mcz_corpus_json("step-functions", 3, 4, &out.p) == MCZ_OK);
  const json list = json::parse(out.str());
  REQUIRE(list.is_array());
  REQUIRE(list.size() == 4);
  for (const auto& item : list) {
    CHECK(!item["descriptor"].get<std::string>().empty());
    CHECK(item["aux"].is_number());
  }

  OutString bad;
  CHECK(mcz_corpus_json("no-such-kind", 3, 4, &bad.p) == MCZ_ERR_ARGUMENT);
  CHECK(std::string(mcz_last_error()).find("unknown kind") != std::string::npos);
  CHECK(mcz_corpus_json(nullptr, 3, 4, &bad.p) == MCZ_ERR_ARGUMENT);
}

TEST_CASE("check runs an experiment and renders the verdict") {
  OutString out;
  const int rc =
      mcz_check("kolmogorov", R"({"levels":[5],"family_size":4})", "json", &out.p);
  REQUIRE(rc == MCZ_OK);
  const json rep = json::parse(out.str());
  CHECK(rep["experiment"] == "kolmogorov");
  CHECK(rep["verdict"] == "pass");
  CHECK(rep["schema"] == 1);
  CHECK(rep["seed"] == 2026);
  CHECK(!rep["records"].empty());

  // A config may name its own experiment as long as it matches.
  OutString named;
  CHECK(mcz_check("kolmogorov", R"({"experiment":"kolmogorov","levels":[5]})", "json",
                  &named.p) == MCZ_OK);

  // Same seed, same bytes.
  OutString again;
  REQUIRE(mcz_check("kolmogorov", R"({"levels":[5],"family_size":4})", "json", &again.p) ==
          MCZ_OK);
  CHECK(out.str() == again.str());

  // NULL config runs the defaults; CSV flattens the aggregates.
  OutString csv;
  REQUIRE(mcz_check("varlex-identities", R"({"levels":[5],"family_size":2})", "csv",
                    &csv.p) == MCZ_OK);
  CHECK(csv.str().rfind("experiment,level,records,max_ratio,min_ratio,pass_fraction,drift,"
                        "verdict",
                        0) == 0);
}

TEST_CASE("check surfaces failing and skipped verdicts but still reports") {
  OutString fail;
  const int rc = mcz_check(
      "thm-strong-para",
      R"({"levels":[5,6],"family_size":3,"drift_tolerance":0.0})", "json", &fail.p);
  CHECK(rc == MCZ_FAIL);
  const json rep = json::parse(fail.str());
  CHECK(rep["verdict"] == "fail");
  CHECK(!rep["failures"].empty());

  OutString skip;
  CHECK(mcz_check("thm-weak-para",
                  R"({"levels":[5],"family_size":2,"weight_powers":[0.4]})", "json",
                  &skip.p) == MCZ_SKIP);
  CHECK(json::parse(skip.str())["verdict"] == "skip");
}

TEST_CASE("check rejects bad arguments") {
  OutString out;
  CHECK(mcz_check("no-such-experiment", nullptr, "json", &out.p) == MCZ_ERR_ARGUMENT);
  CHECK(std::string(mcz_last_error()).find("unknown experiment") != std::string::npos);

  CHECK(mcz_check("kolmogorov", "{not json", "json", &out.p) == MCZ_ERR_ARGUMENT);
  CHECK(mcz_check("kolmogorov", R"({"frobnicate":1})", "json", &out.p) == MCZ_ERR_ARGUMENT);
  CHECK(std::string(mcz_last_error()).find("unknown config key") != std::string::npos);
  CHECK(mcz_check("kolmogorov", R"({"experiment":"maximal-chain"})", "json", &out.p) ==
        MCZ_ERR_ARGUMENT);
  CHECK(mcz_check("kolmogorov", nullptr, "yaml", &out.p) == MCZ_ERR_ARGUMENT);
  CHECK(mcz_check(nullptr, nullptr, "json", &out.p) == MCZ_ERR_ARGUMENT);
  CHECK(mcz_check("kolmogorov", nullptr, "json", nullptr) == MCZ_ERR_ARGUMENT);
}

TEST_CASE("grid handles: lifecycle, access, and file round trip") {
  mcz_grid* g = nullptr;
  REQUIRE(mcz_grid_create(1, 1.0, 3, &g) == MCZ_OK);
  REQUIRE(g != nullptr);
  CHECK(mcz_grid_dim(g) == 1);
  CHECK(mcz_grid_levels(g) == 3);
  REQUIRE(mcz_grid_size(g) == 8);

  for (size_t i = 0; i < 8; ++i)
    REQUIRE(mcz_grid_set(g, i, 0.5 * static_cast<double>(i) - 1.75) == MCZ_OK);
  REQUIRE(mcz_grid_set(g, 3, 1e-321) == MCZ_OK);  // subnormals survive the round trip
  double v = 0.0;
  REQUIRE(mcz_grid_get(g, 5, &v) == MCZ_OK);
  CHECK(v == 0.75);

  const std::string csv = temp_path("mcz_capi_grid.csv");
  const std::string raw = temp_path("mcz_capi_grid.raw");
  REQUIRE(mcz_grid_write(g, csv.c_str(), "csv") == MCZ_OK);
  REQUIRE(mcz_grid_write(g, raw.c_str(), "raw") == MCZ_OK);

  for (const std::string& path : {csv, raw}) {
    mcz_grid* back = nullptr;
    REQUIRE(mcz_grid_read(path.c_str(), &back) == MCZ_OK);
    CHECK(mcz_grid_dim(back) == 1);
    CHECK(mcz_grid_levels(back) == 3);
    REQUIRE(mcz_grid_size(back) == 8);
    for (size_t i = 0; i < 8; ++i) {
      double a = 0.0, b = 0.0;
      REQUIRE(mcz_grid_get(g, i, &a) == MCZ_OK);
      REQUIRE(mcz_grid_get(back, i, &b) == MCZ_OK);
      CHECK(a == b);
    }
    mcz_grid_free(back);
  }
  std::filesystem::remove(csv);
  std::filesystem::remove(raw);
  mcz_grid_free(g);
}

TEST_CASE("grid handles: argument validation") {
  mcz_grid* g = nullptr;
  CHECK(mcz_grid_create(3, 1.0, 4, &g) == MCZ_ERR_ARGUMENT);
  CHECK(mcz_grid_create(1, 1.0, 25, &g) == MCZ_ERR_ARGUMENT);
  CHECK(mcz_grid_create(1, 1.0, -1, &g) == MCZ_ERR_ARGUMENT);
  CHECK(mcz_grid_create(1, 0.0, 4, &g) == MCZ_ERR_ARGUMENT);
  CHECK(mcz_grid_create(1, 1.0, 4, nullptr) == MCZ_ERR_ARGUMENT);

  CHECK(mcz_grid_read(temp_path("mcz_no_such_file.csv").c_str(), &g) == MCZ_ERR_IO);
  CHECK(mcz_grid_read(nullptr, &g) == MCZ_ERR_ARGUMENT);

  REQUIRE(mcz_grid_create(1, 1.0, 2, &g) == MCZ_OK);
  CHECK(mcz_grid_write(g, temp_path("mcz_capi_bad.enc").c_str(), "xml") ==
        MCZ_ERR_ARGUMENT);
  double v = 0.0;
  CHECK(mcz_grid_get(g, 99, &v) == MCZ_ERR_ARGUMENT);
  CHECK(mcz_grid_set(g, 99, 1.0) == MCZ_ERR_ARGUMENT);
  CHECK(mcz_grid_get(g, 0, nullptr) == MCZ_ERR_ARGUMENT);
  mcz_grid_free(g);

  CHECK(mcz_grid_dim(nullptr) < 0);
  CHECK(mcz_grid_levels(nullptr) < 0);
  CHECK(mcz_grid_size(nullptr) == 0);
  CHECK(mcz_grid_get(nullptr, 0, &v) == MCZ_ERR_ARGUMENT);
  CHECK(mcz_grid_set(nullptr, 0, 1.0) == MCZ_ERR_ARGUMENT);
  CHECK(mcz_grid_write(nullptr, "x", "csv") == MCZ_ERR_ARGUMENT);
}
