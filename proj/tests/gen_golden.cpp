// Regenerates tests/golden/<id>.json at the pinned configs.  Run from the
// repository root (or pass the golden directory as argv[1]) after any change
// that intentionally alters report output, and review the diff.
#include <cstdio>
#include <filesystem>
#include <string>

#include "golden_config.hpp"
#include "mcz/harness.hpp"

int main(int argc, char** argv) {
  const std::string dir = argc > 1 ? argv[1] : "tests/golden";
  std::filesystem::create_directories(dir);
  int failures = 0;
  for (const mcz::Experiment& e : mcz::experiment_registry()) {
    const mcz::Report rep = mcz::run_experiment(golden_config(e.id));
    const std::string path = mcz::write_report(rep, dir, "json");
    std::printf("%-24s %-5s %s\n", e.id.c_str(), rep.verdict.c_str(), path.c_str());
    if (rep.verdict != "pass") ++failures;
  }
  if (failures) std::printf("%d experiment(s) did not pass at the pinned config\n", failures);
  return failures;
}
