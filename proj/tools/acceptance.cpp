// Runs the eleven acceptance criteria and prints one line per criterion.

#include <hol/suite/acceptance.hpp>

#include <CLI11.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>

int main(int argc, char** argv) {
  using namespace hol;
  CLI::App app{"acceptance criteria"};
  std::string out;
  std::vector<int> only;
  suite::Config cfg;
  app.add_option("--out", out, "write the JSON report here");
  app.add_option("--only", only, "run only these criteria");
  app.add_option("--seed", cfg.seed, "seed for every sampled check");
  CLI11_PARSE(app, argc, argv);

  const auto t0 = std::chrono::steady_clock::now();
  const auto model = rep::build_e7_model();
  suite::Context ctx(model, cfg);
  ctx.build_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  nlohmann::json report = {{"schema_version", 1}, {"seed", cfg.seed}, {"checks", nlohmann::json::array()}};
  bool all = true;
  for (const auto& c : suite::criteria()) {
    if (!only.empty() && std::find(only.begin(), only.end(), c.id) == only.end()) continue;
    auto r = suite::run(c, ctx);
    all = all && r.passed;
    std::printf("criterion %2d: %s  %s (%.1f s)\n", r.id, r.passed ? "PASS" : "FAIL", r.name.c_str(), r.seconds);
    std::fflush(stdout);
    report["checks"].push_back(suite::result_json(r));
  }
  if (!out.empty()) std::ofstream(out) << report.dump(2) << "\n";
  return all ? 0 : 1;
}
