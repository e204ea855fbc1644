#include <cstdio>
#include <filesystem>
#include <iostream>
#include <map>

#include "CLI11.hpp"
#include "scenarios.hpp"

namespace {

constexpr int exit_ok = 0;
constexpr int exit_tolerance = 1;
constexpr int exit_config = 2;

void print_criterion(const cli::CriterionResult& r) {
  std::printf("%s C%-2d %-32s %7.2fs\n", r.pass() ? "PASS" : "FAIL", r.id, r.title.c_str(), r.seconds);
  for (const auto& m : r.metrics) {
    std::printf("      %-44s %.3e", m.name.c_str(), m.value);
    if (m.tolerance > 0.0) std::printf("  (tol %.1e)%s", m.tolerance, m.pass ? "" : "  <-- violated");
    std::printf("\n");
  }
  if (!r.error.empty()) std::printf("      error: %s\n", r.error.c_str());
  std::fflush(stdout);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Energy-line discretization experiments"};
  std::string command, config_path, out_dir = ".";
  int threads = 0;
  std::optional<std::uint64_t> seed;
  const std::vector<std::string> commands{"selftest",          "lyapunov-curve", "semigroup-norms",
                                          "projection-family", "matrix-element", "convergence"};
  app.add_option("command", command, "Scenario to run")->required()->check(CLI::IsMember(commands));
  app.add_option("--config", config_path, "JSON experiment config")->required();
  app.add_option("--out", out_dir, "Output directory");
  app.add_option("--threads", threads, "Worker threads (0 = auto)")->check(CLI::NonNegativeNumber);
  app.add_option("--seed", seed, "Override state.seed");
  app.set_version_flag("--version", irrev::version);
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? exit_ok : exit_config;
  }

  cli::Config cfg;
  try {
    cfg = cli::load_config(config_path);
  } catch (const cli::config_error& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return exit_config;
  }
  if (seed) {
    cfg.seed = *seed;
    cfg.source["state"]["seed"] = *seed;
  }

  cli::RunResult result{cli::Table({})};
  try {
    if (command == "selftest") {
      result = cli::selftest_cmd(cfg, print_criterion);
    } else if (command == "lyapunov-curve") {
      result = cli::lyapunov_curve_cmd(cfg);
    } else if (command == "semigroup-norms") {
      result = cli::semigroup_norms_cmd(cfg);
    } else if (command == "projection-family") {
      result = cli::projection_family_cmd(cfg);
    } else if (command == "matrix-element") {
      result = cli::matrix_element_cmd(cfg);
    } else {
      result = cli::convergence_cmd(cfg);
    }
  } catch (const cli::config_error& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return exit_config;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return exit_tolerance;
  }

  // outputs are sequential today; the requested thread count is recorded only
  const cli::json meta{{"command", command},
                       {"version", irrev::version},
                       {"config", cfg.source},
                       {"threads", threads},
                       {"tolerance_violation", result.violation},
                       {"summary", result.summary}};
  const std::filesystem::path dir(out_dir);
  try {
    cli::write_atomic(dir / (command + ".csv"), result.table.str());
    cli::write_atomic(dir / (command + ".json"), meta.dump(2) + "\n");
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return exit_tolerance;
  }
  if (command != "selftest") std::cout << meta["summary"].dump(2) << "\n";
  std::cout << (result.violation ? "tolerance violation" : "ok") << ": " << (dir / (command + ".csv")).string()
            << "\n";
  return result.violation ? exit_tolerance : exit_ok;
}
