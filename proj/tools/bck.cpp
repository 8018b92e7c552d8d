#include <cstdlib>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "bck/cli.hpp"

namespace {

using namespace bck;

int analyze(const std::string& config_path, const std::string& out, const std::string& csv,
            unsigned threads) {
  cli::AnalysisConfig cfg;
  try {
    cfg = cli::load_config(config_path);
    if (const char* s = std::getenv("BCK_SEED")) {
      std::size_t used = 0;
      const std::string text(s);
      unsigned long long v = 0;
      try {
        v = std::stoull(text, &used);
      } catch (const std::exception&) {
        used = 0;
      }
      if (text.empty() || used != text.size()) throw ConfigError("BCK_SEED is not an unsigned integer");
      cfg.seed = v;
    }
    if (!out.empty()) cfg.report_path = out;
    if (!csv.empty()) cfg.csv_dir = csv;
    if (threads > 0) cfg.threads = threads;
  } catch (const Error& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return cli::kConfigError;
  }

  cli::AnalysisResult result;
  try {
    result = cli::run_analyze(cfg);
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return cli::kConfigError;
  }
  try {
    cli::write_outputs(cfg, result, cfg.report_path, cfg.csv_dir);
  } catch (const std::exception& e) {
    std::cerr << "cannot write output: " << e.what() << "\n";
    return cli::kConfigError;
  }
  if (cfg.report_path.empty()) std::cout << result.report.dump(2) << "\n";

  for (auto it = result.report["tasks"].begin(); it != result.report["tasks"].end(); ++it) {
    std::cerr << it.key() << ": " << (*it)["status"].get<std::string>() << "\n";
  }
  return result.exit_code;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Chern connections and Griffiths positivity from reproducing kernels"};
  app.require_subcommand(1);

  std::string config_path, out, csv;
  unsigned threads = 0;
  auto* analyze_cmd = app.add_subcommand("analyze", "run the tasks of a JSON config");
  analyze_cmd->add_option("--config", config_path, "config file")->required();
  analyze_cmd->add_option("--out", out, "report path (overrides config)");
  analyze_cmd->add_option("--csv", csv, "directory for per-task CSV fields");
  analyze_cmd->add_option("--threads", threads, "worker threads for grid sweeps");

  std::uint64_t seed = 1;
  auto* selftest_cmd = app.add_subcommand("selftest", "run the differential-form invariant corpus");
  selftest_cmd->add_option("--seed", seed, "corpus seed");

  app.add_subcommand("version", "print the version and report schema");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : bck::cli::kConfigError;
  }

  if (*analyze_cmd) return analyze(config_path, out, csv, threads);
  if (*selftest_cmd) {
    if (const char* s = std::getenv("BCK_SEED")) {
      try {
        seed = std::stoull(s);
      } catch (const std::exception&) {
        std::cerr << "config error: BCK_SEED is not an unsigned integer\n";
        return bck::cli::kConfigError;
      }
    }
    const auto r = bck::cli::run_selftest({seed, false});
    std::cout << bck::cli::to_json(r).dump(2) << "\n";
    return r.all_pass() ? bck::cli::kOk : bck::cli::kVerdictFailure;
  }
  std::cout << "bck " << bck::cli::kVersion << " (schema " << bck::cli::kSchema << ")\n";
  return 0;
}
