// Experiment runner: executes named verification suites from a JSON config
// and emits CSV reports plus a JSON summary, or diffs two reports.

#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>

#include "khspace/suites.hpp"

namespace fs = std::filesystem;

namespace {

int run_command(const std::string& config_path, const std::string& out_dir,
                const std::string& suite_override, bool has_seed, std::uint64_t seed_override,
                bool smoke) {
  kh::json raw;
  try {
    std::ifstream is(config_path);
    if (!is) {
      std::cerr << "error: cannot open config " << config_path << "\n";
      return 2;
    }
    raw = kh::json::parse(is);
  } catch (const std::exception& e) {
    std::cerr << "error: config parse failed: " << e.what() << "\n";
    return 2;
  }

  kh::ExperimentConfig cfg;
  try {
    cfg = kh::parse_config(raw);
    if (!suite_override.empty()) cfg.suite = suite_override;
    if (has_seed) cfg.seed = seed_override;
    if (smoke) cfg.smoke = true;
    // re-validate overridden suite name
    kh::json patched = raw;
    patched["suite"] = cfg.suite;
    (void)kh::parse_config(patched);
  } catch (const std::exception& e) {
    std::cerr << "error: invalid config: " << e.what() << "\n";
    return 2;
  }

  kh::SuiteResult result;
  try {
    result = kh::run_suite(cfg);
  } catch (const std::exception& e) {
    std::cerr << "error: suite execution failed: " << e.what() << "\n";
    return 2;
  }

  fs::create_directories(out_dir);
  const fs::path csv_path = fs::path(out_dir) / (cfg.suite + "_report.csv");
  const fs::path json_path = fs::path(out_dir) / (cfg.suite + "_summary.json");
  {
    std::ofstream os(csv_path);
    os << kh::rows_to_csv(result.rows);
  }
  {
    std::ofstream os(json_path);
    os << kh::summary_json(result, cfg).dump(2) << "\n";
  }

  int failed = 0;
  for (const auto& r : result.rows)
    if (!r.pass) ++failed;
  std::cout << "suite " << cfg.suite << ": " << result.rows.size() << " checks, " << failed
            << " failed -> " << csv_path.string() << "\n";
  return result.all_pass ? 0 : 1;
}

int diff_command(const std::string& old_path, const std::string& new_path, double threshold) {
  auto slurp = [](const std::string& p) {
    std::ifstream is(p);
    if (!is) throw std::runtime_error("cannot open " + p);
    return std::string(std::istreambuf_iterator<char>(is), std::istreambuf_iterator<char>());
  };
  std::vector<kh::ReportRow> older;
  std::vector<kh::ReportRow> newer;
  try {
    older = kh::rows_from_csv(slurp(old_path));
    newer = kh::rows_from_csv(slurp(new_path));
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  auto diff = kh::report_diff(older, newer, threshold);
  for (const auto& d : diff.flagged)
    std::cout << "drift " << d.suite << "/" << d.check_id << ": " << kh::format_double(d.old_ratio)
              << " -> " << kh::format_double(d.new_ratio) << " (" << kh::format_double(d.drift)
              << ")\n";
  std::cout << diff.compared << " rows compared, " << diff.flagged.size() << " drifted\n";
  return diff.flagged.empty() ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Verification suites for weighted Fourier-Lebesgue and amalgam space checks"};
  app.require_subcommand(1);

  std::string config_path;
  std::string out_dir = "reports";
  std::string suite_override;
  std::uint64_t seed_override = 0;
  bool smoke = false;

  auto* run = app.add_subcommand("run", "run a suite from a JSON config");
  run->add_option("--config", config_path, "config JSON path")->required();
  run->add_option("--out", out_dir, "output directory");
  run->add_option("--suite", suite_override, "suite name override");
  auto* seed_opt = run->add_option("--seed", seed_override, "corpus seed override");
  run->add_flag("--smoke", smoke, "cap grids at M=16 for a fast smoke pass");

  std::string old_path;
  std::string new_path;
  double threshold = 0.15;
  auto* diff = app.add_subcommand("diff", "flag ratio drift between two reports");
  diff->add_option("old", old_path, "baseline report CSV")->required();
  diff->add_option("new", new_path, "new report CSV")->required();
  diff->add_option("--threshold", threshold, "relative drift threshold");

  CLI11_PARSE(app, argc, argv);

  if (run->parsed())
    return run_command(config_path, out_dir, suite_override, seed_opt->count() > 0, seed_override,
                       smoke);
  return diff_command(old_path, new_path, threshold);
}
