#include "morse_levels/scenario/runner.hpp"

#include <CLI11.hpp>

#include <chrono>
#include <filesystem>
#include <fstream>
#include <iostream>

using namespace morse_levels;

namespace {

constexpr int kOk = 0, kValidation = 2, kInternal = 3;

void write_file(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ValidationError("cannot write '" + path.string() + "'");
  out << text;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Homology of level sets across critical values"};
  app.require_subcommand(1);
  app.set_version_flag("--version", MORSE_LEVELS_VERSION);

  std::string config_path, out_dir, example;
  std::vector<std::string> coeffs;
  bool csv = false, timings = false;

  auto add_common = [&](CLI::App* sub, bool config_required) {
    auto* opt = sub->add_option("--config", config_path, "scenario file (JSON)");
    if (config_required) opt->required();
    sub->add_option("--coeff", coeffs, "coefficients: Q, Fp:<p>, Z, Zk:<k> (repeatable)");
    sub->add_option("--out", out_dir, "directory for the report and tables");
    sub->add_flag("--csv", csv, "also write CSV sweep tables");
    sub->add_flag("--timings", timings, "record wall-clock timings in the report");
  };
  auto* sweep_cmd = app.add_subcommand("sweep", "homology of level or sublevel sets across levels");
  auto* verdict_cmd = app.add_subcommand("verdict", "rule verdicts for critical level passes");
  auto* conf_cmd = app.add_subcommand("conformance", "check sweep jumps against the delta rule");
  auto* example_cmd = app.add_subcommand("example", "built-in worked examples");
  add_common(sweep_cmd, true);
  add_common(verdict_cmd, true);
  add_common(conf_cmd, true);
  add_common(example_cmd, false);
  example_cmd->add_option("name", example, "example name")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kValidation;
  }

  try {
    const auto start = std::chrono::steady_clock::now();
    RunOutput run;
    std::string report_name = "report.json";
    if (example_cmd->parsed()) {
      run = run_example(example);
    } else {
      auto cfg = load_config(config_path);
      if (!coeffs.empty()) {
        cfg.coefficients.clear();
        for (const auto& c : coeffs) cfg.coefficients.push_back(parse_coefficient(c));
      }
      report_name = cfg.report_name;
      if (sweep_cmd->parsed()) run = run_sweep(cfg);
      if (verdict_cmd->parsed()) run = run_verdict(cfg);
      if (conf_cmd->parsed()) run = run_conformance(cfg);
    }
    if (timings)
      run.report["timings"] = {
          {"total_ms", std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count()}};

    const std::string text = run.report.dump(2) + "\n";
    if (out_dir.empty()) {
      if (csv && !run.tables.empty())
        for (const auto& [name, body] : run.tables) std::cout << "# " << name << "\n" << body;
      else
        std::cout << text;
    } else {
      std::filesystem::create_directories(out_dir);
      write_file(std::filesystem::path(out_dir) / report_name, text);
      if (csv)
        for (const auto& [name, body] : run.tables) write_file(std::filesystem::path(out_dir) / name, body);
    }
    return kOk;
  } catch (const ValidationError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kValidation;
  } catch (const nlohmann::json::exception& e) {
    std::cerr << "error: malformed config: " << e.what() << "\n";
    return kValidation;
  } catch (const InvariantViolation& e) {
    std::cerr << "internal invariant violated: " << e.what() << "\n";
    return kInternal;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return kInternal;
  }
}
