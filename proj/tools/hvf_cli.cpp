// hvf: command-line front end (check, verify-lift, norm, harness).

#include "hvf/commands.hpp"
#include "hvf/errors.hpp"

#include <CLI11.hpp>

#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

namespace fs = std::filesystem;

namespace {

hvf::ParamOverrides parse_params(const std::vector<std::string>& items) {
  hvf::ParamOverrides out;
  for (const auto& item : items) {
    const auto eq = item.find('=');
    if (eq == std::string::npos || eq == 0) throw hvf::ParseError("--param", "expected name=value, got '" + item + "'");
    try {
      std::size_t used = 0;
      const std::string value = item.substr(eq + 1);
      const int v = std::stoi(value, &used);
      if (used != value.size()) throw std::invalid_argument(value);
      out[item.substr(0, eq)] = v;
    } catch (const std::logic_error&) {
      throw hvf::ParseError("--param", "value of '" + item + "' is not an integer");
    }
  }
  return out;
}

void emit(const hvf::CommandResult& result, const std::string& out_path) {
  const std::string text = hvf::dump(result.report);
  if (out_path.empty()) {
    std::cout << text;
    return;
  }
  hvf::write_atomic(out_path, text);
  if (!result.csv.empty()) {
    fs::path csv = out_path;
    csv.replace_extension(".csv");
    hvf::write_atomic(csv, result.csv);
  }
}

const char* status_word(int code) {
  switch (code) {
    case hvf::kExitPass:
      return "pass";
    case hvf::kExitFailure:
      return "FAIL";
    case hvf::kExitSoftFail:
      return "soft-fail (quadrature tolerance)";
    default:
      return "error";
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Homogeneous Hörmander vector fields: certificates, lifts, norms and inequality harnesses"};
  app.require_subcommand(1);

  std::string out_path;
  std::optional<int> max_depth;
  std::optional<int> resolution;
  std::optional<std::uint64_t> seed;
  std::vector<std::string> params;
  bool quiet = false;

  auto add_common = [&](CLI::App* cmd) {
    cmd->add_option("--out", out_path, "Write the JSON report here (atomically) instead of stdout");
    cmd->add_flag("-q,--quiet", quiet, "No summary line on stderr");
  };

  std::string system_path;
  auto* check = app.add_subcommand("check", "Certify the structural hypotheses of a system");
  check->add_option("system", system_path, "System spec (JSON)")->required()->check(CLI::ExistingFile);
  check->add_option("--max-depth", max_depth, "Bracket depth bound (default: largest dilation exponent)")
      ->check(CLI::Range(1, 12));
  check->add_option("--param", params, "Generator parameter override, name=value");
  add_common(check);

  std::string lift_path;
  auto* lift = app.add_subcommand("verify-lift", "Verify a Carnot-group lift exactly");
  lift->add_option("lift", lift_path, "Lift spec (JSON)")->required()->check(CLI::ExistingFile);
  add_common(lift);

  std::string point_text;
  auto* norm = app.add_subcommand("norm", "Homogeneous norm of a point");
  norm->add_option("system", system_path, "System spec (JSON)")->required()->check(CLI::ExistingFile);
  norm->add_option("point", point_text, "Comma-separated coordinates, e.g. 1,1")->required();
  norm->add_option("--param", params, "Generator parameter override, name=value");
  add_common(norm);

  std::string config_path;
  auto* harness = app.add_subcommand("harness", "Estimate inequality constants by quadrature");
  harness->add_option("config", config_path, "Harness config (JSON)")->required()->check(CLI::ExistingFile);
  harness->add_option("--resolution", resolution, "Quadrature nodes per axis")->check(CLI::Range(2, 4096));
  harness->add_option("--seed", seed, "Random seed");
  add_common(harness);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? hvf::kExitPass : hvf::kExitUsage;
  }

  try {
    hvf::CommandResult result;
    if (*check) {
      result = hvf::run_check(system_path, hvf::CheckOptions{max_depth}, parse_params(params));
    } else if (*lift) {
      result = hvf::run_verify_lift(lift_path);
    } else if (*norm) {
      result = hvf::run_norm(system_path, hvf::parse_point(point_text), parse_params(params));
    } else {
      result = hvf::run_harness(config_path, hvf::HarnessOverrides{resolution, seed});
    }
    emit(result, out_path);
    if (!quiet) std::cerr << app.get_subcommands().front()->get_name() << ": " << status_word(result.exit_code) << "\n";
    return result.exit_code;
  } catch (const hvf::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return hvf::kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return hvf::kExitUsage;
  }
}
