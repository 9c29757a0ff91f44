#pragma once

#include "hvf/io.hpp"

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

namespace hvf {

enum ExitCode : int {
  kExitPass = 0,
  kExitUsage = 1,
  kExitFailure = 2,
  kExitSoftFail = 3,
};

/// A finished command: the JSON report, its exit code and (for harness runs) a CSV table.
struct CommandResult {
  Json report;
  int exit_code = kExitPass;
  std::string csv;
};

struct CheckOptions {
  std::optional<int> max_depth;  // default σ_n
  int homogeneity_length = 5;    // brackets checked against the scaling identity
};

/// Structural hypotheses, minimal bracket depth, bracket homogeneity and divergence.
CommandResult run_check(const VectorFieldSystem& sys, const CheckOptions& options, const Json& source = nullptr);
CommandResult run_check(const std::filesystem::path& system, const CheckOptions& options,
                        const ParamOverrides& params = {});

/// Group axioms plus the five lift items.
CommandResult run_verify_lift(const CarnotGroupSpec& spec, const Json& source = nullptr);
CommandResult run_verify_lift(const std::filesystem::path& lift);

CommandResult run_norm(const VectorFieldSystem& sys, std::span<const double> point, const Json& source = nullptr);
CommandResult run_norm(const std::filesystem::path& system, std::span<const double> point,
                       const ParamOverrides& params = {});

struct HarnessOverrides {
  std::optional<int> resolution;
  std::optional<std::uint64_t> seed;
};

/// Runs the sections listed under "run" (interpolation, apriori, sandwich, cutoffs).
CommandResult run_harness(const Json& config, const std::filesystem::path& base_dir,
                          const HarnessOverrides& overrides = {});
CommandResult run_harness(const std::filesystem::path& config, const HarnessOverrides& overrides = {});

/// Comma-separated decimals, e.g. "1,0.5".
std::vector<double> parse_point(const std::string& text);

}  // namespace hvf
