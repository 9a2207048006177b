#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>

#include <nlohmann/json.hpp>

namespace koopnet::cli {

inline constexpr int kExitPass = 0;
inline constexpr int kExitCheckFailed = 1;
inline constexpr int kExitInputError = 2;

struct Options {
  std::string command;  // verify | decompose | reconstruct | wavelet
  std::filesystem::path config;
  std::optional<std::filesystem::path> out;
  std::optional<std::uint64_t> seed;
  std::optional<double> tol;
};

struct RunResult {
  int exit_code = kExitPass;
  nlohmann::json report;  // null when the config could not be loaded
  std::string diagnostic;
};

/// Loads the config, runs the pipeline and writes the report to the output
/// path (when given). Never throws for input errors; they become exit 2.
RunResult run(const Options& options);

/// Same as run() with an in-memory config; relative paths resolve against `base_dir`.
RunResult run_config(const std::string& command, const nlohmann::json& config,
                     const std::filesystem::path& base_dir, std::optional<std::uint64_t> seed = {},
                     std::optional<double> tol = {});

/// Stable text form of a report (2-space indent, trailing newline).
std::string render(const nlohmann::json& report);

}  // namespace koopnet::cli
