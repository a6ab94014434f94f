#pragma once

#include <cstdint>
#include <filesystem>
#include <functional>
#include <iosfwd>
#include <optional>
#include <string>

#include "gmetric/cli/config.hpp"

namespace gmetric::cli {

/// Environment variable that overrides the configured output directory.
inline constexpr const char* kOutDirEnv = "GMETRIC_OUT_DIR";

inline constexpr int kExitOk = 0;
inline constexpr int kExitConfig = 1;
inline constexpr int kExitViolations = 2;

/// Command-line values that take precedence over the config file.
struct Overrides {
    std::optional<std::filesystem::path> out_dir;
    std::optional<std::uint64_t> seed;
    std::optional<OutputFormat> format;
};

/// Output directory precedence: --out, then the environment variable, then the config file.
/// `getenv` is injectable for tests. Re-validates the result.
void apply_overrides(RunConfig& cfg, const Overrides& ov,
                     const std::function<const char*(const char*)>& getenv);

/// Executes one command and writes its artifacts into cfg.output_dir.
///
/// Returns 0 when nothing failed, 2 on violations or divergence (artifacts still written),
/// 1 on configuration errors (nothing written). Messages go to `out` and `err`.
int run(const RunConfig& cfg, std::ostream& out, std::ostream& err);

/// parse_config + overrides + run, mapping every configuration failure to status 1.
int run_from_file(Command command, const std::filesystem::path& config_path, const Overrides& ov, std::ostream& out,
                  std::ostream& err);

}  // namespace gmetric::cli
