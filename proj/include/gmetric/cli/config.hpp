#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "gmetric/contraction.hpp"
#include "gmetric/fixpoint.hpp"
#include "gmetric/integral_eq.hpp"
#include "gmetric/sampling.hpp"

namespace gmetric::cli {

enum class Command { Solve, Certify, Axioms, Trace, BoundCheck };
enum class OutputFormat { Csv, Json };

std::string_view to_string(Command c) noexcept;
std::string_view to_string(OutputFormat f) noexcept;
/// Throws ConfigError for unknown names.
Command parse_command(std::string_view name);
OutputFormat parse_format(std::string_view name);

struct CertifySettings {
    CertificateVariant variant = CertificateVariant::TwoPoint11;
    std::size_t samples = 10000;
    /// κ_1..κ_11 tags; shorter lists in the file are padded with "const:0".
    std::vector<std::string> kappas = std::vector<std::string>(kTermCount, "const:0");
    /// identity | scale:<q> | shift:<c> | constant:<c> | problem
    std::string map = "identity";
    /// zero | fraction:<f> with f in [0, 1)
    std::string nu = "zero";
    unsigned m = 1;
    double lambda = 1.0;
    double tolerance = kDefaultCertificateTolerance;
};

struct AxiomSettings {
    std::size_t samples = 1000;
    double tolerance = 1e-12;
};

struct BoundSettings {
    /// constant:<c> | separable:<c>,<p>,<q> for c·t^p·s^q
    std::string b = "constant:1";
    std::size_t samples = 100;
    double lambda = 1.0;
    std::string nu = "zero";
    double tolerance = 1e-12;
    std::size_t terms = kTermCount;
    /// Pairs passed through the estimate-chain check.
    std::size_t chain_samples = 4;
};

/// Effective configuration of one CLI invocation.
struct RunConfig {
    Command command = Command::Solve;
    /// The `command` key of the file, if present.
    std::optional<Command> declared_command;
    std::filesystem::path config_path;

    std::optional<std::filesystem::path> problem_path;
    std::optional<IntegralEquationProblem> problem;
    /// Second equation for bound-check (H_2, μ_2); defaults to the first.
    std::optional<std::filesystem::path> second_problem_path;
    std::optional<IntegralEquationProblem> second_problem;

    std::uint64_t seed = 0;
    SolverConfig solver;
    std::string psi = "identity";
    /// Constant starting iterate x_0.
    double x0 = 0.0;

    CertifySettings certify;
    AxiomSettings axioms;
    BoundSettings bound;
    /// n and Ω are replaced by the problem grid whenever a problem is loaded.
    SamplerConfig sampler;

    std::filesystem::path output_dir = ".";
    OutputFormat format = OutputFormat::Json;
};

/// Loads a YAML run configuration; relative paths resolve against the file's directory.
///
/// Throws ConfigError for missing files, malformed YAML (with the line number),
/// unknown keys (naming the key) and invalid values.
RunConfig parse_config(const std::filesystem::path& path);

/// Same as parse_config, for an in-memory document whose relative paths resolve against `base_dir`.
RunConfig parse_config_text(std::string_view text, const std::filesystem::path& base_dir);

/// Loads a YAML problem file: kernel.{family, params, nonlinearity}, mu, omega, n, rule.
///
/// mu is a number (constant), a list of n values, {poly: [c0, c1, ...]} or a CSV path.
IntegralEquationProblem load_problem(const std::filesystem::path& path);

/// Cross-field checks that also cover CLI overrides: command needs, grid sizes, ε > 0.
void validate(const RunConfig& cfg);

/// ν map from a config tag: "zero" or "fraction:<f>" meaning ν(λ) = f·λ.
std::function<double(double)> parse_nu(std::string_view tag);

/// Operator from a config tag; "problem" requires cfg.problem.
Operator make_map(const RunConfig& cfg);

/// Bound kernel from a config tag.
std::function<double(double, double)> parse_bound_kernel(std::string_view tag);

}  // namespace gmetric::cli
