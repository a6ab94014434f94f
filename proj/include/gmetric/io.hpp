#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"

#include "gmetric/axioms.hpp"
#include "gmetric/contraction.hpp"
#include "gmetric/fixpoint.hpp"
#include "gmetric/geraghty.hpp"
#include "gmetric/grid_function.hpp"
#include "gmetric/integral_eq.hpp"
#include "gmetric/report.hpp"

namespace gmetric::io {

using nlohmann::json;

/// 17 significant digits ("%.17g"); "nan", "inf", "-inf" for non-finite values.
std::string format_number(double v);

/// Header `t,value`, one row per node.
std::string grid_to_csv(const GridFunction& f);

/// Parses `t,value` CSV; node count from the rows, Ω from the caller.
/// Throws ConfigError on malformed rows or a missing header.
GridFunction grid_from_csv(std::string_view text, double omega_len);

/// Columns n, d_n, psi_d_n, ratio. ratio at row n is d_n/d_{n−1}; empty at n = 0 or where undefined.
std::string trace_to_csv(const IterationTrace& trace);

json to_json(const Violation& v);
json to_json(const PropertyReport& r);
json to_json(const AxiomReport& r);
json to_json(const std::vector<AxiomReport>& reports);
json to_json(const CertificateReport& r);
json to_json(const KernelBoundReport& r);
json to_json(const ChainReport& r);

/// {stop_reason, iterations, residual, lambda, epsilon}.
json summary_json(const FixedPointResult& result, const SolverConfig& cfg);

/// Two-space indent plus trailing newline. NaN and infinities serialize as null.
std::string dump(const json& j);

std::string read_text_file(const std::filesystem::path& path);

/// Creates parent directories as needed; throws Error on I/O failure.
void write_text_file(const std::filesystem::path& path, std::string_view text);

}  // namespace gmetric::io
