#include "gmetric/io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "gmetric/error.hpp"

namespace gmetric::io {

std::string format_number(double v)
{
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::string grid_to_csv(const GridFunction& f)
{
    std::string out = "t,value\n";
    for (std::size_t i = 0; i < f.size(); ++i) {
        out += format_number(f.node(i));
        out += ',';
        out += format_number(f[i]);
        out += '\n';
    }
    return out;
}

GridFunction grid_from_csv(std::string_view text, double omega_len)
{
    std::istringstream in{std::string(text)};
    std::string line;
    if (!std::getline(in, line) || line.rfind("t,value", 0) != 0) {
        throw ConfigError("grid CSV: expected header 't,value'");
    }
    std::vector<double> values;
    std::size_t row = 1;
    while (std::getline(in, line)) {
        ++row;
        if (line.empty() || line == "\r") continue;
        const auto comma = line.find(',');
        if (comma == std::string::npos) {
            throw ConfigError("grid CSV: row " + std::to_string(row) + " has no comma");
        }
        try {
            std::size_t used = 0;
            const std::string field = line.substr(comma + 1);
            values.push_back(std::stod(field, &used));
        } catch (const std::logic_error&) {
            throw ConfigError("grid CSV: row " + std::to_string(row) + " has a malformed value");
        }
    }
    try {
        return GridFunction(omega_len, std::move(values));
    } catch (const DomainError& e) {
        throw ConfigError(std::string("grid CSV: ") + e.what());
    }
}

std::string trace_to_csv(const IterationTrace& trace)
{
    std::string out = "n,d_n,psi_d_n,ratio\n";
    for (std::size_t n = 0; n < trace.d.size(); ++n) {
        out += std::to_string(n);
        out += ',';
        out += format_number(trace.d[n]);
        out += ',';
        out += format_number(trace.psi_d[n]);
        out += ',';
        if (n > 0 && !std::isnan(trace.ratios[n - 1])) out += format_number(trace.ratios[n - 1]);
        out += '\n';
    }
    return out;
}

json to_json(const Violation& v)
{
    return json{{"sample", v.sample}, {"params", v.params}, {"lhs", v.lhs}, {"rhs", v.rhs}, {"gap", v.gap}};
}

namespace {

json violations_json(const std::vector<Violation>& vs)
{
    json arr = json::array();
    for (const auto& v : vs) arr.push_back(to_json(v));
    return arr;
}

}  // namespace

json to_json(const PropertyReport& r)
{
    return json{{"name", r.name},
                {"samples_checked", r.samples_checked},
                {"tolerance", r.tolerance},
                {"ok", r.ok()},
                {"violations", violations_json(r.violations)}};
}

json to_json(const AxiomReport& r)
{
    return json{{"axiom_id", std::string(to_string(r.axiom_id))},
                {"samples_checked", r.samples_checked},
                {"tolerance", r.tolerance},
                {"violations", violations_json(r.violations)}};
}

json to_json(const std::vector<AxiomReport>& reports)
{
    json arr = json::array();
    for (const auto& r : reports) arr.push_back(to_json(r));
    return arr;
}

json to_json(const CertificateReport& r)
{
    return json{{"variant", std::string(to_string(r.variant))},
                {"samples", r.samples},
                {"power_m", r.power_m},
                {"min_slack", r.min_slack},
                {"tolerance", r.tolerance},
                {"ok", r.ok()},
                {"violation_count", r.violations.size()},
                {"violations", violations_json(r.violations)}};
}

json to_json(const KernelBoundReport& r)
{
    return json{{"budget", r.budget},
                {"budget_limit", r.budget_limit},
                {"budget_ok", r.budget_ok},
                {"min_slack", r.min_slack},
                {"ok", r.ok()},
                {"pointwise", to_json(r.pointwise)}};
}

json to_json(const ChainReport& r)
{
    return json{{"w", r.w},
                {"triangle", r.triangle},
                {"kernel_bound", r.kernel_bound},
                {"cauchy_schwarz", r.cauchy_schwarz},
                {"budget_step", r.budget_step},
                {"target", r.target},
                {"triangle_ok", r.triangle_ok},
                {"kernel_bound_ok", r.kernel_bound_ok},
                {"cauchy_schwarz_ok", r.cauchy_schwarz_ok},
                {"budget_ok", r.budget_ok},
                {"final_ok", r.final_ok},
                {"holds", r.holds},
                {"slack", r.slack}};
}

json summary_json(const FixedPointResult& result, const SolverConfig& cfg)
{
    return json{{"stop_reason", std::string(to_string(result.trace.stop_reason))},
                {"iterations", result.trace.iterations()},
                {"residual", result.residual},
                {"lambda", cfg.lambda},
                {"epsilon", cfg.epsilon}};
}

std::string dump(const json& j)
{
    return j.dump(2) + "\n";
}

std::string read_text_file(const std::filesystem::path& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw ConfigError("cannot open '" + path.string() + "'");
    }
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_text_file(const std::filesystem::path& path, std::string_view text)
{
    std::error_code ec;
    if (path.has_parent_path()) {
        std::filesystem::create_directories(path.parent_path(), ec);
        if (ec) throw Error("cannot create '" + path.parent_path().string() + "': " + ec.message());
    }
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw Error("cannot write '" + path.string() + "'");
    out.write(text.data(), static_cast<std::streamsize>(text.size()));
    if (!out) throw Error("write failed for '" + path.string() + "'");
}

}  // namespace gmetric::io
