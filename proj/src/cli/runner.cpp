#include "gmetric/cli/runner.hpp"

#include <cstdlib>
#include <ostream>
#include <utility>
#include <vector>

#include "gmetric/axioms.hpp"
#include "gmetric/contraction.hpp"
#include "gmetric/error.hpp"
#include "gmetric/fixpoint.hpp"
#include "gmetric/integral_eq.hpp"
#include "gmetric/io.hpp"

namespace gmetric::cli {

namespace fs = std::filesystem;
using io::json;

namespace {

/// Files collected during a command and written together at the end.
class Artifacts {
public:
    explicit Artifacts(OutputFormat format) : format_(format) {}

    void add_text(std::string name, std::string text) { files_.emplace_back(std::move(name), std::move(text)); }

    /// `stem.json`, or `stem.csv` with one `key,value` row per flattened leaf.
    void add_report(const std::string& stem, const json& j)
    {
        if (format_ == OutputFormat::Json) {
            add_text(stem + ".json", io::dump(j));
            return;
        }
        std::string csv = "key,value\n";
        const json flat = j.flatten();
        for (const auto& [key, value] : flat.items()) {
            csv += key;
            csv += ',';
            if (value.is_number_float()) {
                csv += io::format_number(value.get<double>());
            } else if (value.is_string()) {
                csv += value.get<std::string>();
            } else if (value.is_null()) {
                csv += "nan";
            } else {
                csv += value.dump();
            }
            csv += '\n';
        }
        add_text(stem + ".csv", std::move(csv));
    }

    void write(const fs::path& dir, std::ostream& out) const
    {
        for (const auto& [name, text] : files_) {
            io::write_text_file(dir / name, text);
            out << "wrote " << (dir / name).string() << '\n';
        }
    }

private:
    OutputFormat format_;
    std::vector<std::pair<std::string, std::string>> files_;
};

GridFunction start_of(const RunConfig& cfg)
{
    return GridFunction::constant(cfg.problem->omega_len(), cfg.problem->n(), cfg.x0);
}

int run_solve(const RunConfig& cfg, Artifacts& art, std::ostream& out, bool with_trace)
{
    const Operator op = discretize(*cfg.problem);
    try {
        const FixedPointResult res = picard_iterate(op, start_of(cfg), cfg.solver);
        art.add_text("solution.csv", io::grid_to_csv(res.x_star));
        art.add_report("summary", io::summary_json(res, cfg.solver));
        if (with_trace) art.add_text("trace.csv", io::trace_to_csv(res.trace));
        out << to_string(cfg.command) << ": " << to_string(res.trace.stop_reason) << " after "
            << res.trace.iterations() << " iterations, residual " << io::format_number(res.residual) << '\n';
        return res.trace.stop_reason == StopReason::Converged ? kExitOk : kExitViolations;
    } catch (const DivergenceError& e) {
        const IterationTrace& tr = e.trace();
        art.add_text("trace.csv", io::trace_to_csv(tr));
        if (!tr.iterates.empty()) art.add_text("solution.csv", io::grid_to_csv(tr.iterates.back()));
        art.add_report("summary", json{{"stop_reason", "Diverged"},
                                       {"iterations", tr.iterations()},
                                       {"residual", nullptr},
                                       {"lambda", cfg.solver.lambda},
                                       {"epsilon", cfg.solver.epsilon},
                                       {"error", e.what()}});
        out << to_string(cfg.command) << ": diverged: " << e.what() << '\n';
        return kExitViolations;
    }
}

json sampler_json(const SamplerConfig& s)
{
    return json{{"n", s.n}, {"omega", s.omega_len}, {"amplitude", s.amplitude}, {"lambda_max", s.lambda_max}};
}

int run_certify(const RunConfig& cfg, Artifacts& art, std::ostream& out)
{
    ContractionConfig cc;
    cc.kappas.clear();
    for (const auto& tag : cfg.certify.kappas) cc.kappas.push_back(GeraghtyFunction::parse(tag));
    cc.psi = cfg.solver.psi;
    cc.nu = parse_nu(cfg.certify.nu);
    cc.lambda = cfg.certify.lambda;
    cc.power_m = cfg.certify.m;
    cc.validate();

    const GridSampler sampler(cfg.sampler);
    const CertificateReport rep =
        certify(cc, make_map(cfg), sampler, cfg.certify.samples, cfg.certify.variant, cfg.certify.tolerance);
    const CoefficientCondition cond = coefficient_condition(cc, cfg.certify.variant);

    json j = io::to_json(rep);
    j["seed"] = cfg.seed;
    j["map"] = cfg.certify.map;
    j["kappas"] = cfg.certify.kappas;
    j["nu"] = cfg.certify.nu;
    j["lambda"] = cfg.certify.lambda;
    j["psi"] = cfg.solver.psi.tag();
    j["sampler"] = sampler_json(cfg.sampler);
    j["coefficient_condition"] =
        json{{"holds", cond.holds}, {"value", cond.value}, {"reaches_one", cond.reaches_one}};
    art.add_report("certificate", j);

    out << "certify: " << rep.samples << " samples, " << rep.violations.size() << " violations, min_slack "
        << io::format_number(rep.min_slack) << '\n';
    return rep.ok() ? kExitOk : kExitViolations;
}

int run_axioms(const RunConfig& cfg, Artifacts& art, std::ostream& out)
{
    const GridSampler sampler(cfg.sampler);
    const ModularGMetric metric = sup_metric();
    std::vector<AxiomReport> reports = check_axioms(metric, sampler, cfg.axioms.samples, cfg.axioms.tolerance);
    const auto derived = check_derived_inequalities(metric, sampler, cfg.axioms.samples, cfg.axioms.tolerance);
    reports.insert(reports.end(), derived.begin(), derived.end());

    std::size_t violations = 0;
    for (const auto& r : reports) violations += r.violations.size();

    art.add_report("axioms", json{{"seed", cfg.seed},
                                  {"metric", metric.name()},
                                  {"samples", cfg.axioms.samples},
                                  {"tolerance", cfg.axioms.tolerance},
                                  {"sampler", sampler_json(cfg.sampler)},
                                  {"reports", io::to_json(reports)}});
    out << "axioms: " << reports.size() << " checks, " << violations << " violations\n";
    return violations == 0 ? kExitOk : kExitViolations;
}

int run_bound_check(const RunConfig& cfg, Artifacts& art, std::ostream& out)
{
    const IntegralEquationProblem& p1 = *cfg.problem;
    const IntegralEquationProblem& p2 = cfg.second_problem ? *cfg.second_problem : p1;
    const KernelBoundData bound = make_kernel_bound(parse_bound_kernel(cfg.bound.b), p1.omega_len(), p1.rule);
    const double lambda = cfg.bound.lambda;
    const double nu = parse_nu(cfg.bound.nu)(lambda);
    const GridSampler sampler(cfg.sampler);

    const KernelBoundReport rep =
        check_kernel_bound(p1, p2, bound, lambda, nu, sampler, cfg.bound.samples, cfg.bound.tolerance, cfg.bound.terms);

    json chains = json::array();
    bool chains_hold = true;
    for (std::size_t k = 0; k < cfg.bound.chain_samples; ++k) {
        auto rng = sampler.engine_for(k);
        const GridFunction x = sampler.draw(rng);
        const GridFunction y = sampler.draw_distinct(rng, x);
        const ChainReport c =
            cauchy_schwarz_chain_check(p1, p2, bound, x, y, lambda, nu, cfg.bound.tolerance, cfg.bound.terms);
        chains_hold = chains_hold && c.holds;
        json cj = io::to_json(c);
        cj["sample"] = k;
        chains.push_back(std::move(cj));
    }

    json j = io::to_json(rep);
    j["seed"] = cfg.seed;
    j["B"] = cfg.bound.b;
    j["lambda"] = lambda;
    j["nu"] = cfg.bound.nu;
    j["terms"] = cfg.bound.terms;
    j["chain"] = std::move(chains);
    art.add_report("kernel_bound", j);

    out << "bound-check: budget " << io::format_number(rep.budget) << " (limit "
        << io::format_number(rep.budget_limit) << "), " << rep.pointwise.violations.size()
        << " pointwise violations, chain " << (chains_hold ? "holds" : "fails") << '\n';
    return rep.ok() && chains_hold ? kExitOk : kExitViolations;
}

}  // namespace

void apply_overrides(RunConfig& cfg, const Overrides& ov, const std::function<const char*(const char*)>& getenv)
{
    if (ov.out_dir) {
        cfg.output_dir = *ov.out_dir;
    } else if (const char* env = getenv ? getenv(kOutDirEnv) : nullptr; env != nullptr && *env != '\0') {
        cfg.output_dir = env;
    }
    if (ov.seed) cfg.seed = *ov.seed;
    if (ov.format) cfg.format = *ov.format;
    cfg.sampler.seed = cfg.seed;
    validate(cfg);
}

int run(const RunConfig& cfg, std::ostream& out, std::ostream& err)
{
    Artifacts art(cfg.format);
    int status = kExitOk;
    try {
        validate(cfg);
        RunConfig effective = cfg;
        effective.sampler.seed = cfg.seed;
        switch (cfg.command) {
        case Command::Solve: status = run_solve(effective, art, out, false); break;
        case Command::Trace: status = run_solve(effective, art, out, true); break;
        case Command::Certify: status = run_certify(effective, art, out); break;
        case Command::Axioms: status = run_axioms(effective, art, out); break;
        case Command::BoundCheck: status = run_bound_check(effective, art, out); break;
        }
    } catch (const Error& e) {
        err << "error: " << e.what() << '\n';
        return kExitConfig;
    }
    try {
        art.write(cfg.output_dir, out);
    } catch (const Error& e) {
        err << "error: " << e.what() << '\n';
        return kExitConfig;
    }
    return status;
}

int run_from_file(Command command, const fs::path& config_path, const Overrides& ov, std::ostream& out,
                  std::ostream& err)
{
    RunConfig cfg;
    try {
        cfg = parse_config(config_path);
        if (cfg.declared_command && *cfg.declared_command != command) {
            throw ConfigError("config declares command '" + std::string(to_string(cfg.command)) +
                              "' but '" + std::string(to_string(command)) + "' was requested");
        }
        cfg.command = command;
        apply_overrides(cfg, ov, [](const char* name) { return std::getenv(name); });
    } catch (const Error& e) {
        err << "error: " << e.what() << '\n';
        return kExitConfig;
    }
    return run(cfg, out, err);
}

}  // namespace gmetric::cli
