#include "gmetric/cli/config.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <initializer_list>
#include <string>

#include <yaml-cpp/yaml.h>

#include "gmetric/error.hpp"
#include "gmetric/geraghty.hpp"
#include "gmetric/io.hpp"
#include "gmetric/quadrature.hpp"

namespace gmetric::cli {

namespace fs = std::filesystem;

namespace {

/// Prefixes messages with "<source>:<line>: ".
class Context {
public:
    explicit Context(std::string source) : source_(std::move(source)) {}

    [[noreturn]] void fail(const YAML::Node& node, const std::string& msg) const
    {
        const auto mark = node.Mark();
        if (mark.is_null()) throw ConfigError(source_ + ": " + msg);
        throw ConfigError(source_ + ":" + std::to_string(mark.line + 1) + ": " + msg);
    }

    void check_keys(const YAML::Node& node, std::initializer_list<std::string_view> allowed,
                    const std::string& section) const
    {
        if (!node.IsMap()) fail(node, section.empty() ? "expected a mapping" : "'" + section + "' must be a mapping");
        for (const auto& kv : node) {
            const auto key = kv.first.as<std::string>();
            if (std::find(allowed.begin(), allowed.end(), key) == allowed.end()) {
                const std::string full = section.empty() ? key : section + "." + key;
                fail(kv.first, "unknown key '" + full + "'");
            }
        }
    }

    template <class T>
    T get(const YAML::Node& node, const std::string& name) const
    {
        if (!node.IsScalar()) fail(node, "'" + name + "' must be a scalar");
        try {
            return node.as<T>();
        } catch (const YAML::Exception&) {
            fail(node, "'" + name + "' has an invalid value '" + node.Scalar() + "'");
        }
    }

    std::uint64_t get_u64(const YAML::Node& node, const std::string& name) const
    {
        if (node.IsScalar() && node.Scalar().find('-') != std::string::npos) {
            fail(node, "'" + name + "' must be a non-negative integer");
        }
        return get<std::uint64_t>(node, name);
    }

    std::size_t get_count(const YAML::Node& node, const std::string& name) const
    {
        return static_cast<std::size_t>(get_u64(node, name));
    }

private:
    std::string source_;
};

double parse_number(std::string_view text, std::string_view what)
{
    double v = 0.0;
    const auto* end = text.data() + text.size();
    const auto [ptr, ec] = std::from_chars(text.data(), end, v);
    if (ec != std::errc() || ptr != end || !std::isfinite(v)) {
        throw ConfigError(std::string(what) + ": invalid number '" + std::string(text) + "'");
    }
    return v;
}

/// Splits "name:arg" into name and arg (arg empty if there is no colon).
std::pair<std::string_view, std::string_view> split_tag(std::string_view tag)
{
    const auto colon = tag.find(':');
    if (colon == std::string_view::npos) return {tag, {}};
    return {tag.substr(0, colon), tag.substr(colon + 1)};
}

fs::path resolve(const fs::path& base, const std::string& p)
{
    fs::path path(p);
    return path.is_absolute() ? path : base / path;
}

GridFunction parse_mu(const Context& ctx, const YAML::Node& node, double omega, std::size_t n, const fs::path& base)
{
    if (node.IsScalar()) {
        const std::string text = node.Scalar();
        double c = 0.0;
        const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), c);
        if (ec == std::errc() && ptr == text.data() + text.size()) {
            return GridFunction::constant(omega, n, c);
        }
        const fs::path file = resolve(base, text);
        if (!fs::exists(file)) ctx.fail(node, "mu file '" + file.string() + "' does not exist");
        GridFunction g = io::grid_from_csv(io::read_text_file(file), omega);
        if (g.size() != n) ctx.fail(node, "mu file has " + std::to_string(g.size()) + " rows, expected n");
        return g;
    }
    if (node.IsSequence()) {
        std::vector<double> v;
        for (const auto& e : node) v.push_back(ctx.get<double>(e, "mu"));
        if (v.size() != n) ctx.fail(node, "mu has " + std::to_string(v.size()) + " values, expected n");
        return GridFunction(omega, std::move(v));
    }
    ctx.check_keys(node, {"poly"}, "mu");
    if (!node["poly"].IsSequence()) ctx.fail(node, "'mu.poly' must be a list");
    std::vector<double> coef;
    for (const auto& e : node["poly"]) coef.push_back(ctx.get<double>(e, "mu.poly"));
    return GridFunction::sample(omega, n, [&coef](double t) {
        double acc = 0.0;
        for (auto it = coef.rbegin(); it != coef.rend(); ++it) acc = acc * t + *it;
        return acc;
    });
}

IntegralEquationProblem parse_problem(const YAML::Node& root, const Context& ctx, const fs::path& base)
{
    ctx.check_keys(root, {"kernel", "mu", "omega", "n", "rule"}, "");
    for (const char* key : {"kernel", "mu", "omega", "n"}) {
        if (!root[key]) ctx.fail(root, std::string("missing required key '") + key + "'");
    }
    const YAML::Node k = root["kernel"];
    ctx.check_keys(k, {"family", "params", "nonlinearity"}, "kernel");
    if (!k["family"]) ctx.fail(k, "missing required key 'kernel.family'");
    KernelSpec spec;
    spec.family = ctx.get<std::string>(k["family"], "kernel.family");
    if (k["params"]) {
        if (!k["params"].IsSequence()) ctx.fail(k["params"], "'kernel.params' must be a list");
        for (const auto& e : k["params"]) spec.params.push_back(ctx.get<double>(e, "kernel.params"));
    }
    if (k["nonlinearity"]) spec.nonlinearity = ctx.get<std::string>(k["nonlinearity"], "kernel.nonlinearity");

    const double omega = ctx.get<double>(root["omega"], "omega");
    if (!(omega > 0.0) || !std::isfinite(omega)) ctx.fail(root["omega"], "omega must be positive");
    const std::size_t n = ctx.get_count(root["n"], "n");
    if (n < 2) ctx.fail(root["n"], "n must be at least 2");

    GridFunction mu = parse_mu(ctx, root["mu"], omega, n, base);
    try {
        Kernel kernel = make_kernel(spec);
        QuadratureRule rule = root["rule"]
                                  ? make_rule(parse_quadrature(ctx.get<std::string>(root["rule"], "rule")), omega, n)
                                  : default_rule(omega, n);
        return IntegralEquationProblem{std::move(kernel), std::move(mu), std::move(rule)};
    } catch (const ConfigError& e) {
        ctx.fail(root, e.what());
    }
}

YAML::Node load_yaml(std::string_view text, const std::string& source)
{
    try {
        return YAML::Load(std::string(text));
    } catch (const YAML::ParserException& e) {
        throw ConfigError(source + ":" + std::to_string(e.mark.line + 1) + ": malformed YAML: " + e.msg);
    }
}

void parse_solver(const Context& ctx, const YAML::Node& node, RunConfig& cfg)
{
    ctx.check_keys(node, {"lambda", "epsilon", "max_iter", "psi", "x0", "track_chain", "retain_every"}, "solver");
    if (node["lambda"]) cfg.solver.lambda = ctx.get<double>(node["lambda"], "solver.lambda");
    if (node["epsilon"]) cfg.solver.epsilon = ctx.get<double>(node["epsilon"], "solver.epsilon");
    if (node["max_iter"]) cfg.solver.max_iter = ctx.get_count(node["max_iter"], "solver.max_iter");
    if (node["psi"]) cfg.psi = ctx.get<std::string>(node["psi"], "solver.psi");
    if (node["x0"]) cfg.x0 = ctx.get<double>(node["x0"], "solver.x0");
    if (node["track_chain"]) cfg.solver.track_chain = ctx.get<bool>(node["track_chain"], "solver.track_chain");
    if (node["retain_every"]) cfg.solver.retain_every = ctx.get_count(node["retain_every"], "solver.retain_every");
}

void parse_certify(const Context& ctx, const YAML::Node& node, RunConfig& cfg)
{
    ctx.check_keys(node, {"variant", "samples", "kappas", "map", "nu", "m", "lambda", "tolerance"}, "certify");
    auto& c = cfg.certify;
    if (node["variant"]) {
        try {
            c.variant = parse_variant(ctx.get<std::string>(node["variant"], "certify.variant"));
        } catch (const ConfigError& e) {
            ctx.fail(node["variant"], e.what());
        }
    }
    if (node["samples"]) c.samples = ctx.get_count(node["samples"], "certify.samples");
    if (node["kappas"]) {
        const YAML::Node k = node["kappas"];
        if (!k.IsSequence() || k.size() > kTermCount) ctx.fail(k, "'certify.kappas' must be a list of at most 11 tags");
        for (std::size_t i = 0; i < k.size(); ++i) c.kappas[i] = ctx.get<std::string>(k[i], "certify.kappas");
    }
    if (node["map"]) c.map = ctx.get<std::string>(node["map"], "certify.map");
    if (node["nu"]) c.nu = ctx.get<std::string>(node["nu"], "certify.nu");
    if (node["m"]) {
        const auto m = ctx.get_u64(node["m"], "certify.m");
        if (m < 1 || m > 64) ctx.fail(node["m"], "'certify.m' must lie in 1..64");
        c.m = static_cast<unsigned>(m);
    }
    if (node["lambda"]) c.lambda = ctx.get<double>(node["lambda"], "certify.lambda");
    if (node["tolerance"]) c.tolerance = ctx.get<double>(node["tolerance"], "certify.tolerance");
}

void parse_axioms(const Context& ctx, const YAML::Node& node, RunConfig& cfg)
{
    ctx.check_keys(node, {"samples", "tolerance"}, "axioms");
    if (node["samples"]) cfg.axioms.samples = ctx.get_count(node["samples"], "axioms.samples");
    if (node["tolerance"]) cfg.axioms.tolerance = ctx.get<double>(node["tolerance"], "axioms.tolerance");
}

void parse_bound(const Context& ctx, const YAML::Node& node, RunConfig& cfg)
{
    ctx.check_keys(node, {"B", "samples", "lambda", "nu", "tolerance", "terms", "chain_samples"}, "bound");
    auto& b = cfg.bound;
    if (node["B"]) b.b = ctx.get<std::string>(node["B"], "bound.B");
    if (node["samples"]) b.samples = ctx.get_count(node["samples"], "bound.samples");
    if (node["lambda"]) b.lambda = ctx.get<double>(node["lambda"], "bound.lambda");
    if (node["nu"]) b.nu = ctx.get<std::string>(node["nu"], "bound.nu");
    if (node["tolerance"]) b.tolerance = ctx.get<double>(node["tolerance"], "bound.tolerance");
    if (node["terms"]) b.terms = ctx.get_count(node["terms"], "bound.terms");
    if (node["chain_samples"]) b.chain_samples = ctx.get_count(node["chain_samples"], "bound.chain_samples");
}

void parse_sampler(const Context& ctx, const YAML::Node& node, RunConfig& cfg)
{
    ctx.check_keys(node, {"n", "omega", "amplitude", "lambda_max"}, "sampler");
    if (node["n"]) cfg.sampler.n = ctx.get_count(node["n"], "sampler.n");
    if (node["omega"]) cfg.sampler.omega_len = ctx.get<double>(node["omega"], "sampler.omega");
    if (node["amplitude"]) cfg.sampler.amplitude = ctx.get<double>(node["amplitude"], "sampler.amplitude");
    if (node["lambda_max"]) cfg.sampler.lambda_max = ctx.get<double>(node["lambda_max"], "sampler.lambda_max");
}

}  // namespace

std::string_view to_string(Command c) noexcept
{
    switch (c) {
    case Command::Solve: return "solve";
    case Command::Certify: return "certify";
    case Command::Axioms: return "axioms";
    case Command::Trace: return "trace";
    case Command::BoundCheck: return "bound-check";
    }
    return "?";
}

std::string_view to_string(OutputFormat f) noexcept
{
    return f == OutputFormat::Csv ? "csv" : "json";
}

Command parse_command(std::string_view name)
{
    for (Command c : {Command::Solve, Command::Certify, Command::Axioms, Command::Trace, Command::BoundCheck}) {
        if (name == to_string(c)) return c;
    }
    throw ConfigError("unknown command '" + std::string(name) + "'");
}

OutputFormat parse_format(std::string_view name)
{
    if (name == "csv") return OutputFormat::Csv;
    if (name == "json") return OutputFormat::Json;
    throw ConfigError("unknown format '" + std::string(name) + "' (expected csv or json)");
}

IntegralEquationProblem load_problem(const fs::path& path)
{
    const std::string source = path.string();
    if (!fs::exists(path)) throw ConfigError("problem file '" + source + "' does not exist");
    const Context ctx(source);
    const YAML::Node root = load_yaml(io::read_text_file(path), source);
    return parse_problem(root, ctx, path.parent_path());
}

RunConfig parse_config_text(std::string_view text, const fs::path& base_dir)
{
    const std::string source = "<config>";
    const Context ctx(source);
    const YAML::Node root = load_yaml(text, source);
    RunConfig cfg;
    cfg.sampler.amplitude = 5.0;
    if (!root || root.IsNull()) return cfg;
    ctx.check_keys(root,
                   {"command", "problem", "second_problem", "seed", "output_dir", "format", "solver", "certify",
                    "axioms", "bound", "sampler"},
                   "");
    try {
        if (root["command"]) {
            cfg.command = parse_command(ctx.get<std::string>(root["command"], "command"));
            cfg.declared_command = cfg.command;
        }
        if (root["format"]) cfg.format = parse_format(ctx.get<std::string>(root["format"], "format"));
    } catch (const ConfigError& e) {
        ctx.fail(root, e.what());
    }
    if (root["seed"]) cfg.seed = ctx.get_u64(root["seed"], "seed");
    if (root["output_dir"]) cfg.output_dir = resolve(base_dir, ctx.get<std::string>(root["output_dir"], "output_dir"));
    if (root["solver"]) parse_solver(ctx, root["solver"], cfg);
    if (root["certify"]) parse_certify(ctx, root["certify"], cfg);
    if (root["axioms"]) parse_axioms(ctx, root["axioms"], cfg);
    if (root["bound"]) parse_bound(ctx, root["bound"], cfg);
    if (root["sampler"]) parse_sampler(ctx, root["sampler"], cfg);

    try {
        cfg.solver.psi = PsiFunction::parse(cfg.psi);
    } catch (const ConfigError& e) {
        ctx.fail(root["solver"], e.what());
    }

    if (root["problem"]) {
        cfg.problem_path = resolve(base_dir, ctx.get<std::string>(root["problem"], "problem"));
        if (!fs::exists(*cfg.problem_path)) {
            ctx.fail(root["problem"], "problem file '" + cfg.problem_path->string() + "' does not exist");
        }
        cfg.problem = load_problem(*cfg.problem_path);
    }
    if (root["second_problem"]) {
        cfg.second_problem_path = resolve(base_dir, ctx.get<std::string>(root["second_problem"], "second_problem"));
        if (!fs::exists(*cfg.second_problem_path)) {
            ctx.fail(root["second_problem"],
                     "problem file '" + cfg.second_problem_path->string() + "' does not exist");
        }
        cfg.second_problem = load_problem(*cfg.second_problem_path);
    }
    if (cfg.problem) {
        cfg.sampler.n = cfg.problem->n();
        cfg.sampler.omega_len = cfg.problem->omega_len();
    }
    cfg.solver.validate();
    return cfg;
}

RunConfig parse_config(const fs::path& path)
{
    if (!fs::exists(path)) throw ConfigError("config file '" + path.string() + "' does not exist");
    const std::string text = io::read_text_file(path);
    try {
        RunConfig cfg = parse_config_text(text, path.parent_path());
        cfg.config_path = path;
        return cfg;
    } catch (const ConfigError& e) {
        std::string msg = e.what();
        const std::string generic = "<config>";
        if (msg.rfind(generic, 0) == 0) msg = path.string() + msg.substr(generic.size());
        throw ConfigError(msg);
    }
}

std::function<double(double)> parse_nu(std::string_view tag)
{
    if (tag == "zero") return [](double) { return 0.0; };
    const auto [name, arg] = split_tag(tag);
    if (name == "fraction") {
        const double f = parse_number(arg, "nu");
        if (!(f >= 0.0 && f < 1.0)) throw ConfigError("nu: fraction must lie in [0, 1)");
        return [f](double lambda) { return f * lambda; };
    }
    throw ConfigError("nu: unknown tag '" + std::string(tag) + "'");
}

Operator make_map(const RunConfig& cfg)
{
    const std::string& tag = cfg.certify.map;
    if (tag == "identity") return [](const GridFunction& u) { return u; };
    if (tag == "problem") {
        if (!cfg.problem) throw ConfigError("map 'problem' needs a problem file");
        return discretize(*cfg.problem);
    }
    const auto [name, arg] = split_tag(tag);
    const double c = parse_number(arg, "map");
    auto pointwise = [](auto f) -> Operator {
        return [f](const GridFunction& u) {
            std::vector<double> v(u.values().begin(), u.values().end());
            for (double& e : v) e = f(e);
            return GridFunction(u.omega_len(), std::move(v));
        };
    };
    if (name == "scale") return pointwise([c](double u) { return c * u; });
    if (name == "shift") return pointwise([c](double u) { return u + c; });
    if (name == "constant") return pointwise([c](double) { return c; });
    throw ConfigError("map: unknown tag '" + tag + "'");
}

std::function<double(double, double)> parse_bound_kernel(std::string_view tag)
{
    const auto [name, arg] = split_tag(tag);
    if (name == "constant") {
        const double c = parse_number(arg, "bound.B");
        return [c](double, double) { return c; };
    }
    if (name == "separable") {
        std::vector<double> p;
        std::string_view rest = arg;
        while (true) {
            const auto comma = rest.find(',');
            p.push_back(parse_number(rest.substr(0, comma), "bound.B"));
            if (comma == std::string_view::npos) break;
            rest = rest.substr(comma + 1);
        }
        if (p.size() != 3) throw ConfigError("bound.B: separable takes c,p,q");
        return [c = p[0], a = p[1], b = p[2]](double t, double s) { return c * std::pow(t, a) * std::pow(s, b); };
    }
    throw ConfigError("bound.B: unknown tag '" + std::string(tag) + "'");
}

void validate(const RunConfig& cfg)
{
    cfg.solver.validate();
    const bool needs_problem = cfg.command == Command::Solve || cfg.command == Command::Trace ||
                               cfg.command == Command::BoundCheck ||
                               (cfg.command == Command::Certify && cfg.certify.map == "problem");
    if (needs_problem && !cfg.problem) {
        throw ConfigError(std::string(to_string(cfg.command)) + ": config needs a 'problem' file");
    }
    if (cfg.second_problem && cfg.problem) {
        require_compatible(cfg.problem->mu, cfg.second_problem->mu);
    }
    if (cfg.sampler.n < 2 || !(cfg.sampler.omega_len > 0.0) || !(cfg.sampler.amplitude > 0.0) ||
        !(cfg.sampler.lambda_max > 0.0)) {
        throw ConfigError("sampler: need n >= 2 and positive omega, amplitude, lambda_max");
    }
    if (cfg.command == Command::Certify) {
        if (cfg.certify.samples < 1) throw ConfigError("certify.samples must be at least 1");
        for (const auto& tag : cfg.certify.kappas) GeraghtyFunction::parse(tag);
        make_map(cfg);
        const double nu = parse_nu(cfg.certify.nu)(cfg.certify.lambda);
        if (!(cfg.certify.lambda > 0.0)) throw ConfigError("certify.lambda must be positive");
        if (!(nu < cfg.certify.lambda)) throw ConfigError("certify.nu must stay below lambda");
    }
    if (cfg.command == Command::Axioms && cfg.axioms.samples < 1) {
        throw ConfigError("axioms.samples must be at least 1");
    }
    if (cfg.command == Command::BoundCheck) {
        parse_bound_kernel(cfg.bound.b);
        parse_nu(cfg.bound.nu);
        if (!(cfg.bound.lambda > 0.0)) throw ConfigError("bound.lambda must be positive");
        if (cfg.bound.terms < 1 || cfg.bound.terms > kTermCount) throw ConfigError("bound.terms must lie in 1..11");
    }
}

}  // namespace gmetric::cli
