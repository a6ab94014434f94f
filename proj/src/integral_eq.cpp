#include "gmetric/integral_eq.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <memory>
#include <string>

#include "gmetric/error.hpp"
#include "gmetric/geraghty.hpp"
#include "gmetric/metric.hpp"

namespace gmetric {

namespace {

double power_or_one(double base, double exponent)
{
    return exponent == 0.0 ? 1.0 : std::pow(base, exponent);
}

std::function<double(double)> nonlinearity(const std::string& name)
{
    if (name == "identity") return [](double u) { return u; };
    if (name == "sin") return [](double u) { return std::sin(u); };
    if (name == "tanh") return [](double u) { return std::tanh(u); };
    if (name == "atan") return [](double u) { return std::atan(u); };
    throw ConfigError("kernel: unknown nonlinearity '" + name + "'");
}

void require_params(const KernelSpec& spec, std::size_t count)
{
    if (spec.params.size() != count) {
        throw ConfigError("kernel: family '" + spec.family + "' takes " + std::to_string(count) +
                          " params, got " + std::to_string(spec.params.size()));
    }
}

void require_sampler_grid(const GridSampler& sampler, const IntegralEquationProblem& p)
{
    const auto& c = sampler.config();
    if (c.n != p.n() || c.omega_len != p.omega_len()) {
        throw ConfigError("sampler grid (n=" + std::to_string(c.n) + ") does not match the problem grid (n=" +
                          std::to_string(p.n()) + ")");
    }
}

void require_same_grid(const IntegralEquationProblem& p1, const IntegralEquationProblem& p2)
{
    p1.validate();
    p2.validate();
    require_compatible(p1.mu, p2.mu);
}

void require_nu(double lambda, double nu_lambda)
{
    if (!(lambda > 0.0) || !std::isfinite(lambda)) {
        throw DomainError("D terms: lambda must be positive");
    }
    if (!(nu_lambda >= 0.0 && nu_lambda < lambda)) {
        throw DomainError("D terms: nu(lambda) must lie in [0, lambda)");
    }
}

/// Σ_j w_j·H(t_i, s_j, u_j) for every i.
std::vector<double> integrate(const IntegralEquationProblem& p, const GridFunction& u)
{
    const std::size_t n = p.n();
    std::vector<double> out(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double t = p.mu.node(i);
        double acc = 0.0;
        for (std::size_t j = 0; j < n; ++j) {
            acc += p.rule.weights[j] * p.kernel(t, p.mu.node(j), u[j]);
        }
        out[i] = acc;
    }
    return out;
}

double sinc_at(double t)
{
    static const GeraghtyFunction sinc = GeraghtyFunction::sinc();
    return kappa_eval(sinc, t);
}

/// D_k(s_j) for all j, k; row j holds the 11 terms.
std::vector<std::array<double, 11>> d_table(const IntegralEquationProblem& p1, const IntegralEquationProblem& p2,
                                            const GridFunction& x, const GridFunction& y, double lambda,
                                            double nu_lambda)
{
    const GridFunction gx = g_function(p1, x);
    const GridFunction gy = g_function(p2, y);
    std::vector<std::array<double, 11>> out(x.size());
    for (std::size_t j = 0; j < x.size(); ++j) {
        out[j] = compute_D_terms(x, y, j, lambda, nu_lambda, gx, gy, p1.mu, p2.mu);
    }
    return out;
}

void require_terms(std::size_t terms)
{
    if (terms < 1 || terms > 11) {
        throw ConfigError("term count must lie in 1..11");
    }
}

}  // namespace

Kernel Kernel::zero()
{
    return Kernel(KernelFamily::Zero, [](double, double, double) { return 0.0; });
}

Kernel Kernel::constant(double c)
{
    return Kernel(KernelFamily::Constant, [c](double, double, double) { return c; });
}

Kernel Kernel::linear_separable(std::function<double(double)> a, std::function<double(double)> b)
{
    return Kernel(KernelFamily::LinearSeparable,
                  [a = std::move(a), b = std::move(b)](double t, double s, double u) { return a(t) * b(s) * u; });
}

Kernel Kernel::separable(std::function<double(double)> a, std::function<double(double)> b,
                         std::function<double(double)> g)
{
    return Kernel(KernelFamily::Separable, [a = std::move(a), b = std::move(b), g = std::move(g)](
                                               double t, double s, double u) { return a(t) * b(s) * g(u); });
}

Kernel Kernel::custom(Evaluator f)
{
    return Kernel(KernelFamily::Custom, std::move(f));
}

Kernel make_kernel(const KernelSpec& spec)
{
    if (spec.family == "zero") {
        require_params(spec, 0);
        return Kernel::zero();
    }
    if (spec.family == "constant") {
        require_params(spec, 1);
        return Kernel::constant(spec.params[0]);
    }
    if (spec.family == "linear-separable" || spec.family == "separable") {
        require_params(spec, 3);
        const double coef = spec.params[0];
        const double p = spec.params[1];
        const double q = spec.params[2];
        auto a = [coef, p](double t) { return coef * power_or_one(t, p); };
        auto b = [q](double s) { return power_or_one(s, q); };
        if (spec.family == "linear-separable") {
            if (spec.nonlinearity != "identity") {
                throw ConfigError("kernel: linear-separable takes no nonlinearity");
            }
            return Kernel::linear_separable(a, b);
        }
        return Kernel::separable(a, b, nonlinearity(spec.nonlinearity));
    }
    throw ConfigError("kernel: unknown family '" + spec.family + "'");
}

void IntegralEquationProblem::validate() const
{
    if (rule.weights.size() != mu.size()) {
        throw ConfigError("quadrature rule has " + std::to_string(rule.weights.size()) + " weights for a grid of " +
                          std::to_string(mu.size()) + " nodes");
    }
}

Operator discretize(const IntegralEquationProblem& problem)
{
    problem.validate();
    auto p = std::make_shared<const IntegralEquationProblem>(problem);
    return [p](const GridFunction& u) {
        require_compatible(u, p->mu);
        std::vector<double> v = integrate(*p, u);
        for (std::size_t i = 0; i < v.size(); ++i) {
            v[i] += p->mu[i];
        }
        return GridFunction(p->omega_len(), std::move(v));
    };
}

FixedPointResult solve(const IntegralEquationProblem& problem, const SolverConfig& cfg, const GridFunction& x0)
{
    return picard_iterate(discretize(problem), x0, cfg);
}

GridFunction g_function(const IntegralEquationProblem& problem, const GridFunction& u)
{
    problem.validate();
    require_compatible(u, problem.mu);
    std::vector<double> v = integrate(problem, u);
    for (std::size_t i = 0; i < v.size(); ++i) {
        v[i] -= problem.mu[i];
    }
    return GridFunction(problem.omega_len(), std::move(v));
}

double linear_operator_bound(const IntegralEquationProblem& problem)
{
    if (problem.kernel.family() != KernelFamily::LinearSeparable) {
        throw ConfigError("operator bound is only available for linear-separable kernels");
    }
    problem.validate();
    double best = 0.0;
    for (std::size_t i = 0; i < problem.n(); ++i) {
        double acc = 0.0;
        for (std::size_t j = 0; j < problem.n(); ++j) {
            acc += problem.rule.weights[j] * std::abs(problem.kernel(problem.mu.node(i), problem.mu.node(j), 1.0));
        }
        best = std::max(best, acc);
    }
    return best;
}

std::array<double, 11> compute_D_terms(const GridFunction& x, const GridFunction& y, std::size_t t_index,
                                       double lambda, double nu_lambda, const GridFunction& gx,
                                       const GridFunction& gy, const GridFunction& mu1, const GridFunction& mu2)
{
    require_nu(lambda, nu_lambda);
    require_compatible(x, y);
    require_compatible(x, gx);
    require_compatible(x, gy);
    require_compatible(x, mu1);
    require_compatible(x, mu2);
    if (t_index >= x.size()) {
        throw DomainError("D terms: node index out of range");
    }
    const std::size_t i = t_index;
    const double L = 1.0 / (1.0 + lambda);
    const double a = std::abs(x[i] - y[i]);
    const double X = gx[i] + mu1[i];
    const double Y = gy[i] + mu2[i];
    const double Xx = std::abs(X - x[i]);
    const double Yy = std::abs(Y - y[i]);
    const double XY = std::abs(X - Y);
    const double Xy = std::abs(X - y[i]);
    const double Yx = std::abs(Y - x[i]);
    // G_y − μ_2 − x keeps the sign as printed in the source estimate.
    const double Gmx = std::abs(gy[i] - mu2[i] - x[i]);

    return {
        a / (1.0 + lambda + nu_lambda),
        L * Xx,
        L * Yy,
        L * XY,
        L * Xy,
        L * Yy * (1.0 + L * a) / (1.0 + L * Xx),
        L * Yy * (1.0 + L * Xx) / (1.0 + L * a),
        L * Xx * (1.0 + L * a) / (1.0 + L * (Xy + a)),
        L * a * (1.0 + L * Yy) / (1.0 + L * (Xy + XY)),
        L * XY * (1.0 + L * Yx) / (1.0 + L * (Xy + Gmx)),
        L * XY * (1.0 + L * Yy + Xy) / (1.0 + L * (Xy + XY)),
    };
}

KernelBoundData make_kernel_bound(const std::function<double(double t, double s)>& b, double omega_len,
                                  const QuadratureRule& rule)
{
    const std::size_t n = rule.weights.size();
    if (n < 2 || !(omega_len > 0.0)) {
        throw ConfigError("kernel bound: need at least two nodes and a positive domain");
    }
    const GridFunction grid = GridFunction::constant(omega_len, n, 0.0);
    KernelBoundData out;
    out.n = n;
    out.omega_len = omega_len;
    out.values.resize(n * n);
    for (std::size_t i = 0; i < n; ++i) {
        double row = 0.0;
        for (std::size_t j = 0; j < n; ++j) {
            const double v = b(grid.node(i), grid.node(j));
            if (!(v >= 0.0) || !std::isfinite(v)) {
                throw DomainError("kernel bound: B must be finite and nonnegative");
            }
            out.values[i * n + j] = v;
            row += rule.weights[j] * v * v;
        }
        out.budget = std::max(out.budget, row);
    }
    return out;
}

KernelBoundReport check_kernel_bound(const IntegralEquationProblem& p1, const IntegralEquationProblem& p2,
                                     const KernelBoundData& bound, double lambda, double nu_lambda,
                                     const GridSampler& sampler, std::size_t count, double tol, std::size_t terms)
{
    require_same_grid(p1, p2);
    require_sampler_grid(sampler, p1);
    require_nu(lambda, nu_lambda);
    require_terms(terms);
    if (bound.n != p1.n()) {
        throw DimensionMismatch("kernel bound grid does not match the problem grid");
    }

    KernelBoundReport rep;
    rep.budget = bound.budget;
    rep.budget_limit = 1.0 / p1.omega_len();
    rep.budget_ok = bound.budget_ok(tol);
    rep.pointwise.name = "kernel_bound";
    rep.pointwise.tolerance = tol;
    rep.min_slack = std::numeric_limits<double>::infinity();

    const std::size_t n = p1.n();
    for (std::size_t k = 0; k < count; ++k) {
        auto rng = sampler.engine_for(k);
        const GridFunction x = sampler.draw(rng);
        const GridFunction y = sampler.draw_distinct(rng, x);
        const auto d = d_table(p1, p2, x, y, lambda, nu_lambda);
        for (std::size_t j = 0; j < n; ++j) {
            double dsum = 0.0;
            for (std::size_t q = 0; q < terms; ++q) dsum += d[j][q];
            const double s = x.node(j);
            const double factor = sinc_at(std::abs(x[j] - y[j]) / lambda) * dsum;
            for (std::size_t i = 0; i < n; ++i) {
                const double t = x.node(i);
                const double lhs = std::abs(p1.kernel(t, s, x[j]) - p2.kernel(t, s, y[j]));
                const double rhs = bound.at(i, j) * factor;
                const double slack = rhs - lhs;
                rep.min_slack = std::min(rep.min_slack, slack);
                ++rep.pointwise.samples_checked;
                if (slack < -tol) {
                    rep.pointwise.violations.push_back({k, {t, s, x[j], y[j]}, lhs, rhs, lhs - rhs});
                }
            }
        }
    }
    if (rep.pointwise.samples_checked == 0) rep.min_slack = 0.0;
    return rep;
}

ChainReport cauchy_schwarz_chain_check(const IntegralEquationProblem& p1, const IntegralEquationProblem& p2,
                                       const KernelBoundData& bound, const GridFunction& x, const GridFunction& y,
                                       double lambda, double nu_lambda, double tol, std::size_t terms)
{
    require_same_grid(p1, p2);
    require_compatible(x, p1.mu);
    require_compatible(y, p1.mu);
    require_nu(lambda, nu_lambda);
    require_terms(terms);
    if (bound.n != p1.n()) {
        throw DimensionMismatch("kernel bound grid does not match the problem grid");
    }

    const std::size_t n = p1.n();
    const auto& w = p1.rule.weights;
    const double L = 1.0 / (1.0 + lambda);
    const auto d = d_table(p1, p2, x, y, lambda, nu_lambda);

    std::vector<double> sinc(n);
    for (std::size_t j = 0; j < n; ++j) sinc[j] = sinc_at(std::abs(x[j] - y[j]) / lambda);

    // (∫ sinc²·D_k² ds)^{1/2}, independent of t.
    std::vector<double> dk_norm(terms, 0.0);
    for (std::size_t q = 0; q < terms; ++q) {
        double acc = 0.0;
        for (std::size_t j = 0; j < n; ++j) acc += w[j] * sinc[j] * sinc[j] * d[j][q] * d[j][q];
        dk_norm[q] = std::sqrt(acc);
    }

    const std::vector<double> i1 = integrate(p1, x);
    const std::vector<double> i2 = integrate(p2, y);
    const double kappa = sinc_at(eval_omega_pair(sup_metric(), lambda, x, y));

    ChainReport r;
    double budget = 0.0;
    for (std::size_t q = 0; q < terms; ++q) budget += std::sqrt(1.0 / p1.omega_len()) * dk_norm[q];
    r.budget_step = L * budget;

    for (std::size_t i = 0; i < n; ++i) {
        const double t = x.node(i);
        r.w = std::max(r.w, L * std::abs(i1[i] - i2[i]));

        double tri = 0.0;
        double kb = 0.0;
        double b2 = 0.0;
        for (std::size_t j = 0; j < n; ++j) {
            const double s = x.node(j);
            tri += w[j] * std::abs(p1.kernel(t, s, x[j]) - p2.kernel(t, s, y[j]));
            double dsum = 0.0;
            for (std::size_t q = 0; q < terms; ++q) dsum += d[j][q];
            kb += w[j] * bound.at(i, j) * sinc[j] * dsum;
            b2 += w[j] * bound.at(i, j) * bound.at(i, j);
        }
        double cs = 0.0;
        for (std::size_t q = 0; q < terms; ++q) cs += std::sqrt(b2) * dk_norm[q];
        r.triangle = std::max(r.triangle, L * tri);
        r.kernel_bound = std::max(r.kernel_bound, L * kb);
        r.cauchy_schwarz = std::max(r.cauchy_schwarz, L * cs);

        double target = 0.0;
        for (std::size_t q = 0; q < terms; ++q) target += kappa * d[i][q];
        r.target = std::max(r.target, target);
    }

    r.triangle_ok = r.w <= r.triangle + tol;
    r.kernel_bound_ok = r.triangle <= r.kernel_bound + tol;
    r.cauchy_schwarz_ok = r.kernel_bound <= r.cauchy_schwarz + tol;
    r.budget_ok = r.cauchy_schwarz <= r.budget_step + tol;
    r.final_ok = r.w <= r.target + tol;
    r.slack = r.target - r.w;
    r.holds = r.triangle_ok && r.kernel_bound_ok && r.cauchy_schwarz_ok && r.budget_ok && r.final_ok;
    return r;
}

std::vector<PropertyReport> check_cross_conditions(const IntegralEquationProblem& p1,
                                                   const IntegralEquationProblem& p2, const GridSampler& sampler,
                                                   std::size_t count)
{
    require_same_grid(p1, p2);
    require_sampler_grid(sampler, p1);
    const Operator t1 = discretize(p1);
    const Operator t2 = discretize(p2);

    PropertyReport first{"h1_below_h2", 0, 0.0, {}};
    PropertyReport second{"h2_below_h1", 0, 0.0, {}};
    auto check = [](PropertyReport& rep, std::size_t k, const IntegralEquationProblem& a,
                    const IntegralEquationProblem& b, const GridFunction& u, const GridFunction& tu) {
        for (std::size_t i = 0; i < u.size(); ++i) {
            for (std::size_t j = 0; j < u.size(); ++j) {
                const double t = u.node(i);
                const double s = u.node(j);
                const double lhs = a.kernel(t, s, u[i]);
                const double rhs = b.kernel(t, s, tu[j]);
                ++rep.samples_checked;
                if (lhs > rhs) rep.violations.push_back({k, {t, s}, lhs, rhs, lhs - rhs});
            }
        }
    };
    for (std::size_t k = 0; k < count; ++k) {
        auto rng = sampler.engine_for(k);
        const GridFunction u = sampler.draw(rng);
        check(first, k, p1, p2, u, t1(u));
        check(second, k, p2, p1, u, t2(u));
    }
    return {first, second};
}

SystemSolution solve_system(const IntegralEquationProblem& p1, const IntegralEquationProblem& p2,
                            const SolverConfig& cfg, const GridFunction& x0)
{
    require_same_grid(p1, p2);
    FixedPointResult a = solve(p1, cfg, x0);
    FixedPointResult b = solve(p2, cfg, x0);
    const double dist = eval_omega_pair(cfg.metric, cfg.lambda, a.x_star, b.x_star);
    return {std::move(a), std::move(b), dist};
}

}  // namespace gmetric
