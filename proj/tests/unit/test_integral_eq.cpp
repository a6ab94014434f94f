#include <gtest/gtest.h>

#include <cmath>

#include "gmetric/error.hpp"
#include "gmetric/integral_eq.hpp"
#include "gmetric/quadrature.hpp"
#include "oracles.hpp"

using namespace gmetric;

namespace {

IntegralEquationProblem linear_problem(std::size_t n, double coef = 0.5,
                                       QuadratureKind kind = QuadratureKind::Simpson)
{
    return {Kernel::linear_separable([coef](double t) { return coef * t; }, [](double s) { return s; }),
            GridFunction::constant(1.0, n, 1.0), make_rule(kind, 1.0, n)};
}

IntegralEquationProblem sin_problem(std::size_t n)
{
    return {Kernel::separable([](double t) { return 0.25 * t; }, [](double s) { return s; },
                              [](double u) { return std::sin(u); }),
            GridFunction::sample(1.0, n, [](double t) { return t; }), make_rule(QuadratureKind::Simpson, 1.0, n)};
}

GridSampler grid_sampler(std::size_t n, double amplitude, std::uint64_t seed = 0)
{
    SamplerConfig c;
    c.n = n;
    c.amplitude = amplitude;
    c.seed = seed;
    return GridSampler(c);
}

}  // namespace

TEST(Discretize, WorkedExamples)
{
    const auto mu = GridFunction::sample(1.0, 11, [](double t) { return t; });
    const IntegralEquationProblem zero{Kernel::zero(), mu, default_rule(1.0, 11)};
    const auto u = GridFunction::sample(1.0, 11, [](double t) { return std::exp(t); });
    EXPECT_EQ(discretize(zero)(u), mu);

    const auto tu = discretize(linear_problem(11))(GridFunction::constant(1.0, 11, 1.0));
    for (std::size_t i = 0; i < 11; ++i) EXPECT_NEAR(tu[i], 1.0 + tu.node(i) / 4.0, 1e-15);

    const IntegralEquationProblem one{Kernel::constant(1.0), GridFunction::constant(2.0, 9, 0.0), default_rule(2.0, 9)};
    const auto two = discretize(one)(GridFunction::constant(2.0, 9, 5.0));
    for (std::size_t i = 0; i < 9; ++i) EXPECT_NEAR(two[i], 2.0, 1e-15);
}

TEST(Discretize, WeightMismatchIsConfigError)
{
    const IntegralEquationProblem bad{Kernel::zero(), GridFunction::constant(1.0, 11, 0.0), default_rule(1.0, 13)};
    EXPECT_THROW(discretize(bad), ConfigError);
    EXPECT_THROW(discretize(linear_problem(11))(GridFunction::constant(1.0, 12, 0.0)), DimensionMismatch);
}

TEST(Discretize, LinearInKernelWithZeroShift)
{
    oracle::SplitMix rng(51);
    const auto mu0 = GridFunction::constant(1.0, 21, 0.0);
    const auto rule = default_rule(1.0, 21);
    const Kernel h1 = Kernel::custom([](double t, double s, double u) { return t * std::cos(s) * u * u; });
    const Kernel h2 = Kernel::custom([](double t, double s, double u) { return std::sin(t + s + u); });
    const Kernel sum = Kernel::custom([&](double t, double s, double u) { return h1(t, s, u) + h2(t, s, u); });
    for (int k = 0; k < 50; ++k) {
        const auto u = oracle::random_grid(rng, 1.0, 21, 2.0);
        const auto a = discretize({h1, mu0, rule})(u);
        const auto b = discretize({h2, mu0, rule})(u);
        const auto s = discretize({sum, mu0, rule})(u);
        for (std::size_t i = 0; i < 21; ++i) EXPECT_NEAR(s[i], a[i] + b[i], 1e-14);
    }
}

TEST(Solve, LinearFredholmAnalytic)
{
    SolverConfig cfg;
    cfg.epsilon = 1e-12;
    const auto r = solve(linear_problem(401), cfg, GridFunction::constant(1.0, 401, 0.0));
    EXPECT_EQ(r.trace.stop_reason, StopReason::Converged);
    for (std::size_t i = 0; i < 401; ++i) {
        EXPECT_NEAR(r.x_star[i], oracle::linear_solution(r.x_star.node(i)), 1e-10);
    }
}

TEST(Solve, ZeroKernelReturnsShiftAfterOneStep)
{
    const auto mu = GridFunction::sample(1.0, 11, [](double t) { return 1.0 - t * t; });
    const auto r = solve({Kernel::zero(), mu, default_rule(1.0, 11)}, SolverConfig{}, GridFunction::constant(1.0, 11, 0.0));
    EXPECT_EQ(r.x_star, mu);
    EXPECT_EQ(r.trace.d.back(), 0.0);
    EXPECT_EQ(r.trace.iterations(), 2u);
}

TEST(Solve, SinKernelConvergesAtFourthOrder)
{
    SolverConfig cfg;
    cfg.epsilon = 1e-14;
    const std::size_t ref_n = 2001;
    const auto ref = solve(sin_problem(ref_n), cfg, GridFunction::constant(1.0, ref_n, 0.0)).x_star;
    std::vector<double> errs;
    for (std::size_t n : {11u, 21u, 41u}) {
        const auto u = solve(sin_problem(n), cfg, GridFunction::constant(1.0, n, 0.0)).x_star;
        const std::size_t stride = (ref_n - 1) / (n - 1);
        double e = 0.0;
        for (std::size_t i = 0; i < n; ++i) e = std::max(e, std::abs(u[i] - ref[i * stride]));
        errs.push_back(e);
    }
    for (std::size_t k = 0; k + 1 < errs.size(); ++k) {
        EXPECT_GE(std::log2(errs[k] / errs[k + 1]), 3.5) << errs[k] << " -> " << errs[k + 1];
    }
}

TEST(Solve, EmpiricalRatiosBelowOperatorBound)
{
    SolverConfig cfg;
    cfg.epsilon = 1e-13;
    for (auto kind : {QuadratureKind::Simpson, QuadratureKind::Trapezoid}) {
        const auto p = linear_problem(kind == QuadratureKind::Simpson ? 101 : 100, 0.9, kind);
        const double bound = linear_operator_bound(p);
        EXPECT_LT(bound, 1.0);
        const auto r = solve(p, cfg, GridFunction::constant(1.0, p.n(), 0.0));
        for (double ratio : r.trace.ratios) {
            if (!std::isnan(ratio)) {
                EXPECT_LE(ratio, bound + 1e-10);
            }
        }
    }
    EXPECT_NEAR(linear_operator_bound(linear_problem(11)), 0.25, 1e-15);
    EXPECT_THROW(linear_operator_bound(sin_problem(11)), ConfigError);
}

TEST(GFunction, ReconstructsOperatorWithShift)
{
    const auto p = sin_problem(21);
    const auto u = GridFunction::sample(1.0, 21, [](double t) { return 2 * t - 1; });
    const auto g = g_function(p, u);
    const auto tu = discretize(p)(u);
    for (std::size_t i = 0; i < 21; ++i) EXPECT_NEAR(g[i] + 2 * p.mu[i], tu[i], 1e-15);
}

TEST(DTerms, WorkedExamples)
{
    const std::size_t n = 5;
    auto k = [n](double v) { return GridFunction::constant(1.0, n, v); };
    const auto x = GridFunction::sample(1.0, n, [](double t) { return t * t; });
    const auto gx = GridFunction::sample(1.0, n, [](double t) { return std::cos(t); });
    const auto mu = GridFunction::sample(1.0, n, [](double t) { return 0.3 + t; });
    for (std::size_t i = 0; i < n; ++i) {
        const auto d = compute_D_terms(x, x, i, 1.0, 0.5, gx, gx, mu, mu);
        for (std::size_t z : {0u, 3u, 8u, 9u, 10u}) EXPECT_EQ(d[z], 0.0) << "D" << z + 1;
    }
    EXPECT_DOUBLE_EQ(compute_D_terms(k(1), k(0), 2, 1.0, 0.0, k(0), k(0), k(0), k(0))[0], 0.5);
    EXPECT_DOUBLE_EQ(compute_D_terms(k(1), k(3), 0, 1.0, 0.0, k(0), k(2), k(0), k(7))[1], 0.5);
}

TEST(DTerms, MatchIndependentTranscription)
{
    oracle::SplitMix rng(52);
    const std::size_t n = 7;
    for (int s = 0; s < 300; ++s) {
        const auto x = oracle::random_grid(rng, 1.0, n, 5.0);
        const auto y = oracle::random_grid(rng, 1.0, n, 5.0);
        const auto gx = oracle::random_grid(rng, 1.0, n, 5.0);
        const auto gy = oracle::random_grid(rng, 1.0, n, 5.0);
        const auto m1 = oracle::random_grid(rng, 1.0, n, 5.0);
        const auto m2 = oracle::random_grid(rng, 1.0, n, 5.0);
        const double lam = rng.uniform(0.01, 5.0);
        const double nu = rng.uniform(0.0, 0.999) * lam;
        const std::size_t i = static_cast<std::size_t>(rng.next() % n);
        const auto got = compute_D_terms(x, y, i, lam, nu, gx, gy, m1, m2);
        const auto want = oracle::d_terms(x[i], y[i], gx[i], gy[i], m1[i], m2[i], lam, nu);
        for (std::size_t k = 0; k < 11; ++k) {
            EXPECT_NEAR(got[k], want[k], 1e-14 * std::max(1.0, want[k])) << "D" << k + 1;
            EXPECT_TRUE(std::isfinite(got[k]));
        }
    }
}

TEST(DTerms, Errors)
{
    const auto a = GridFunction::constant(1.0, 5, 0.0);
    EXPECT_THROW(compute_D_terms(a, a, 0, 1.0, 1.0, a, a, a, a), DomainError);
    EXPECT_THROW(compute_D_terms(a, a, 0, 1.0, -0.1, a, a, a, a), DomainError);
    EXPECT_THROW(compute_D_terms(a, a, 5, 1.0, 0.0, a, a, a, a), DomainError);
    EXPECT_THROW(compute_D_terms(a, GridFunction::constant(1.0, 6, 0.0), 0, 1.0, 0.0, a, a, a, a), DimensionMismatch);
}

TEST(KernelBound, BudgetExamples)
{
    const auto r1 = make_rule(QuadratureKind::Simpson, 1.0, 11);
    const auto unit = make_kernel_bound([](double, double) { return 1.0; }, 1.0, r1);
    EXPECT_NEAR(unit.budget, 1.0, 1e-15);
    EXPECT_TRUE(unit.budget_ok(1e-12));

    const auto root = make_kernel_bound([](double, double) { return std::sqrt(1.0); }, 1.0, r1);
    EXPECT_TRUE(root.budget_ok(1e-12));

    const auto r2 = make_rule(QuadratureKind::Simpson, 2.0, 11);
    const auto wide = make_kernel_bound([](double, double) { return 1.0; }, 2.0, r2);
    EXPECT_NEAR(wide.budget, 2.0, 1e-14);
    EXPECT_FALSE(wide.budget_ok(1e-12));

    const IntegralEquationProblem quarter{Kernel::custom([](double, double, double u) { return u / 4.0; }),
                                          GridFunction::constant(2.0, 11, 0.0), r2};
    const auto rep = check_kernel_bound(quarter, quarter, wide, 1.0, 0.0, GridSampler([] {
                                            SamplerConfig c;
                                            c.n = 11;
                                            c.omega_len = 2.0;
                                            return c;
                                        }()),
                                        5, 1e-12);
    EXPECT_FALSE(rep.budget_ok);
    EXPECT_FALSE(rep.ok());
    EXPECT_THROW(make_kernel_bound([](double, double) { return -1.0; }, 1.0, r1), DomainError);
}

TEST(KernelBound, KernelIndependentOfStateHasNoPointwiseViolations)
{
    const auto rule = make_rule(QuadratureKind::Trapezoid, 1.0, 21);
    const IntegralEquationProblem p{Kernel::constant(0.7), GridFunction::constant(1.0, 21, 0.0), rule};
    const auto b = make_kernel_bound([](double t, double s) { return t * s; }, 1.0, rule);
    const auto rep = check_kernel_bound(p, p, b, 1.0, 0.0, grid_sampler(21, 5.0), 20, 0.0);
    EXPECT_TRUE(rep.pointwise.ok());
    EXPECT_EQ(rep.pointwise.samples_checked, 20u * 21u * 21u);
    EXPECT_GE(rep.min_slack, 0.0);
}

TEST(KernelBound, ScaledLinearKernelSatisfiesBound)
{
    const auto p = linear_problem(41, 0.4, QuadratureKind::Trapezoid);
    const auto b = make_kernel_bound([](double, double) { return 1.0; }, 1.0, p.rule);
    const auto rep = check_kernel_bound(p, p, b, 1.0, 0.0, grid_sampler(41, 0.5), 30, 1e-12);
    EXPECT_TRUE(rep.ok());

    // Halving B far below the true difference produces violations.
    const auto tiny = make_kernel_bound([](double, double) { return 0.01; }, 1.0, p.rule);
    EXPECT_FALSE(check_kernel_bound(p, p, tiny, 1.0, 0.0, grid_sampler(41, 0.5), 30, 1e-12).pointwise.ok());
    EXPECT_THROW(check_kernel_bound(p, p, b, 1.0, 0.0, grid_sampler(33, 0.5), 3, 1e-12), ConfigError);
}

TEST(CauchySchwarzChain, WorkedExamples)
{
    const auto p = linear_problem(41, 0.4, QuadratureKind::Trapezoid);
    const auto b = make_kernel_bound([](double, double) { return 1.0; }, 1.0, p.rule);
    const auto x = GridFunction::constant(1.0, 41, 1.0);
    const auto y = GridFunction::constant(1.0, 41, 0.0);

    const auto same = cauchy_schwarz_chain_check(p, p, b, x, x, 1.0, 0.0, 1e-12);
    EXPECT_EQ(same.w, 0.0);
    EXPECT_TRUE(same.final_ok);

    const auto scaled = cauchy_schwarz_chain_check(p, p, b, x, y, 1.0, 0.0, 1e-12);
    EXPECT_TRUE(scaled.holds);
    EXPECT_GT(scaled.slack, 0.0);
    EXPECT_LE(scaled.w, scaled.triangle + 1e-15);
    EXPECT_LE(scaled.triangle, scaled.kernel_bound);
    EXPECT_LE(scaled.kernel_bound, scaled.cauchy_schwarz);
    EXPECT_LE(scaled.cauchy_schwarz, scaled.budget_step + 1e-15);

    const auto tiny = make_kernel_bound([](double, double) { return 0.01; }, 1.0, p.rule);
    const auto broken = cauchy_schwarz_chain_check(p, p, tiny, x, y, 1.0, 0.0, 1e-12);
    EXPECT_FALSE(broken.kernel_bound_ok);
    EXPECT_FALSE(broken.holds);
}

TEST(CrossConditions, OrderedConstantKernels)
{
    const auto rule = default_rule(1.0, 11);
    const auto mu = GridFunction::constant(1.0, 11, 0.0);
    const IntegralEquationProblem low{Kernel::constant(1.0), mu, rule};
    const IntegralEquationProblem high{Kernel::constant(2.0), mu, rule};
    const auto reps = check_cross_conditions(low, high, grid_sampler(11, 1.0), 10);
    ASSERT_EQ(reps.size(), 2u);
    EXPECT_TRUE(reps[0].ok());
    EXPECT_FALSE(reps[1].ok());
}

TEST(SolveSystem, ReportsDistanceBetweenSolutions)
{
    const auto rule = default_rule(1.0, 11);
    const IntegralEquationProblem a{Kernel::zero(), GridFunction::constant(1.0, 11, 1.0), rule};
    const IntegralEquationProblem b{Kernel::zero(), GridFunction::constant(1.0, 11, 3.0), rule};
    const auto sys = solve_system(a, b, SolverConfig{}, GridFunction::constant(1.0, 11, 0.0));
    EXPECT_DOUBLE_EQ(sys.distance, 1.0);
    const auto same = solve_system(a, a, SolverConfig{}, GridFunction::constant(1.0, 11, 0.0));
    EXPECT_EQ(same.distance, 0.0);
}

TEST(MakeKernel, ConfigFamilies)
{
    EXPECT_EQ(make_kernel({"zero", {}, "identity"})(0.3, 0.4, 5.0), 0.0);
    EXPECT_EQ(make_kernel({"constant", {2.5}, "identity"})(0.3, 0.4, 5.0), 2.5);
    EXPECT_DOUBLE_EQ(make_kernel({"linear-separable", {0.5, 1, 1}, "identity"})(0.5, 0.4, 3.0), 0.5 * 0.5 * 0.4 * 3.0);
    EXPECT_DOUBLE_EQ(make_kernel({"separable", {0.25, 1, 2}, "sin"})(0.5, 0.4, 1.0),
                     0.25 * 0.5 * 0.16 * std::sin(1.0));
    EXPECT_EQ(make_kernel({"linear-separable", {1, 0, 0}, "identity"}).family(), KernelFamily::LinearSeparable);
    EXPECT_THROW(make_kernel({"separable", {1, 1}, "sin"}), ConfigError);
    EXPECT_THROW(make_kernel({"separable", {1, 1, 1}, "cube"}), ConfigError);
    EXPECT_THROW(make_kernel({"volterra", {}, "identity"}), ConfigError);
}
