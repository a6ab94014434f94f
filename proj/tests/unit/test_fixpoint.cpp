#include <gtest/gtest.h>

#include <cmath>

#include "gmetric/error.hpp"
#include "gmetric/fixpoint.hpp"
#include "gmetric/integral_eq.hpp"
#include "gmetric/quadrature.hpp"
#include "oracles.hpp"

using namespace gmetric;

namespace {

GridFunction c(double v, std::size_t n = 11)
{
    return GridFunction::constant(1.0, n, v);
}

Operator affine(double q, double b = 0.0)
{
    return [q, b](const GridFunction& u) {
        std::vector<double> v(u.values().begin(), u.values().end());
        for (double& e : v) e = q * e + b;
        return GridFunction(u.omega_len(), v);
    };
}

Operator linear_fredholm(std::size_t n)
{
    return discretize(IntegralEquationProblem{
        Kernel::linear_separable([](double t) { return 0.5 * t; }, [](double s) { return s; }), c(1.0, n),
        make_rule(QuadratureKind::Simpson, 1.0, n)});
}

double error_vs_analytic(const GridFunction& u)
{
    double e = 0.0;
    for (std::size_t i = 0; i < u.size(); ++i) e = std::max(e, std::abs(u[i] - oracle::linear_solution(u.node(i))));
    return e;
}

}  // namespace

TEST(PicardIterate, IdentityConvergesImmediately)
{
    const auto x0 = GridFunction::sample(1.0, 11, [](double t) { return std::sin(t); });
    const auto r = picard_iterate(affine(1.0), x0, SolverConfig{});
    EXPECT_EQ(r.trace.stop_reason, StopReason::Converged);
    ASSERT_EQ(r.trace.d.size(), 1u);
    EXPECT_EQ(r.trace.d[0], 0.0);
    EXPECT_EQ(r.x_star, x0);
}

TEST(PicardIterate, ConstantMapConvergesAtStepOne)
{
    const auto r = picard_iterate(affine(0.0, 3.0), c(0.0), SolverConfig{});
    EXPECT_EQ(r.trace.stop_reason, StopReason::Converged);
    ASSERT_EQ(r.trace.d.size(), 2u);
    EXPECT_DOUBLE_EQ(r.trace.d[0], 1.5);
    EXPECT_EQ(r.trace.d[1], 0.0);
    EXPECT_EQ(r.x_star, c(3.0));
}

TEST(PicardIterate, LinearFredholmMatchesAnalyticSolution)
{
    SolverConfig cfg;
    cfg.epsilon = 1e-12;
    const auto r = picard_iterate(linear_fredholm(401), c(0.0, 401), cfg);
    EXPECT_EQ(r.trace.stop_reason, StopReason::Converged);
    EXPECT_LE(error_vs_analytic(r.x_star), 1e-10);
    EXPECT_LE(r.residual, cfg.epsilon);
}

TEST(PicardIterate, AffineRatiosAreConstant)
{
    for (double q : {0.5, -0.3, 0.9}) {
        SolverConfig cfg;
        cfg.epsilon = 1e-12;
        const auto r = picard_iterate(affine(q, 1.0), c(0.0), cfg);
        ASSERT_GT(r.trace.ratios.size(), 3u);
        // Rounding in x_n (|x_n| < 10) perturbs d_n by ~1e-15, so allow that relative to d.
        for (std::size_t k = 0; k < r.trace.ratios.size(); ++k) {
            EXPECT_NEAR(r.trace.ratios[k], std::abs(q), 1e-12 + 1e-14 / r.trace.d[k + 1]);
        }
    }
}

TEST(PicardIterate, HalvingGapsAreExact)
{
    SolverConfig cfg;
    cfg.lambda = 1.0;
    const auto r = picard_iterate(affine(0.5), c(1.0), cfg);
    for (std::size_t n = 0; n < r.trace.d.size(); ++n) {
        EXPECT_EQ(r.trace.d[n], std::ldexp(1.0, -static_cast<int>(n) - 1) / 2.0);
    }
    EXPECT_TRUE(check_asymptotic_regularity(r.trace, 1e-9));
}

TEST(PicardIterate, ResidualRecomputationIsIdempotent)
{
    SolverConfig cfg;
    const auto op = affine(0.25, 2.0);
    const auto r = picard_iterate(op, c(0.0), cfg);
    const double again = eval_omega_pair(cfg.metric, cfg.lambda, r.x_star, op(r.x_star));
    EXPECT_EQ(r.residual, again);
}

TEST(PicardIterate, PsiSequenceFollowsMonotoneGaps)
{
    SolverConfig cfg;
    cfg.psi = PsiFunction::bounded_rational();
    const auto r = picard_iterate(affine(0.6, 1.0), c(5.0), cfg);
    EXPECT_TRUE(is_nonincreasing(r.trace.d, 0.0));
    EXPECT_TRUE(is_nonincreasing(r.trace.psi_d, 0.0));
}

TEST(PicardIterate, TranslationStagnates)
{
    SolverConfig cfg;
    cfg.max_iter = 500;
    const auto r = picard_iterate(affine(1.0, 1.0), c(0.0), cfg);
    EXPECT_EQ(r.trace.stop_reason, StopReason::Stagnated);
    for (double d : r.trace.d) EXPECT_DOUBLE_EQ(d, 0.5);
    EXPECT_FALSE(check_asymptotic_regularity(r.trace, 1e-6));
}

TEST(PicardIterate, MaxIterStops)
{
    SolverConfig cfg;
    cfg.max_iter = 5;
    const auto r = picard_iterate(affine(0.99, 1.0), c(0.0), cfg);
    EXPECT_EQ(r.trace.stop_reason, StopReason::MaxIter);
    EXPECT_EQ(r.trace.iterations(), 5u);
}

TEST(PicardIterate, DivergenceCarriesPartialTrace)
{
    try {
        picard_iterate(affine(1e200), c(1.0), SolverConfig{});
        FAIL() << "expected divergence";
    } catch (const DivergenceError& e) {
        EXPECT_GE(e.trace().iterates.size(), 1u);
    }
}

TEST(PicardIterate, DefaultRetentionThinsIterates)
{
    SolverConfig cfg;
    cfg.epsilon = 1e-14;
    const auto r = picard_iterate(affine(0.8, 1.0), c(0.0), cfg);
    const auto& idx = r.trace.iterate_index;
    ASSERT_GE(idx.size(), 3u);
    EXPECT_FALSE(r.trace.full_retention);
    for (std::size_t k = 0; k + 2 < idx.size(); ++k) EXPECT_EQ(idx[k] % 10, 0u);
    EXPECT_EQ(idx.back(), r.trace.iterations());
    EXPECT_EQ(idx[idx.size() - 2] + 1, idx.back());
}

TEST(SolverConfig, Validation)
{
    SolverConfig cfg;
    cfg.epsilon = 0.0;
    EXPECT_THROW(cfg.validate(), ConfigError);
    cfg = SolverConfig{};
    cfg.lambda = -1.0;
    EXPECT_THROW(cfg.validate(), ConfigError);
    cfg = SolverConfig{};
    cfg.max_iter = 0;
    EXPECT_THROW(cfg.validate(), ConfigError);
}

TEST(AsymptoticRegularity, IdentityAndEmpty)
{
    const auto r = picard_iterate(affine(1.0), c(2.0), SolverConfig{});
    EXPECT_TRUE(check_asymptotic_regularity(r.trace, 1e-12));
    EXPECT_THROW(check_asymptotic_regularity(IterationTrace{}, 1e-12), PreconditionError);
}

TEST(CheckCauchy, WorkedExamples)
{
    SolverConfig cfg;
    cfg.track_chain = true;
    cfg.max_iter = 200;
    const auto contraction = picard_iterate(affine(0.5, 1.0), c(0.0), cfg);
    EXPECT_TRUE(check_cauchy(contraction.trace, cfg.metric, cfg.lambda, 1e-6));

    const auto translation = picard_iterate(affine(1.0, 1.0), c(0.0), cfg);
    EXPECT_FALSE(check_cauchy(translation.trace, cfg.metric, cfg.lambda, 1e-3));

    IterationTrace single;
    single.iterates = {c(0.0)};
    single.iterate_index = {0};
    single.full_retention = true;
    EXPECT_TRUE(check_cauchy(single, cfg.metric, cfg.lambda, 1e-3));

    SolverConfig thin;
    const auto thinned = picard_iterate(affine(0.5, 1.0), c(0.0), thin);
    EXPECT_THROW(check_cauchy(thinned.trace, cfg.metric, cfg.lambda, 1e-6), PreconditionError);
}

TEST(UniquenessProbe, LinearFredholmFromTwoStarts)
{
    SolverConfig cfg;
    cfg.epsilon = 1e-12;
    const auto rep = uniqueness_probe(linear_fredholm(101), {c(0.0, 101), c(10.0, 101)}, cfg, PreorderRelation{});
    EXPECT_FALSE(rep.any_diverged);
    EXPECT_LE(rep.distances[0][1], 1e-10);
    EXPECT_TRUE(rep.unique_certified);
    EXPECT_TRUE(rep.starts_comparable[0][1]);
}

TEST(UniquenessProbe, ConstantMapAndIdentity)
{
    const auto constant = uniqueness_probe(affine(0.0, 2.0), {c(-3.0), c(4.0)}, SolverConfig{}, PreorderRelation{});
    EXPECT_EQ(constant.distances[0][1], 0.0);
    EXPECT_TRUE(constant.unique_certified);

    const auto id = uniqueness_probe(affine(1.0), {c(0.0), c(1.0)}, SolverConfig{}, PreorderRelation{});
    EXPECT_DOUBLE_EQ(id.distances[0][1], 0.5);
    EXPECT_FALSE(id.unique_certified);
}

TEST(UniquenessProbe, DivergentRunIsFlagged)
{
    Operator blow = [](const GridFunction& u) {
        std::vector<double> v(u.values().begin(), u.values().end());
        for (double& e : v) e = e * 1e200;
        return GridFunction(u.omega_len(), v);
    };
    const auto rep = uniqueness_probe(blow, {c(0.0), c(1.0)}, SolverConfig{}, PreorderRelation{});
    EXPECT_TRUE(rep.any_diverged);
    EXPECT_FALSE(rep.unique_certified);
    EXPECT_TRUE(std::isnan(rep.distances[0][1]));
}

TEST(PowerFixpoint, WorkedExamples)
{
    SolverConfig cfg;
    cfg.epsilon = 1e-12;
    const auto op = linear_fredholm(401);
    const auto x0 = c(0.0, 401);
    const auto base = picard_iterate(op, x0, cfg);
    const auto m1 = power_fixpoint(op, 1, x0, cfg);
    EXPECT_EQ(m1.result.x_star, base.x_star);
    EXPECT_EQ(m1.result.trace.d, base.trace.d);
    const auto m3 = power_fixpoint(op, 3, x0, cfg);
    EXPECT_LE(sup_distance(m3.result.x_star, base.x_star), 10 * cfg.epsilon);
    EXPECT_TRUE(m3.transfer_ok);

    const auto flip = power_fixpoint(affine(-0.5), 2, c(1.0), cfg);
    EXPECT_LE(sup_distance(flip.result.x_star, c(0.0)), cfg.epsilon);
    EXPECT_LE(flip.transfer_residual, cfg.epsilon);
}
