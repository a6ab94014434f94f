#include <gtest/gtest.h>

#include <cmath>

#include "gmetric/axioms.hpp"
#include "gmetric/metric.hpp"

using namespace gmetric;

namespace {

GridSampler axiom_sampler(std::uint64_t seed = 0)
{
    SamplerConfig cfg;
    cfg.n = 33;
    cfg.amplitude = 10.0;
    cfg.lambda_max = 5.0;
    cfg.seed = seed;
    return GridSampler(cfg);
}

/// Sup metric with the |y − z| contribution subtracted instead of added.
ModularGMetric sign_flipped_metric()
{
    return ModularGMetric("sign-flipped", [](double lambda, const GridFunction& x, const GridFunction& y,
                                             const GridFunction& z) {
        double m = 0.0;
        for (std::size_t i = 0; i < x.size(); ++i) {
            m = std::max(m, std::abs(x[i] - y[i]) - std::abs(y[i] - z[i]) + std::abs(x[i] - z[i]));
        }
        return m / (2.0 * (1.0 + lambda));
    });
}

const AxiomReport& find(const std::vector<AxiomReport>& reps, AxiomId id)
{
    for (const auto& r : reps) {
        if (r.axiom_id == id) return r;
    }
    throw std::runtime_error("missing report");
}

/// Sup metric whose value grows with λ, so w_{λ+μ} outruns w_λ + w_μ.
ModularGMetric lambda_growing_metric()
{
    return ModularGMetric("lambda-growing", [](double lambda, const GridFunction& x, const GridFunction& y,
                                               const GridFunction& z) {
        double m = 0.0;
        for (std::size_t i = 0; i < x.size(); ++i) {
            m = std::max(m, std::abs(x[i] - y[i]) + std::abs(y[i] - z[i]) + std::abs(x[i] - z[i]));
        }
        return m * std::exp(lambda) / 2.0;
    });
}

}  // namespace

TEST(CheckAxioms, SupMetricHasNoViolations)
{
    const auto reps = check_axioms(sup_metric(), axiom_sampler(), 1000, 1e-12);
    ASSERT_EQ(reps.size(), 5u);
    for (const auto& r : reps) {
        EXPECT_TRUE(r.ok()) << to_string(r.axiom_id);
        EXPECT_EQ(r.samples_checked, 1000u) << to_string(r.axiom_id);
    }
}

TEST(CheckAxioms, SignFlippedMutantBreaksSymmetry)
{
    const auto reps = check_axioms(sign_flipped_metric(), axiom_sampler(), 1000, 1e-12);
    EXPECT_FALSE(find(reps, AxiomId::G4).ok());
}

TEST(CheckAxioms, LambdaGrowingMutantBreaksRectangleInequality)
{
    const auto reps = check_axioms(lambda_growing_metric(), axiom_sampler(), 1000, 1e-12);
    EXPECT_FALSE(find(reps, AxiomId::G5).ok());
    EXPECT_TRUE(find(reps, AxiomId::G4).ok());
}

TEST(CheckAxioms, CoincidentDrawsSatisfyG1ForAnyMetric)
{
    for (const auto& metric : {sup_metric(), sign_flipped_metric()}) {
        const auto reps = check_axioms_coincident(metric, axiom_sampler(3), 200, 1e-12);
        EXPECT_TRUE(find(reps, AxiomId::G1).ok()) << metric.name();
    }
}

TEST(CheckAxioms, DeterministicForSeed)
{
    const auto a = check_axioms(sign_flipped_metric(), axiom_sampler(9), 300);
    const auto b = check_axioms(sign_flipped_metric(), axiom_sampler(9), 300);
    ASSERT_EQ(a.size(), b.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
        ASSERT_EQ(a[i].violations.size(), b[i].violations.size());
        for (std::size_t k = 0; k < a[i].violations.size(); ++k) {
            EXPECT_EQ(a[i].violations[k].lhs, b[i].violations[k].lhs);
            EXPECT_EQ(a[i].violations[k].sample, b[i].violations[k].sample);
        }
    }
}

TEST(DerivedInequalities, SupMetricHasNoViolations)
{
    const auto reps = check_derived_inequalities(sup_metric(), axiom_sampler(), 1000, 1e-12);
    ASSERT_EQ(reps.size(), 6u);
    for (const auto& r : reps) {
        EXPECT_TRUE(r.ok()) << to_string(r.axiom_id);
        EXPECT_GT(r.samples_checked, 0u) << to_string(r.axiom_id);
    }
}

TEST(DerivedInequalities, HandEvaluatedItemFour)
{
    const auto m = sup_metric();
    const auto x = GridFunction::constant(1.0, 11, 0.0);
    const auto y = GridFunction::constant(1.0, 11, 1.0);
    const auto z = GridFunction::constant(1.0, 11, 2.0);
    const auto a = GridFunction::constant(1.0, 11, 1.0);
    const double lhs = eval_omega(m, 1.0, x, y, z);
    const double rhs = eval_omega(m, 0.5, x, a, z) + eval_omega(m, 0.5, a, y, z);
    EXPECT_DOUBLE_EQ(lhs, 1.0);
    EXPECT_DOUBLE_EQ(rhs, 2.0);
}

TEST(DerivedInequalities, CoincidentTriplesHoldTrivially)
{
    const auto m = sup_metric();
    const auto x = GridFunction::sample(1.0, 11, [](double t) { return std::exp(t); });
    for (double lam : {0.1, 1.0, 4.0}) {
        EXPECT_EQ(eval_omega(m, lam, x, x, x), 0.0);
        EXPECT_LE(eval_omega(m, lam, x, x, x), 2.0 * eval_omega(m, lam / 2.0, x, x, x));
    }
}

TEST(AxiomId, Names)
{
    EXPECT_EQ(to_string(AxiomId::G1), "G1");
    EXPECT_EQ(to_string(AxiomId::P2_6), "P2_6");
}
