#include <gtest/gtest.h>

#include "gmetric/error.hpp"
#include "gmetric/fixpoint.hpp"
#include "gmetric/integral_eq.hpp"
#include "gmetric/preorder.hpp"
#include "gmetric/quadrature.hpp"
#include "oracles.hpp"

using namespace gmetric;

namespace {

GridFunction f(const std::function<double(double)>& g, std::size_t n = 11)
{
    return GridFunction::sample(1.0, n, g);
}

Operator pointwise(std::function<double(double)> g)
{
    return [g](const GridFunction& u) {
        std::vector<double> v(u.values().begin(), u.values().end());
        for (double& e : v) e = g(e);
        return GridFunction(u.omega_len(), v);
    };
}

GridSampler sampler33()
{
    SamplerConfig c;
    c.n = 33;
    c.seed = 2;
    return GridSampler(c);
}

}  // namespace

TEST(Leq, WorkedExamples)
{
    const PreorderRelation rel;
    EXPECT_TRUE(leq(rel, f([](double) { return 0.0; }), f([](double) { return 1.0; })));
    EXPECT_TRUE(leq(rel, f([](double t) { return t; }), f([](double t) { return t; })));
    EXPECT_FALSE(leq(rel, f([](double t) { return t; }), f([](double t) { return 1.0 - t; })));
    EXPECT_THROW(leq(rel, f([](double t) { return t; }), f([](double t) { return t; }, 12)), DimensionMismatch);
}

TEST(Leq, ToleranceAllowsSlack)
{
    const auto x = GridFunction::constant(1.0, 5, 1.0 + 1e-13);
    const auto y = GridFunction::constant(1.0, 5, 1.0);
    EXPECT_FALSE(leq(PreorderRelation{}, x, y));
    EXPECT_TRUE(leq(PreorderRelation{1e-12}, x, y));
}

TEST(Leq, ReflexiveTransitiveAndAntisymmetricUpToEquality)
{
    oracle::SplitMix rng(31);
    const PreorderRelation rel;
    for (int k = 0; k < 500; ++k) {
        const auto x = oracle::random_grid(rng, 1.0, 9, 3.0);
        std::vector<double> vy(x.values().begin(), x.values().end());
        std::vector<double> vz(vy);
        for (std::size_t i = 0; i < vy.size(); ++i) {
            vy[i] += rng.uniform(0.0, 1.0);
            vz[i] = vy[i] + rng.uniform(0.0, 1.0);
        }
        const GridFunction y(1.0, vy), z(1.0, vz);
        EXPECT_TRUE(leq(rel, x, x));
        ASSERT_TRUE(leq(rel, x, y) && leq(rel, y, z));
        EXPECT_TRUE(leq(rel, x, z));
        if (leq(rel, x, y) && leq(rel, y, x)) {
            EXPECT_EQ(sup_distance(x, y), 0.0);
        }
        EXPECT_TRUE(comparable(rel, x, z));
    }
}

TEST(ComparabilityWitness, PointwiseMinimumLiesBelowBoth)
{
    const auto x = f([](double t) { return t; });
    const auto y = f([](double t) { return 1.0 - t; });
    EXPECT_FALSE(comparable(PreorderRelation{}, x, y));
    const auto w = comparability_witness(x, y);
    EXPECT_EQ(w.relation_to_x, Relation::LEQ);
    EXPECT_EQ(w.relation_to_y, Relation::LEQ);
    EXPECT_TRUE(witness_holds(PreorderRelation{}, w, x, y));
    EXPECT_TRUE(leq(PreorderRelation{}, w.z, x));
}

TEST(NondecreasingMap, WorkedExamples)
{
    const PreorderRelation rel;
    EXPECT_TRUE(is_nondecreasing_map(rel, pointwise([](double u) { return u; }), sampler33(), 500).ok());

    const IntegralEquationProblem p{Kernel::separable([](double t) { return 1.0 + t; }, [](double s) { return s; },
                                                      [](double u) { return std::atan(u); }),
                                    GridFunction::constant(1.0, 33, 0.5), default_rule(1.0, 33)};
    const auto quad = is_nondecreasing_map(rel, discretize(p), sampler33(), 500);
    EXPECT_TRUE(quad.ok());
    EXPECT_EQ(quad.samples_checked, 500u);

    const auto neg = is_nondecreasing_map(rel, pointwise([](double u) { return -u; }), sampler33(), 500);
    EXPECT_FALSE(neg.ok());
}

TEST(ChainCheck, WorkedExamples)
{
    const PreorderRelation rel;
    SolverConfig cfg;
    cfg.track_chain = true;

    const auto constant = picard_iterate(pointwise([](double) { return 2.0; }), GridFunction::constant(1.0, 11, 0.0),
                                         cfg);
    EXPECT_TRUE(chain_check(rel, constant.trace));

    const IntegralEquationProblem p{Kernel::linear_separable([](double t) { return 0.5 * t; }, [](double s) { return s; }),
                                    GridFunction::constant(1.0, 41, 1.0), default_rule(1.0, 41)};
    const auto fred = picard_iterate(discretize(p), GridFunction::constant(1.0, 41, 0.0), cfg);
    EXPECT_TRUE(chain_check(rel, fred.trace));

    SolverConfig short_cfg = cfg;
    short_cfg.max_iter = 6;
    const auto flip = picard_iterate(pointwise([](double u) { return -u; }), GridFunction::constant(1.0, 11, -1.0),
                                     short_cfg);
    EXPECT_FALSE(chain_check(rel, flip.trace));
}
