#include "gmetric/preorder.hpp"

#include <algorithm>
#include <vector>

#include "gmetric/error.hpp"
#include "gmetric/fixpoint.hpp"

namespace gmetric {

bool leq(const PreorderRelation& rel, const GridFunction& x, const GridFunction& y)
{
    require_compatible(x, y);
    for (std::size_t i = 0; i < x.size(); ++i) {
        if (!(x[i] <= y[i] + rel.tolerance)) {
            return false;
        }
    }
    return true;
}

bool comparable(const PreorderRelation& rel, const GridFunction& x, const GridFunction& y)
{
    return leq(rel, x, y) || leq(rel, y, x);
}

ComparabilityWitness comparability_witness(const GridFunction& x, const GridFunction& y)
{
    require_compatible(x, y);
    std::vector<double> v(x.size());
    for (std::size_t i = 0; i < v.size(); ++i) {
        v[i] = std::min(x[i], y[i]);
    }
    return {GridFunction(x.omega_len(), std::move(v)), Relation::LEQ, Relation::LEQ};
}

bool witness_holds(const PreorderRelation& rel, const ComparabilityWitness& w, const GridFunction& x,
                   const GridFunction& y)
{
    auto holds = [&](Relation r, const GridFunction& other) {
        return r == Relation::LEQ ? leq(rel, w.z, other) : leq(rel, other, w.z);
    };
    return holds(w.relation_to_x, x) && holds(w.relation_to_y, y);
}

PropertyReport is_nondecreasing_map(const PreorderRelation& rel, const Operator& op, const GridSampler& sampler,
                                    std::size_t count)
{
    if (count < 1) {
        throw ConfigError("monotonicity check: sample count must be at least 1");
    }
    PropertyReport report{"nondecreasing_map", 0, rel.tolerance, {}};
    for (std::size_t s = 0; s < count; ++s) {
        auto rng = sampler.engine_for(s);
        const GridFunction x = sampler.draw(rng);
        const GridFunction y = sampler.draw_above(rng, x);
        const GridFunction tx = op(x);
        const GridFunction ty = op(y);
        ++report.samples_checked;
        if (!leq(rel, tx, ty)) {
            double excess = 0.0;
            for (std::size_t i = 0; i < tx.size(); ++i) {
                excess = std::max(excess, tx[i] - ty[i]);
            }
            report.violations.push_back({s, {}, excess, rel.tolerance, excess - rel.tolerance});
        }
    }
    return report;
}

bool chain_check(const PreorderRelation& rel, const IterationTrace& trace)
{
    const auto& it = trace.iterates;
    for (std::size_t k = 1; k < it.size(); ++k) {
        if (!leq(rel, it[k - 1], it[k])) {
            return false;
        }
    }
    return true;
}

}  // namespace gmetric
