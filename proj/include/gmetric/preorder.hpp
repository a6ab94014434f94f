#pragma once

#include <cstddef>

#include "gmetric/grid_function.hpp"
#include "gmetric/report.hpp"
#include "gmetric/sampling.hpp"

namespace gmetric {

struct IterationTrace;

/// Pointwise preorder x ⪯ y ⟺ x(t_i) ≤ y(t_i) + tolerance at every node.
/// Transitive only for tolerance 0, which is the default.
struct PreorderRelation {
    double tolerance = 0.0;
};

/// Throws DimensionMismatch for incompatible grids.
bool leq(const PreorderRelation& rel, const GridFunction& x, const GridFunction& y);

/// x ⪯ y or y ⪯ x.
bool comparable(const PreorderRelation& rel, const GridFunction& x, const GridFunction& y);

enum class Relation { LEQ, GEQ };

/// A z comparable to both x and y.
struct ComparabilityWitness {
    GridFunction z;
    Relation relation_to_x;
    Relation relation_to_y;
};

/// The pointwise minimum of x and y, which lies below both.
ComparabilityWitness comparability_witness(const GridFunction& x, const GridFunction& y);

/// True when the witness relations hold under `rel`.
bool witness_holds(const PreorderRelation& rel, const ComparabilityWitness& w, const GridFunction& x,
                   const GridFunction& y);

/// Samples pairs x ⪯ y and reports every pair where T x ⪯ T y fails.
/// Violation params are empty; lhs is the worst node excess max(Tx − Ty), rhs the tolerance.
PropertyReport is_nondecreasing_map(const PreorderRelation& rel, const Operator& op, const GridSampler& sampler,
                                    std::size_t count);

/// True iff consecutive retained iterates satisfy x_k ⪯ x_{k+1}.
bool chain_check(const PreorderRelation& rel, const IterationTrace& trace);

}  // namespace gmetric
