#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "gmetric/error.hpp"
#include "gmetric/geraghty.hpp"
#include "gmetric/grid_function.hpp"
#include "gmetric/metric.hpp"
#include "gmetric/preorder.hpp"

namespace gmetric {

enum class StopReason { Converged, MaxIter, Stagnated };

std::string_view to_string(StopReason r) noexcept;

struct SolverConfig {
    double lambda = 1.0;
    /// Stop once d_n < epsilon.
    double epsilon = 1e-10;
    std::size_t max_iter = 10000;
    PsiFunction psi = PsiFunction::identity();
    /// Retain every iterate (required by check_cauchy). Otherwise every
    /// `retain_every`-th iterate plus the last two are kept.
    bool track_chain = false;
    std::size_t retain_every = 10;
    ModularGMetric metric = sup_metric();

    /// Throws ConfigError when λ ≤ 0, ε ≤ 0, max_iter < 1 or retain_every < 1.
    void validate() const;
};

/// Record of a Picard run x_{n+1} = T x_n.
struct IterationTrace {
    /// Retained iterates, in order, and their iteration indices (x_0 has index 0).
    std::vector<GridFunction> iterates;
    std::vector<std::size_t> iterate_index;
    bool full_retention = false;
    /// d_n = ω_λ(x_n, x_{n+1}, x_{n+1}), one entry per step performed.
    std::vector<double> d;
    std::vector<double> psi_d;
    /// ratios[k] = d_{k+1}/d_k (NaN where d_k = 0); size d.size() − 1.
    std::vector<double> ratios;
    StopReason stop_reason = StopReason::MaxIter;

    std::size_t iterations() const noexcept { return d.size(); }
};

struct FixedPointResult {
    GridFunction x_star;
    /// ω_λ(x*, T x*, T x*).
    double residual;
    IterationTrace trace;
};

/// An iterate became non-finite; carries the trace up to the failing step.
class DivergenceError : public Error {
public:
    DivergenceError(const std::string& what, IterationTrace partial)
        : Error(what), trace_(std::move(partial))
    {
    }
    const IterationTrace& trace() const noexcept { return trace_; }

private:
    IterationTrace trace_;
};

/// Picard iteration with the pair-form stopping rule d_n < ε.
///
/// Stops with Stagnated when d_n fails to drop by a relative 1e−15 for 50
/// consecutive steps while still above ε. Throws DivergenceError on non-finite values.
FixedPointResult picard_iterate(const Operator& op, const GridFunction& x0, const SolverConfig& cfg);

/// Final d below `tol` and the last (up to) 10 entries of d non-increasing within 1e−12.
/// Throws PreconditionError on an empty trace.
bool check_asymptotic_regularity(const IterationTrace& trace, double tol);

/// Every step of `seq` satisfies seq[k+1] ≤ seq[k] + tol.
bool is_nonincreasing(const std::vector<double>& seq, double tol);

/// Exists N with ω_λ(x_n, x_m, x_l) < eps for all retained n, m, l ≥ N (exhaustive over triples).
/// Throws PreconditionError unless the trace retained every iterate.
bool check_cauchy(const IterationTrace& trace, const ModularGMetric& metric, double lambda, double eps);

struct UniquenessReport {
    /// One slot per start; empty where the run diverged.
    std::vector<std::optional<FixedPointResult>> runs;
    std::vector<std::string> divergence;
    /// distances[i][j] = ω_λ(x*_i, x*_j, x*_j); NaN when either run diverged.
    std::vector<std::vector<double>> distances;
    double max_distance = 0.0;
    /// Starts are ⪯-comparable.
    std::vector<std::vector<bool>> starts_comparable;
    /// The pointwise-min witness z is below both starts and satisfies z ⪯ T z.
    std::vector<std::vector<bool>> witness_ok;
    bool any_diverged = false;
    /// All runs converged and every pairwise distance is below 10·ε.
    bool unique_certified = false;
};

/// Runs picard_iterate from each start concurrently and compares the limits.
UniquenessReport uniqueness_probe(const Operator& op, const std::vector<GridFunction>& starts,
                                  const SolverConfig& cfg, const PreorderRelation& rel);

struct PowerFixedPointResult {
    FixedPointResult result;
    /// ω_λ(T x*, x*, x*) for the fixed point x* of T^m.
    double transfer_residual;
    /// transfer_residual ≤ 10·ε.
    bool transfer_ok;
};

/// Picard iteration on T^m, then checks that the limit is also fixed by T.
PowerFixedPointResult power_fixpoint(const Operator& op, unsigned m, const GridFunction& x0,
                                     const SolverConfig& cfg);

}  // namespace gmetric
