#include "gmetric/fixpoint.hpp"

#include <algorithm>
#include <cmath>
#include <future>
#include <limits>

namespace gmetric {

namespace {

constexpr double kStagnationRelativeDrop = 1e-15;
constexpr std::size_t kStagnationWindow = 50;
constexpr std::size_t kRegularityTail = 10;
constexpr double kRegularityMonotoneTol = 1e-12;
constexpr double kUniquenessFactor = 10.0;

void retain(IterationTrace& trace, const GridFunction& x, std::size_t index, std::size_t every)
{
    trace.iterates.push_back(x);
    trace.iterate_index.push_back(index);
    if (trace.full_retention) {
        return;
    }
    // The third-from-last entry is no longer among the last two.
    const std::size_t k = trace.iterates.size();
    if (k >= 3 && trace.iterate_index[k - 3] % every != 0) {
        trace.iterates.erase(trace.iterates.begin() + static_cast<std::ptrdiff_t>(k - 3));
        trace.iterate_index.erase(trace.iterate_index.begin() + static_cast<std::ptrdiff_t>(k - 3));
    }
}

GridFunction apply(const Operator& op, const GridFunction& x, const IterationTrace& trace)
{
    try {
        GridFunction y = op(x);
        require_compatible(x, y);
        return y;
    } catch (const DomainError& e) {
        throw DivergenceError(std::string("iteration diverged: ") + e.what(), trace);
    }
}

}  // namespace

std::string_view to_string(StopReason r) noexcept
{
    switch (r) {
    case StopReason::Converged: return "Converged";
    case StopReason::MaxIter: return "MaxIter";
    case StopReason::Stagnated: return "Stagnated";
    }
    return "?";
}

void SolverConfig::validate() const
{
    if (!(lambda > 0.0) || !std::isfinite(lambda)) {
        throw ConfigError("solver: lambda must be positive");
    }
    if (!(epsilon > 0.0) || !std::isfinite(epsilon)) {
        throw ConfigError("solver: epsilon must be > 0");
    }
    if (max_iter < 1) {
        throw ConfigError("solver: max_iter must be at least 1");
    }
    if (retain_every < 1) {
        throw ConfigError("solver: retain_every must be at least 1");
    }
}

FixedPointResult picard_iterate(const Operator& op, const GridFunction& x0, const SolverConfig& cfg)
{
    cfg.validate();
    IterationTrace trace;
    trace.full_retention = cfg.track_chain;
    retain(trace, x0, 0, cfg.retain_every);

    GridFunction x = x0;
    std::size_t stalled = 0;
    trace.stop_reason = StopReason::MaxIter;

    for (std::size_t n = 0; n < cfg.max_iter; ++n) {
        GridFunction next = apply(op, x, trace);
        const double d = eval_omega_pair(cfg.metric, cfg.lambda, x, next);
        if (!std::isfinite(d)) {
            throw DivergenceError("iteration diverged: non-finite d_" + std::to_string(n), trace);
        }
        if (!trace.d.empty()) {
            const double prev = trace.d.back();
            trace.ratios.push_back(prev > 0.0 ? d / prev : std::numeric_limits<double>::quiet_NaN());
            stalled = (d < prev * (1.0 - kStagnationRelativeDrop)) ? 0 : stalled + 1;
        }
        trace.d.push_back(d);
        trace.psi_d.push_back(psi_eval(cfg.psi, d));
        x = std::move(next);
        retain(trace, x, n + 1, cfg.retain_every);

        if (d < cfg.epsilon) {
            trace.stop_reason = StopReason::Converged;
            break;
        }
        if (stalled >= kStagnationWindow) {
            trace.stop_reason = StopReason::Stagnated;
            break;
        }
    }

    const GridFunction tx = apply(op, x, trace);
    const double residual = eval_omega_pair(cfg.metric, cfg.lambda, x, tx);
    return {std::move(x), residual, std::move(trace)};
}

bool is_nonincreasing(const std::vector<double>& seq, double tol)
{
    for (std::size_t k = 1; k < seq.size(); ++k) {
        if (!(seq[k] <= seq[k - 1] + tol)) {
            return false;
        }
    }
    return true;
}

bool check_asymptotic_regularity(const IterationTrace& trace, double tol)
{
    if (trace.d.empty()) {
        throw PreconditionError("asymptotic regularity: empty trace");
    }
    const std::size_t from = trace.d.size() > kRegularityTail ? trace.d.size() - kRegularityTail : 0;
    const std::vector<double> tail(trace.d.begin() + static_cast<std::ptrdiff_t>(from), trace.d.end());
    return trace.d.back() < tol && is_nonincreasing(tail, kRegularityMonotoneTol);
}

bool check_cauchy(const IterationTrace& trace, const ModularGMetric& metric, double lambda, double eps)
{
    if (!trace.full_retention) {
        throw PreconditionError("Cauchy check needs every iterate retained (track_chain)");
    }
    const auto& x = trace.iterates;
    const std::size_t k = x.size();
    if (k <= 1) {
        return true;
    }
    // Smallest N whose tail satisfies the bound. Symmetry lets us enumerate
    // n ≤ m ≤ l only; triples whose smallest index is n are added at step n.
    // The tail must hold at least two iterates, otherwise the check is vacuous.
    double worst = 0.0;
    std::size_t smallest = k;
    for (std::size_t n = k; n-- > 0;) {
        for (std::size_t m = n; m < k; ++m) {
            for (std::size_t l = m; l < k; ++l) {
                worst = std::max(worst, eval_omega(metric, lambda, x[n], x[m], x[l]));
            }
        }
        if (!(worst < eps)) {
            break;
        }
        smallest = n;
    }
    return smallest + 2 <= k;
}

UniquenessReport uniqueness_probe(const Operator& op, const std::vector<GridFunction>& starts,
                                  const SolverConfig& cfg, const PreorderRelation& rel)
{
    if (starts.size() < 2) {
        throw ConfigError("uniqueness probe: need at least two starting points");
    }
    cfg.validate();
    const std::size_t k = starts.size();

    std::vector<std::future<FixedPointResult>> futures;
    futures.reserve(k);
    for (const auto& s : starts) {
        futures.push_back(std::async(std::launch::async, [&op, &cfg, s] { return picard_iterate(op, s, cfg); }));
    }

    UniquenessReport r;
    r.runs.resize(k);
    r.divergence.resize(k);
    for (std::size_t i = 0; i < k; ++i) {
        try {
            r.runs[i] = futures[i].get();
        } catch (const DivergenceError& e) {
            r.divergence[i] = e.what();
            r.any_diverged = true;
        }
    }

    const double nan = std::numeric_limits<double>::quiet_NaN();
    r.distances.assign(k, std::vector<double>(k, nan));
    r.starts_comparable.assign(k, std::vector<bool>(k, false));
    r.witness_ok.assign(k, std::vector<bool>(k, false));
    bool all_close = !r.any_diverged;
    for (std::size_t i = 0; i < k; ++i) {
        for (std::size_t j = 0; j < k; ++j) {
            r.starts_comparable[i][j] = comparable(rel, starts[i], starts[j]);
            const auto w = comparability_witness(starts[i], starts[j]);
            r.witness_ok[i][j] = witness_holds(rel, w, starts[i], starts[j]) && leq(rel, w.z, op(w.z));
            if (r.runs[i] && r.runs[j]) {
                const double dist = eval_omega_pair(cfg.metric, cfg.lambda, r.runs[i]->x_star, r.runs[j]->x_star);
                r.distances[i][j] = dist;
                r.max_distance = std::max(r.max_distance, dist);
                all_close = all_close && dist < kUniquenessFactor * cfg.epsilon;
                all_close = all_close && r.runs[i]->trace.stop_reason == StopReason::Converged;
            }
        }
    }
    r.unique_certified = all_close;
    return r;
}

PowerFixedPointResult power_fixpoint(const Operator& op, unsigned m, const GridFunction& x0,
                                     const SolverConfig& cfg)
{
    const Operator power = compose_power(op, m);
    FixedPointResult result = picard_iterate(power, x0, cfg);
    const GridFunction tx = op(result.x_star);
    const double transfer = eval_omega(cfg.metric, cfg.lambda, tx, result.x_star, result.x_star);
    const bool ok = transfer <= kUniquenessFactor * cfg.epsilon;
    return {std::move(result), transfer, ok};
}

}  // namespace gmetric
