#pragma once

#include <functional>
#include <string>
#include <utility>

#include "gmetric/grid_function.hpp"

namespace gmetric {

/// A modular G-metric ω: (λ, x, y, z) → [0, ∞].
///
/// Holds an arbitrary evaluator; +∞ is represented by the floating-point
/// infinity. The evaluator is called only after argument validation, so it may
/// assume λ > 0 and compatible grids.
class ModularGMetric {
public:
    using Evaluator =
        std::function<double(double lambda, const GridFunction& x, const GridFunction& y, const GridFunction& z)>;

    ModularGMetric(std::string name, Evaluator evaluator)
        : name_(std::move(name)), evaluator_(std::move(evaluator))
    {
    }

    const std::string& name() const noexcept { return name_; }
    const Evaluator& evaluator() const noexcept { return evaluator_; }

private:
    std::string name_;
    Evaluator evaluator_;
};

/// ω_λ(x,y,z) = 1/(2(1+λ)) · max_t (|x−y| + |y−z| + |x−z|).
///
/// Per-node contributions are sorted before summing, so every permutation of
/// (x, y, z) yields bit-identical results, and ω_λ(x,y,y) equals
/// max|x−y|/(1+λ) exactly.
ModularGMetric sup_metric();

/// Raw sup-form value without validation; used by sup_metric().
double sup_metric_value(double lambda, const GridFunction& x, const GridFunction& y, const GridFunction& z);

/// Validated evaluation. Throws DomainError for λ ≤ 0 and DimensionMismatch for incompatible grids.
double eval_omega(const ModularGMetric& metric, double lambda, const GridFunction& x, const GridFunction& y,
                  const GridFunction& z);

/// ω_λ(x, y, y).
double eval_omega_pair(const ModularGMetric& metric, double lambda, const GridFunction& x, const GridFunction& y);

/// First indices at which each of the five ω-convergence forms of a sequence
/// toward `limit` stays below eps from then on, over every λ in `lambdas`.
///
/// Forms: (1) ω(x_n, x_m, x) for n,m ≥ N; (2) the modular pair form ω(x_n, x, x);
/// (3) ω(x_n, x_n, x); (4) ω(x_n, x, x); (5) ω(x_m, x_n, x) for m,n ≥ N.
/// An index equal to seq.size() means the form never settled below eps.
struct ConvergenceForms {
    std::size_t first_index[5];
    /// max over the five indices.
    std::size_t common_index;
    bool all_converged;
};

ConvergenceForms convergence_forms(const ModularGMetric& metric, const std::vector<GridFunction>& seq,
                                   const GridFunction& limit, const std::vector<double>& lambdas, double eps);

}  // namespace gmetric
