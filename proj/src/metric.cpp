#include "gmetric/metric.hpp"

#include <algorithm>
#include <array>
#include <cmath>

#include "gmetric/error.hpp"

namespace gmetric {

double sup_metric_value(double lambda, const GridFunction& x, const GridFunction& y, const GridFunction& z)
{
    double m = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        std::array<double, 3> c{std::abs(x[i] - y[i]), std::abs(y[i] - z[i]), std::abs(x[i] - z[i])};
        std::sort(c.begin(), c.end());
        m = std::max(m, (c[0] + c[1]) + c[2]);
    }
    return m / (2.0 * (1.0 + lambda));
}

ModularGMetric sup_metric()
{
    return ModularGMetric("sup", &sup_metric_value);
}

double eval_omega(const ModularGMetric& metric, double lambda, const GridFunction& x, const GridFunction& y,
                  const GridFunction& z)
{
    if (!(lambda > 0.0) || std::isnan(lambda)) {
        throw DomainError("modular metric: lambda must be positive");
    }
    require_compatible(x, y);
    require_compatible(x, z);
    return metric.evaluator()(lambda, x, y, z);
}

double eval_omega_pair(const ModularGMetric& metric, double lambda, const GridFunction& x, const GridFunction& y)
{
    return eval_omega(metric, lambda, x, y, y);
}

namespace {

// Smallest N such that values[k] < eps for every k >= N.
std::size_t settle_index(const std::vector<double>& values, double eps)
{
    std::size_t n = values.size();
    while (n > 0 && values[n - 1] < eps) {
        --n;
    }
    return n;
}

}  // namespace

ConvergenceForms convergence_forms(const ModularGMetric& metric, const std::vector<GridFunction>& seq,
                                   const GridFunction& limit, const std::vector<double>& lambdas, double eps)
{
    const std::size_t len = seq.size();
    // Per-index worst case over λ for the single-index forms.
    std::vector<double> pair(len, 0.0), doubled(len, 0.0);
    // For the two-index forms, worst over m >= n as well (suffix maximum is taken below).
    std::vector<double> two_index(len, 0.0);
    for (std::size_t n = 0; n < len; ++n) {
        for (double lam : lambdas) {
            pair[n] = std::max(pair[n], eval_omega(metric, lam, seq[n], limit, limit));
            doubled[n] = std::max(doubled[n], eval_omega(metric, lam, seq[n], seq[n], limit));
            for (std::size_t m = n; m < len; ++m) {
                two_index[n] = std::max(two_index[n], eval_omega(metric, lam, seq[n], seq[m], limit));
            }
        }
    }
    // two_index[n] covers pairs (n, m>=n); by symmetry that covers all m,n >= N
    // once we take the suffix maximum.
    for (std::size_t n = len; n-- > 1;) {
        two_index[n - 1] = std::max(two_index[n - 1], two_index[n]);
    }

    ConvergenceForms out{};
    out.first_index[0] = settle_index(two_index, eps);
    out.first_index[1] = settle_index(pair, eps);
    out.first_index[2] = settle_index(doubled, eps);
    out.first_index[3] = settle_index(pair, eps);
    out.first_index[4] = settle_index(two_index, eps);
    out.common_index = *std::max_element(std::begin(out.first_index), std::end(out.first_index));
    out.all_converged = out.common_index < len;
    return out;
}

}  // namespace gmetric
