#include "gmetric/grid_function.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "gmetric/error.hpp"

namespace gmetric {

GridFunction::GridFunction(double omega_len, std::vector<double> values)
    : omega_len_(omega_len), values_(std::move(values))
{
    if (!(omega_len_ > 0.0) || !std::isfinite(omega_len_)) {
        throw DomainError("grid function: domain length must be positive and finite");
    }
    if (values_.size() < 2) {
        throw DomainError("grid function: at least two nodes required");
    }
    for (std::size_t i = 0; i < values_.size(); ++i) {
        if (!std::isfinite(values_[i])) {
            throw DomainError("grid function: non-finite value at node " + std::to_string(i));
        }
    }
}

GridFunction GridFunction::constant(double omega_len, std::size_t n, double c)
{
    return GridFunction(omega_len, std::vector<double>(n, c));
}

GridFunction GridFunction::sample(double omega_len, std::size_t n, const std::function<double(double)>& f)
{
    if (n < 2) {
        throw DomainError("grid function: at least two nodes required");
    }
    std::vector<double> v(n);
    const double h = omega_len / static_cast<double>(n - 1);
    for (std::size_t i = 0; i < n; ++i) {
        // Pin the last node to Ω exactly.
        const double t = (i + 1 == n) ? omega_len : static_cast<double>(i) * h;
        v[i] = f(t);
    }
    return GridFunction(omega_len, std::move(v));
}

double GridFunction::node(std::size_t i) const noexcept
{
    if (i + 1 == values_.size()) {
        return omega_len_;
    }
    return static_cast<double>(i) * step();
}

bool GridFunction::compatible_with(const GridFunction& other) const noexcept
{
    return omega_len_ == other.omega_len_ && values_.size() == other.values_.size();
}

void require_compatible(const GridFunction& a, const GridFunction& b)
{
    if (!a.compatible_with(b)) {
        throw DimensionMismatch("grid functions are not metric-compatible (n=" + std::to_string(a.size()) + "/" +
                                std::to_string(b.size()) + ")");
    }
}

double sup_distance(const GridFunction& a, const GridFunction& b)
{
    require_compatible(a, b);
    double m = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        m = std::max(m, std::abs(a[i] - b[i]));
    }
    return m;
}

Operator compose_power(Operator op, unsigned m)
{
    if (m == 0) {
        throw ConfigError("power map: m must be a positive integer");
    }
    if (m == 1) {
        return op;
    }
    return [op = std::move(op), m](const GridFunction& u) {
        GridFunction v = op(u);
        for (unsigned k = 1; k < m; ++k) {
            v = op(v);
        }
        return v;
    };
}

}  // namespace gmetric
