#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

namespace gmetric {

/// Real-valued function sampled on the uniform grid t_i = i·Ω/(n−1), i = 0..n−1.
///
/// Endpoints are included, so the sup over [0, Ω] is realized as a max over nodes.
/// Values are immutable after construction and always finite.
class GridFunction {
public:
    /// Throws DomainError unless omega_len > 0, values.size() >= 2 and all values are finite.
    GridFunction(double omega_len, std::vector<double> values);

    static GridFunction constant(double omega_len, std::size_t n, double c);
    static GridFunction sample(double omega_len, std::size_t n, const std::function<double(double)>& f);

    double omega_len() const noexcept { return omega_len_; }
    std::size_t size() const noexcept { return values_.size(); }
    std::span<const double> values() const noexcept { return values_; }
    double operator[](std::size_t i) const noexcept { return values_[i]; }

    /// Node location t_i.
    double node(std::size_t i) const noexcept;
    double step() const noexcept { return omega_len_ / static_cast<double>(values_.size() - 1); }

    /// Same domain length and node count.
    bool compatible_with(const GridFunction& other) const noexcept;

    bool operator==(const GridFunction& other) const = default;

private:
    double omega_len_;
    std::vector<double> values_;
};

/// Throws DimensionMismatch when a and b are not metric-compatible.
void require_compatible(const GridFunction& a, const GridFunction& b);

/// max_i |a_i − b_i|.
double sup_distance(const GridFunction& a, const GridFunction& b);

/// Operator on grid functions. Must map a grid to a compatible grid.
using Operator = std::function<GridFunction(const GridFunction&)>;

/// T∘T∘…∘T (m times). For m == 1 returns T itself.
Operator compose_power(Operator op, unsigned m);

}  // namespace gmetric
