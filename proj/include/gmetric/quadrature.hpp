#pragma once

#include <cstddef>
#include <string_view>
#include <vector>

namespace gmetric {

enum class QuadratureKind { Trapezoid, Simpson };

std::string_view to_string(QuadratureKind k) noexcept;
QuadratureKind parse_quadrature(std::string_view name);

/// Composite Newton–Cotes weights on the uniform grid over [0, Ω].
struct QuadratureRule {
    QuadratureKind kind;
    /// n nonnegative weights summing to Ω.
    std::vector<double> weights;
};

/// Throws ConfigError for n < 2, Ω ≤ 0, or Simpson with even n.
QuadratureRule make_rule(QuadratureKind kind, double omega_len, std::size_t n);

/// Simpson for odd n, trapezoid for even n.
QuadratureRule default_rule(double omega_len, std::size_t n);

}  // namespace gmetric
