#include "gmetric/quadrature.hpp"

#include <string>

#include "gmetric/error.hpp"

namespace gmetric {

std::string_view to_string(QuadratureKind k) noexcept
{
    return k == QuadratureKind::Simpson ? "simpson" : "trapezoid";
}

QuadratureKind parse_quadrature(std::string_view name)
{
    if (name == "simpson") {
        return QuadratureKind::Simpson;
    }
    if (name == "trapezoid") {
        return QuadratureKind::Trapezoid;
    }
    throw ConfigError("unknown quadrature rule '" + std::string(name) + "'");
}

QuadratureRule make_rule(QuadratureKind kind, double omega_len, std::size_t n)
{
    if (n < 2 || !(omega_len > 0.0)) {
        throw ConfigError("quadrature: need n >= 2 and a positive domain length");
    }
    const double h = omega_len / static_cast<double>(n - 1);
    std::vector<double> w(n);
    if (kind == QuadratureKind::Trapezoid) {
        for (auto& v : w) {
            v = h;
        }
        w.front() = w.back() = h / 2.0;
        return {kind, std::move(w)};
    }
    if (n % 2 == 0) {
        throw ConfigError("quadrature: Simpson's rule needs an odd node count, got " + std::to_string(n));
    }
    const double third = h / 3.0;
    for (std::size_t i = 0; i < n; ++i) {
        w[i] = (i % 2 == 1 ? 4.0 : 2.0) * third;
    }
    w.front() = w.back() = third;
    return {kind, std::move(w)};
}

QuadratureRule default_rule(double omega_len, std::size_t n)
{
    return make_rule(n % 2 == 1 ? QuadratureKind::Simpson : QuadratureKind::Trapezoid, omega_len, n);
}

}  // namespace gmetric
