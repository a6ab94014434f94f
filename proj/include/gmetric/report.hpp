#pragma once

#include <cstddef>
#include <string>
#include <vector>

namespace gmetric {

/// One failed inequality lhs ≤ rhs (+ tolerance). `gap` is lhs − rhs.
struct Violation {
    std::size_t sample = 0;
    /// Scalar inputs that identify the draw (λ, μ, t, ...); meaning depends on the check.
    std::vector<double> params;
    double lhs = 0.0;
    double rhs = 0.0;
    double gap = 0.0;
};

/// Outcome of a sampled property check.
struct PropertyReport {
    std::string name;
    std::size_t samples_checked = 0;
    double tolerance = 0.0;
    std::vector<Violation> violations;

    bool ok() const noexcept { return violations.empty(); }
};

}  // namespace gmetric
