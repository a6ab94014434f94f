#pragma once

#include <cstddef>
#include <string_view>
#include <vector>

#include "gmetric/metric.hpp"
#include "gmetric/report.hpp"
#include "gmetric/sampling.hpp"

namespace gmetric {

enum class AxiomId { G1, G2, G3, G4, G5, P2_1, P2_2, P2_3, P2_4, P2_5, P2_6 };

std::string_view to_string(AxiomId id) noexcept;

struct AxiomReport {
    AxiomId axiom_id;
    std::size_t samples_checked = 0;
    std::vector<Violation> violations;
    double tolerance = 0.0;

    bool ok() const noexcept { return violations.empty(); }
};

inline constexpr double kDefaultAxiomTolerance = 1e-12;

/// Checks the five modular G-metric axioms on `count` seeded draws.
///
/// G1: ω_λ(x,x,x) = 0.  G2: ω_λ(x,x,y) > 0 for x ≠ y (strict, y drawn distinct).
/// G3: ω_λ(x,x,y) ≤ ω_λ(x,y,z) for z ≠ y.  G4: all six argument permutations agree.
/// G5: ω_{λ+μ}(x,y,z) ≤ ω_λ(x,a,a) + ω_μ(a,y,z).
/// Violation params are {λ, μ}.
std::vector<AxiomReport> check_axioms(const ModularGMetric& metric, const GridSampler& sampler, std::size_t count,
                                      double tol = kDefaultAxiomTolerance);

/// As check_axioms, restricted to draws with x = y = z. Only G1 and G4 are meaningful there.
std::vector<AxiomReport> check_axioms_coincident(const ModularGMetric& metric, const GridSampler& sampler,
                                                 std::size_t count, double tol = kDefaultAxiomTolerance);

/// Checks the derived inequalities P2_1..P2_6 on `count` seeded draws.
///
/// P2_1 is checked as an implication on near-coincident triples: if
/// ω_λ(x,y,z) ≤ tol for every sampled λ then the pointwise spread of (x,y,z)
/// is at most (1 + λ_max)·tol.
std::vector<AxiomReport> check_derived_inequalities(const ModularGMetric& metric, const GridSampler& sampler,
                                                    std::size_t count, double tol = kDefaultAxiomTolerance);

}  // namespace gmetric
