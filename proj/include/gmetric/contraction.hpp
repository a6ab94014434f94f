#pragma once

#include <array>
#include <cstddef>
#include <functional>
#include <string_view>
#include <vector>

#include "gmetric/geraghty.hpp"
#include "gmetric/grid_function.hpp"
#include "gmetric/metric.hpp"
#include "gmetric/report.hpp"
#include "gmetric/sampling.hpp"

namespace gmetric {

/// Which contraction inequality is certified.
///
/// TwoPoint11: eleven-term two-point inequality. TwoPoint3: its first three terms.
/// ThreePoint11 / ThreePoint4: three-point form and its four-term restriction.
/// PowerM11 / PowerM4: TwoPoint11 / ThreePoint4 with T replaced by T^m.
enum class CertificateVariant { TwoPoint11, TwoPoint3, ThreePoint11, ThreePoint4, PowerM11, PowerM4 };

std::string_view to_string(CertificateVariant v) noexcept;
/// Throws ConfigError for unknown names.
CertificateVariant parse_variant(std::string_view name);

inline constexpr std::size_t kTermCount = 11;
inline constexpr double kDefaultCertificateTolerance = 1e-10;

struct ContractionConfig {
    /// κ_1..κ_11; variants with fewer terms read the leading entries.
    std::vector<GeraghtyFunction> kappas = std::vector<GeraghtyFunction>(kTermCount, GeraghtyFunction::constant(0.0));
    PsiFunction psi = PsiFunction::identity();
    /// Lag ν(λ) ∈ [0, λ).
    std::function<double(double)> nu = [](double) { return 0.0; };
    ModularGMetric metric = sup_metric();
    double lambda = 1.0;
    /// Power used by the PowerM variants.
    unsigned power_m = 1;

    /// Throws ConfigError (wrong κ count, λ ≤ 0, m = 0) or DomainError (ν(λ) outside [0, λ)).
    void validate() const;
};

/// The eleven ψ-terms (before κ weighting) of the two-point inequality for images a = Tx, b = Ty.
std::array<double, kTermCount> two_point_terms(const ContractionConfig& cfg, const GridFunction& x,
                                               const GridFunction& y, const GridFunction& tx,
                                               const GridFunction& ty);

/// The eleven ψ-terms of the three-point inequality for images Tx, Ty, Tz.
std::array<double, kTermCount> three_point_terms(const ContractionConfig& cfg, const GridFunction& x,
                                                 const GridFunction& y, const GridFunction& z,
                                                 const GridFunction& tx, const GridFunction& ty,
                                                 const GridFunction& tz);

/// ψ(ω_λ(Tx, Ty, Ty)).
double lhs_two_point(const ContractionConfig& cfg, const Operator& op, const GridFunction& x,
                     const GridFunction& y);

/// Σ_k κ_k(ψ(ω_λ(x,y,y))) · term_k over the first `terms` terms.
double rhs_two_point(const ContractionConfig& cfg, const Operator& op, const GridFunction& x, const GridFunction& y,
                     std::size_t terms = kTermCount);

/// ψ(ω_λ(Tx, Ty, Tz)).
double lhs_three_point(const ContractionConfig& cfg, const Operator& op, const GridFunction& x,
                       const GridFunction& y, const GridFunction& z);

/// Σ_k κ_k(ψ(ω_λ(x,y,z))) · term_k over the first `terms` terms.
double rhs_three_point(const ContractionConfig& cfg, const Operator& op, const GridFunction& x,
                       const GridFunction& y, const GridFunction& z, std::size_t terms = kTermCount);

struct InequalitySides {
    double lhs;
    double rhs;
};

/// Both sides of `variant` at (x, y, z); two-point variants ignore z.
InequalitySides evaluate_variant(const ContractionConfig& cfg, const Operator& op, CertificateVariant variant,
                                 const GridFunction& x, const GridFunction& y, const GridFunction& z);

struct CertificateReport {
    CertificateVariant variant = CertificateVariant::TwoPoint11;
    std::size_t samples = 0;
    /// min over samples of rhs − lhs.
    double min_slack = 0.0;
    double tolerance = 0.0;
    unsigned power_m = 1;
    /// Samples with rhs − lhs < −tolerance; params are empty, `sample` identifies the drawn tuple.
    std::vector<Violation> violations;

    bool ok() const noexcept { return violations.empty(); }
};

/// Evaluates the variant on `count` seeded tuples (x, y distinct; z distinct from y
/// for three-point variants). Samples run in parallel; results do not depend on scheduling.
CertificateReport certify(const ContractionConfig& cfg, const Operator& op, const GridSampler& sampler,
                          std::size_t count, CertificateVariant variant,
                          double tol = kDefaultCertificateTolerance, unsigned threads = 0);

struct CoefficientCondition {
    bool holds;
    /// max_k sup κ_k (eleven-term variants) or sup κ_1 + 2·max sup κ_{2..} (short variants).
    double value;
    /// Some involved κ has supremum 1, approached but not attained.
    bool reaches_one;
};

CoefficientCondition coefficient_condition(const ContractionConfig& cfg, CertificateVariant variant);

/// coefficient_condition(cfg, variant).holds
bool coefficient_condition_check(const ContractionConfig& cfg, CertificateVariant variant);

}  // namespace gmetric
