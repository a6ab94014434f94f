#pragma once

#include <cstddef>
#include <functional>
#include <string>
#include <string_view>
#include <vector>

#include "gmetric/report.hpp"
#include "gmetric/sampling.hpp"

namespace gmetric {

/// Largest double below 1; every κ value is clamped to at most this.
inline constexpr double kKappaCeiling = 1.0 - 0x1p-52;

enum class GeraghtyFamily { Sinc, Constant, Rational, Custom };

/// State-dependent contraction coefficient κ: [0, ∞) → [0, 1).
///
/// Config tags: "sinc" (sin t / t), "const:<c>" with c in [0, 1), "rational" (1/(1+t)).
/// Custom evaluators are available to library callers only.
class GeraghtyFunction {
public:
    static GeraghtyFunction sinc();
    static GeraghtyFunction constant(double c);
    static GeraghtyFunction rational();
    static GeraghtyFunction custom(std::string name, std::function<double(double)> f);

    /// Parses a config tag; throws ConfigError on anything else.
    static GeraghtyFunction parse(std::string_view tag);

    GeraghtyFamily family() const noexcept { return family_; }
    double parameter() const noexcept { return c_; }
    std::string tag() const;

    const std::function<double(double)>& custom_evaluator() const noexcept { return custom_; }

private:
    GeraghtyFunction(GeraghtyFamily f, double c, std::string name = {}, std::function<double(double)> g = {})
        : family_(f), c_(c), name_(std::move(name)), custom_(std::move(g))
    {
    }

    GeraghtyFamily family_;
    double c_;
    std::string name_;
    std::function<double(double)> custom_;
};

/// κ(t), clamped into [0, 1 − 2^−52]. Sinc uses 1 − t²/6 + t⁴/120 for t < 1e−4.
/// Throws DomainError for negative or non-finite t.
double kappa_eval(const GeraghtyFunction& f, double t);

/// sup_{t ≥ 0} κ(t) and whether that supremum is the excluded value 1
/// (approached at t → 0 for Sinc and Rational; only the clamp keeps values below 1).
struct KappaSupremum {
    double value;
    bool reaches_one;
};

/// Analytic for the shipped families; dense scan of [0, 1000] for custom ones.
KappaSupremum kappa_sup(const GeraghtyFunction& f);

/// Upper bound on sup_{t ≥ delta} κ(t). Exact for Constant and Rational, and for
/// Sinc when delta lies below the second-lobe peak; 1/delta beyond it.
double kappa_sup_beyond(const GeraghtyFunction& f, double delta);

struct MarginReport {
    double delta = 0.0;
    double max_kappa = 0.0;
    double argmax = 0.0;
    /// 1 − margin; the family bound on sup_{t ≥ delta} κ(t).
    double bound = 0.0;
    double margin = 0.0;
    bool holds = false;
};

/// Scans `grid` (all entries ≥ delta) and checks max κ ≤ the family bound for delta.
MarginReport verify_geraghty_margin(const GeraghtyFunction& f, double delta, const std::vector<double>& grid);

enum class PsiFamily { Identity, BoundedRational, Custom };

/// Gauge ψ applied to distances. Non-decreasing, sub-additive, ψ(t) = 0 iff t = 0.
/// Config tags: "identity", "bounded-rational" (t/(1+t)).
class PsiFunction {
public:
    static PsiFunction identity();
    static PsiFunction bounded_rational();
    static PsiFunction custom(std::string name, std::function<double(double)> f);
    static PsiFunction parse(std::string_view tag);

    PsiFamily family() const noexcept { return family_; }
    std::string tag() const;
    const std::function<double(double)>& custom_evaluator() const noexcept { return custom_; }

private:
    PsiFunction(PsiFamily f, std::string name = {}, std::function<double(double)> g = {})
        : family_(f), name_(std::move(name)), custom_(std::move(g))
    {
    }

    PsiFamily family_;
    std::string name_;
    std::function<double(double)> custom_;
};

/// ψ(t) for t ∈ [0, ∞]; ψ(0) = 0 exactly for the shipped families. Throws DomainError for t < 0 or NaN.
double psi_eval(const PsiFunction& psi, double t);

/// Sampled checks of ψ on t ∈ [0, sampler amplitude]: "subadditive",
/// "lipschitz" (|ψ(t+h) − ψ(t)| ≤ h for h ∈ (0, 1]) and "zero_iff_zero".
std::vector<PropertyReport> verify_psi_properties(const PsiFunction& psi, const GridSampler& sampler,
                                                  std::size_t count, double tol);

}  // namespace gmetric
