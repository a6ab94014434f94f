#include "gmetric/contraction.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "gmetric/error.hpp"
#include "gmetric/parallel.hpp"

namespace gmetric {

std::string_view to_string(CertificateVariant v) noexcept
{
    switch (v) {
    case CertificateVariant::TwoPoint11: return "TwoPoint11";
    case CertificateVariant::TwoPoint3: return "TwoPoint3";
    case CertificateVariant::ThreePoint11: return "ThreePoint11";
    case CertificateVariant::ThreePoint4: return "ThreePoint4";
    case CertificateVariant::PowerM11: return "PowerM11";
    case CertificateVariant::PowerM4: return "PowerM4";
    }
    return "?";
}

CertificateVariant parse_variant(std::string_view name)
{
    for (auto v : {CertificateVariant::TwoPoint11, CertificateVariant::TwoPoint3, CertificateVariant::ThreePoint11,
                   CertificateVariant::ThreePoint4, CertificateVariant::PowerM11, CertificateVariant::PowerM4}) {
        if (to_string(v) == name) {
            return v;
        }
    }
    throw ConfigError("unknown certificate variant '" + std::string(name) + "'");
}

void ContractionConfig::validate() const
{
    if (kappas.size() != kTermCount) {
        throw ConfigError("contraction: exactly 11 kappa functions required, got " + std::to_string(kappas.size()));
    }
    if (!(lambda > 0.0) || !std::isfinite(lambda)) {
        throw ConfigError("contraction: lambda must be positive");
    }
    if (power_m < 1) {
        throw ConfigError("contraction: power m must be a positive integer");
    }
    if (!nu) {
        throw ConfigError("contraction: nu is not set");
    }
    const double lag = nu(lambda);
    if (!(lag >= 0.0 && lag < lambda)) {
        throw DomainError("contraction: nu(lambda) must lie in [0, lambda)");
    }
}

namespace {

struct Shape {
    bool three_point;
    std::size_t terms;
    bool power;
};

Shape shape_of(CertificateVariant v)
{
    switch (v) {
    case CertificateVariant::TwoPoint11: return {false, 11, false};
    case CertificateVariant::TwoPoint3: return {false, 3, false};
    case CertificateVariant::ThreePoint11: return {true, 11, false};
    case CertificateVariant::ThreePoint4: return {true, 4, false};
    case CertificateVariant::PowerM11: return {false, 11, true};
    case CertificateVariant::PowerM4: return {true, 4, true};
    }
    throw ConfigError("invalid certificate variant");
}

double weighted_sum(const ContractionConfig& cfg, double kappa_arg, const std::array<double, kTermCount>& t,
                    std::size_t terms)
{
    double sum = 0.0;
    for (std::size_t k = 0; k < terms; ++k) {
        sum += kappa_eval(cfg.kappas[k], kappa_arg) * t[k];
    }
    return sum;
}

}  // namespace

std::array<double, kTermCount> two_point_terms(const ContractionConfig& cfg, const GridFunction& x,
                                               const GridFunction& y, const GridFunction& tx,
                                               const GridFunction& ty)
{
    const double lam = cfg.lambda;
    auto w = [&](const GridFunction& p, const GridFunction& q, const GridFunction& r) {
        return eval_omega(cfg.metric, lam, p, q, r);
    };
    auto psi = [&](double v) { return psi_eval(cfg.psi, v); };

    const double xyy = w(x, y, y);
    const double x_tx = w(x, tx, tx);
    const double y_ty = w(y, ty, ty);
    const double tx_ty = w(tx, ty, ty);
    const double tx_y = w(tx, y, y);
    const double y_tx = w(y, tx, tx);
    const double txtx_y = w(tx, tx, y);
    const double x_ty = w(x, ty, ty);

    return {
        psi(eval_omega(cfg.metric, lam + cfg.nu(lam), x, y, y)),
        psi(x_tx),
        psi(y_ty),
        psi(tx_ty),
        psi(tx_y),
        psi(y_ty * (1.0 + xyy) / (1.0 + x_tx)),
        psi(y_ty * (1.0 + x_tx) / (1.0 + xyy)),
        psi(x_tx * (1.0 + xyy) / (1.0 + y_tx + xyy)),
        psi(xyy * (1.0 + y_ty) / (1.0 + txtx_y + tx_ty)),
        psi(tx_ty * (1.0 + x_ty) / (1.0 + txtx_y + x_ty)),
        psi(tx_ty * (1.0 + y_ty + txtx_y) / (1.0 + txtx_y + tx_ty)),
    };
}

std::array<double, kTermCount> three_point_terms(const ContractionConfig& cfg, const GridFunction& x,
                                                 const GridFunction& y, const GridFunction& z,
                                                 const GridFunction& tx, const GridFunction& ty,
                                                 const GridFunction& tz)
{
    const double lam = cfg.lambda;
    auto w = [&](const GridFunction& p, const GridFunction& q, const GridFunction& r) {
        return eval_omega(cfg.metric, lam, p, q, r);
    };
    auto psi = [&](double v) { return psi_eval(cfg.psi, v); };

    const double xyz = w(x, y, z);
    const double x_tx = w(x, tx, tx);
    const double y_ty = w(y, ty, ty);
    const double z_tz = w(z, tz, tz);
    const double tx_ty = w(tx, ty, ty);
    const double y_tx = w(y, tx, tx);
    const double txtx_y = w(tx, tx, y);
    const double x_ty = w(x, ty, ty);

    return {
        psi(eval_omega(cfg.metric, lam + cfg.nu(lam), x, y, z)),
        psi(x_tx),
        psi(y_ty),
        psi(z_tz),
        psi(w(tx, y, z)),
        psi(y_ty * (1.0 + xyz) / (1.0 + x_tx)),
        psi(y_ty * (1.0 + x_tx) / (1.0 + xyz)),
        psi(x_tx * (1.0 + xyz) / (1.0 + y_tx + xyz)),
        psi(xyz * (1.0 + y_ty) / (1.0 + txtx_y + tx_ty)),
        psi(tx_ty * (1.0 + x_ty) / (1.0 + txtx_y + x_ty)),
        psi(tx_ty * (1.0 + y_ty + txtx_y) / (1.0 + txtx_y + tx_ty)),
    };
}

namespace {

InequalitySides sides_two_point(const ContractionConfig& cfg, const GridFunction& x, const GridFunction& y,
                                const GridFunction& tx, const GridFunction& ty, std::size_t terms)
{
    const double lhs = psi_eval(cfg.psi, eval_omega(cfg.metric, cfg.lambda, tx, ty, ty));
    const double arg = psi_eval(cfg.psi, eval_omega(cfg.metric, cfg.lambda, x, y, y));
    return {lhs, weighted_sum(cfg, arg, two_point_terms(cfg, x, y, tx, ty), terms)};
}

InequalitySides sides_three_point(const ContractionConfig& cfg, const GridFunction& x, const GridFunction& y,
                                  const GridFunction& z, const GridFunction& tx, const GridFunction& ty,
                                  const GridFunction& tz, std::size_t terms)
{
    const double lhs = psi_eval(cfg.psi, eval_omega(cfg.metric, cfg.lambda, tx, ty, tz));
    const double arg = psi_eval(cfg.psi, eval_omega(cfg.metric, cfg.lambda, x, y, z));
    return {lhs, weighted_sum(cfg, arg, three_point_terms(cfg, x, y, z, tx, ty, tz), terms)};
}

}  // namespace

double lhs_two_point(const ContractionConfig& cfg, const Operator& op, const GridFunction& x,
                     const GridFunction& y)
{
    return psi_eval(cfg.psi, eval_omega(cfg.metric, cfg.lambda, op(x), op(y), op(y)));
}

double rhs_two_point(const ContractionConfig& cfg, const Operator& op, const GridFunction& x, const GridFunction& y,
                     std::size_t terms)
{
    cfg.validate();
    if (terms < 1 || terms > kTermCount) {
        throw ConfigError("contraction: term count must be in 1..11");
    }
    return sides_two_point(cfg, x, y, op(x), op(y), terms).rhs;
}

double lhs_three_point(const ContractionConfig& cfg, const Operator& op, const GridFunction& x,
                       const GridFunction& y, const GridFunction& z)
{
    return psi_eval(cfg.psi, eval_omega(cfg.metric, cfg.lambda, op(x), op(y), op(z)));
}

double rhs_three_point(const ContractionConfig& cfg, const Operator& op, const GridFunction& x,
                       const GridFunction& y, const GridFunction& z, std::size_t terms)
{
    cfg.validate();
    if (terms < 1 || terms > kTermCount) {
        throw ConfigError("contraction: term count must be in 1..11");
    }
    return sides_three_point(cfg, x, y, z, op(x), op(y), op(z), terms).rhs;
}

InequalitySides evaluate_variant(const ContractionConfig& cfg, const Operator& op, CertificateVariant variant,
                                 const GridFunction& x, const GridFunction& y, const GridFunction& z)
{
    const Shape shape = shape_of(variant);
    const Operator& map = op;
    if (shape.power) {
        const Operator power = compose_power(op, cfg.power_m);
        return evaluate_variant(cfg, power,
                                shape.three_point ? CertificateVariant::ThreePoint4 : CertificateVariant::TwoPoint11,
                                x, y, z);
    }
    if (shape.three_point) {
        return sides_three_point(cfg, x, y, z, map(x), map(y), map(z), shape.terms);
    }
    return sides_two_point(cfg, x, y, map(x), map(y), shape.terms);
}

CertificateReport certify(const ContractionConfig& cfg, const Operator& op, const GridSampler& sampler,
                          std::size_t count, CertificateVariant variant, double tol, unsigned threads)
{
    cfg.validate();
    if (count < 1) {
        throw ConfigError("certify: sample count must be at least 1");
    }
    const Shape shape = shape_of(variant);
    const Operator map = shape.power ? compose_power(op, cfg.power_m) : op;
    const CertificateVariant base = !shape.power ? variant
                                    : shape.three_point ? CertificateVariant::ThreePoint4
                                                        : CertificateVariant::TwoPoint11;

    std::vector<InequalitySides> sides(count);
    parallel_for(
        count,
        [&](std::size_t s) {
            auto rng = sampler.engine_for(s);
            const GridFunction x = sampler.draw(rng);
            const GridFunction y = sampler.draw_distinct(rng, x);
            const GridFunction z = shape.three_point ? sampler.draw_distinct(rng, y) : y;
            sides[s] = evaluate_variant(cfg, map, base, x, y, z);
        },
        threads);

    CertificateReport report;
    report.variant = variant;
    report.samples = count;
    report.tolerance = tol;
    report.power_m = shape.power ? cfg.power_m : 1;
    report.min_slack = std::numeric_limits<double>::infinity();
    for (std::size_t s = 0; s < count; ++s) {
        const double slack = sides[s].rhs - sides[s].lhs;
        report.min_slack = std::min(report.min_slack, slack);
        if (slack < -tol) {
            report.violations.push_back({s, {}, sides[s].lhs, sides[s].rhs, -slack});
        }
    }
    return report;
}

CoefficientCondition coefficient_condition(const ContractionConfig& cfg, CertificateVariant variant)
{
    if (cfg.kappas.size() != kTermCount) {
        throw ConfigError("contraction: exactly 11 kappa functions required");
    }
    const Shape shape = shape_of(variant);
    CoefficientCondition out{false, 0.0, false};
    if (shape.terms == kTermCount) {
        for (const auto& k : cfg.kappas) {
            const auto sup = kappa_sup(k);
            out.value = std::max(out.value, sup.value);
            out.reaches_one = out.reaches_one || sup.reaches_one;
        }
    } else {
        const auto first = kappa_sup(cfg.kappas[0]);
        double rest = 0.0;
        out.reaches_one = first.reaches_one;
        for (std::size_t k = 1; k < shape.terms; ++k) {
            const auto sup = kappa_sup(cfg.kappas[k]);
            rest = std::max(rest, sup.value);
            out.reaches_one = out.reaches_one || sup.reaches_one;
        }
        out.value = first.value + 2.0 * rest;
    }
    out.holds = out.value < 1.0 && !out.reaches_one;
    return out;
}

bool coefficient_condition_check(const ContractionConfig& cfg, CertificateVariant variant)
{
    return coefficient_condition(cfg, variant).holds;
}

}  // namespace gmetric
