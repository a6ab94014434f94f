#include "gmetric/geraghty.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <random>
#include <string>

#include "gmetric/error.hpp"

namespace gmetric {

namespace {

constexpr double kSeriesCutoff = 1e-4;
// sin t / t peaks again on its second positive lobe, at the root of tan t = t in (2π, 5π/2).
constexpr double kSincLobeArg = 7.7252518369377071642;
constexpr double kSincLobePeak = 0.12837455352589913669;
constexpr double kPi = 3.14159265358979323846;

double raw_sinc(double t)
{
    if (t < kSeriesCutoff) {
        const double t2 = t * t;
        return 1.0 - t2 / 6.0 + t2 * t2 / 120.0;
    }
    return std::sin(t) / t;
}

double clamp_kappa(double v)
{
    if (std::isnan(v)) {
        throw DomainError("geraghty: evaluator returned NaN");
    }
    return std::clamp(v, 0.0, kKappaCeiling);
}

double parse_number(std::string_view text, std::string_view what)
{
    double v = 0.0;
    const auto* first = text.data();
    const auto* last = text.data() + text.size();
    auto [ptr, ec] = std::from_chars(first, last, v);
    if (ec != std::errc() || ptr != last) {
        throw ConfigError(std::string("cannot parse number in ") + std::string(what) + ": '" + std::string(text) +
                          "'");
    }
    return v;
}

std::string format_number(double v)
{
    char buf[64];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, ptr);
}

}  // namespace

GeraghtyFunction GeraghtyFunction::sinc()
{
    return GeraghtyFunction(GeraghtyFamily::Sinc, 0.0);
}

GeraghtyFunction GeraghtyFunction::constant(double c)
{
    if (!(c >= 0.0 && c < 1.0)) {
        throw ConfigError("geraghty constant must lie in [0, 1), got " + format_number(c));
    }
    return GeraghtyFunction(GeraghtyFamily::Constant, c);
}

GeraghtyFunction GeraghtyFunction::rational()
{
    return GeraghtyFunction(GeraghtyFamily::Rational, 0.0);
}

GeraghtyFunction GeraghtyFunction::custom(std::string name, std::function<double(double)> f)
{
    return GeraghtyFunction(GeraghtyFamily::Custom, 0.0, std::move(name), std::move(f));
}

GeraghtyFunction GeraghtyFunction::parse(std::string_view tag)
{
    if (tag == "sinc") {
        return sinc();
    }
    if (tag == "rational") {
        return rational();
    }
    if (tag.starts_with("const:")) {
        return constant(parse_number(tag.substr(6), "geraghty tag"));
    }
    throw ConfigError("unknown geraghty function tag '" + std::string(tag) + "'");
}

std::string GeraghtyFunction::tag() const
{
    switch (family_) {
    case GeraghtyFamily::Sinc: return "sinc";
    case GeraghtyFamily::Rational: return "rational";
    case GeraghtyFamily::Constant: return "const:" + format_number(c_);
    case GeraghtyFamily::Custom: return "custom:" + name_;
    }
    return {};
}

double kappa_eval(const GeraghtyFunction& f, double t)
{
    if (!(t >= 0.0) || !std::isfinite(t)) {
        throw DomainError("geraghty: argument must be finite and nonnegative");
    }
    switch (f.family()) {
    case GeraghtyFamily::Sinc: return clamp_kappa(raw_sinc(t));
    case GeraghtyFamily::Constant: return f.parameter();
    case GeraghtyFamily::Rational: return clamp_kappa(1.0 / (1.0 + t));
    case GeraghtyFamily::Custom: return clamp_kappa(f.custom_evaluator()(t));
    }
    return 0.0;
}

KappaSupremum kappa_sup(const GeraghtyFunction& f)
{
    switch (f.family()) {
    case GeraghtyFamily::Sinc:
    case GeraghtyFamily::Rational: return {kKappaCeiling, true};
    case GeraghtyFamily::Constant: return {f.parameter(), false};
    case GeraghtyFamily::Custom: break;
    }
    double best = 0.0;
    constexpr int kSteps = 1'000'000;
    for (int i = 0; i <= kSteps; ++i) {
        best = std::max(best, kappa_eval(f, 1000.0 * static_cast<double>(i) / kSteps));
    }
    return {best, best >= kKappaCeiling};
}

double kappa_sup_beyond(const GeraghtyFunction& f, double delta)
{
    if (!(delta > 0.0)) {
        throw DomainError("geraghty margin: delta must be positive");
    }
    switch (f.family()) {
    case GeraghtyFamily::Constant: return f.parameter();
    case GeraghtyFamily::Rational: return 1.0 / (1.0 + delta);
    case GeraghtyFamily::Sinc:
        if (delta <= kPi) {
            return std::max(kappa_eval(f, delta), kSincLobePeak);
        }
        if (delta <= kSincLobeArg) {
            return kSincLobePeak;
        }
        return std::min(1.0 / delta, kSincLobePeak);
    case GeraghtyFamily::Custom: break;
    }
    double best = 0.0;
    constexpr int kSteps = 1'000'000;
    for (int i = 0; i <= kSteps; ++i) {
        best = std::max(best, kappa_eval(f, delta + 1000.0 * static_cast<double>(i) / kSteps));
    }
    return best;
}

MarginReport verify_geraghty_margin(const GeraghtyFunction& f, double delta, const std::vector<double>& grid)
{
    MarginReport r;
    r.delta = delta;
    r.bound = kappa_sup_beyond(f, delta);
    r.margin = 1.0 - r.bound;
    for (double t : grid) {
        if (t < delta) {
            throw DomainError("geraghty margin: grid value below delta");
        }
        const double k = kappa_eval(f, t);
        if (k > r.max_kappa) {
            r.max_kappa = k;
            r.argmax = t;
        }
    }
    r.holds = r.max_kappa <= r.bound;
    return r;
}

PsiFunction PsiFunction::identity()
{
    return PsiFunction(PsiFamily::Identity);
}

PsiFunction PsiFunction::bounded_rational()
{
    return PsiFunction(PsiFamily::BoundedRational);
}

PsiFunction PsiFunction::custom(std::string name, std::function<double(double)> f)
{
    return PsiFunction(PsiFamily::Custom, std::move(name), std::move(f));
}

PsiFunction PsiFunction::parse(std::string_view tag)
{
    if (tag == "identity") {
        return identity();
    }
    if (tag == "bounded-rational") {
        return bounded_rational();
    }
    throw ConfigError("unknown psi function tag '" + std::string(tag) + "'");
}

std::string PsiFunction::tag() const
{
    switch (family_) {
    case PsiFamily::Identity: return "identity";
    case PsiFamily::BoundedRational: return "bounded-rational";
    case PsiFamily::Custom: return "custom:" + name_;
    }
    return {};
}

double psi_eval(const PsiFunction& psi, double t)
{
    if (!(t >= 0.0)) {
        throw DomainError("psi: argument must be nonnegative");
    }
    switch (psi.family()) {
    case PsiFamily::Identity: return t;
    case PsiFamily::BoundedRational: return std::isinf(t) ? 1.0 : t / (1.0 + t);
    case PsiFamily::Custom: return psi.custom_evaluator()(t);
    }
    return 0.0;
}

std::vector<PropertyReport> verify_psi_properties(const PsiFunction& psi, const GridSampler& sampler,
                                                  std::size_t count, double tol)
{
    if (count < 1) {
        throw ConfigError("psi check: sample count must be at least 1");
    }
    PropertyReport sub{"subadditive", 0, tol, {}};
    PropertyReport lip{"lipschitz", 0, tol, {}};
    PropertyReport zero{"zero_iff_zero", 0, 0.0, {}};

    const double t_max = sampler.config().amplitude;
    std::uniform_real_distribution<double> span(0.0, t_max);
    std::uniform_real_distribution<double> unit(0.0, 1.0);

    const double at_zero = psi_eval(psi, 0.0);
    ++zero.samples_checked;
    if (at_zero != 0.0) {
        zero.violations.push_back({0, {0.0}, at_zero, 0.0, at_zero});
    }

    for (std::size_t s = 0; s < count; ++s) {
        auto rng = sampler.engine_for(s);
        const double a = span(rng);
        const double b = span(rng);
        const double h = 1.0 - unit(rng);

        const double lhs = psi_eval(psi, a + b);
        const double rhs = psi_eval(psi, a) + psi_eval(psi, b);
        ++sub.samples_checked;
        if (!(lhs <= rhs + tol)) {
            sub.violations.push_back({s, {a, b}, lhs, rhs, lhs - rhs});
        }

        const double jump = std::abs(psi_eval(psi, a + h) - psi_eval(psi, a));
        ++lip.samples_checked;
        if (!(jump <= h + tol)) {
            lip.violations.push_back({s, {a, h}, jump, h, jump - h});
        }

        ++zero.samples_checked;
        if (a > 0.0) {
            const double v = psi_eval(psi, a);
            if (!(v > 0.0)) {
                zero.violations.push_back({s, {a}, v, 0.0, -v});
            }
        }
    }
    return {std::move(sub), std::move(lip), std::move(zero)};
}

}  // namespace gmetric
