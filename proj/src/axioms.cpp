#include "gmetric/axioms.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <random>

#include "gmetric/error.hpp"

namespace gmetric {

std::string_view to_string(AxiomId id) noexcept
{
    switch (id) {
    case AxiomId::G1: return "G1";
    case AxiomId::G2: return "G2";
    case AxiomId::G3: return "G3";
    case AxiomId::G4: return "G4";
    case AxiomId::G5: return "G5";
    case AxiomId::P2_1: return "P2_1";
    case AxiomId::P2_2: return "P2_2";
    case AxiomId::P2_3: return "P2_3";
    case AxiomId::P2_4: return "P2_4";
    case AxiomId::P2_5: return "P2_5";
    case AxiomId::P2_6: return "P2_6";
    }
    return "?";
}

namespace {

class Recorder {
public:
    Recorder(AxiomId id, double tol) { report_.axiom_id = id; report_.tolerance = tol; }

    /// Records lhs ≤ rhs + tol.
    void leq(std::size_t sample, std::vector<double> params, double lhs, double rhs)
    {
        ++report_.samples_checked;
        if (!(lhs <= rhs + report_.tolerance)) {
            report_.violations.push_back({sample, std::move(params), lhs, rhs, lhs - rhs});
        }
    }

    /// Records lhs ≤ rhs with no added tolerance.
    void leq_exact(std::size_t sample, std::vector<double> params, double lhs, double rhs)
    {
        ++report_.samples_checked;
        if (!(lhs <= rhs)) {
            report_.violations.push_back({sample, std::move(params), lhs, rhs, lhs - rhs});
        }
    }

    /// Records lhs > rhs (strict, no tolerance).
    void strictly_greater(std::size_t sample, std::vector<double> params, double lhs, double rhs)
    {
        ++report_.samples_checked;
        if (!(lhs > rhs)) {
            report_.violations.push_back({sample, std::move(params), lhs, rhs, rhs - lhs});
        }
    }

    void skipped_sample() { ++report_.samples_checked; }

    AxiomReport take() { return std::move(report_); }

private:
    AxiomReport report_;
};

void require_count(std::size_t count)
{
    if (count < 1) {
        throw ConfigError("axiom check: sample count must be at least 1");
    }
}

// Largest deviation among the six permutations of (x, y, z) from the identity order.
double permutation_spread(const ModularGMetric& w, double lam, const GridFunction& x, const GridFunction& y,
                          const GridFunction& z)
{
    const double base = eval_omega(w, lam, x, y, z);
    const std::array<double, 5> others{eval_omega(w, lam, x, z, y), eval_omega(w, lam, y, x, z),
                                       eval_omega(w, lam, y, z, x), eval_omega(w, lam, z, x, y),
                                       eval_omega(w, lam, z, y, x)};
    double spread = 0.0;
    for (double v : others) {
        spread = std::max(spread, std::abs(v - base));
    }
    return spread;
}

}  // namespace

std::vector<AxiomReport> check_axioms(const ModularGMetric& w, const GridSampler& sampler, std::size_t count,
                                      double tol)
{
    require_count(count);
    Recorder g1(AxiomId::G1, tol), g2(AxiomId::G2, tol), g3(AxiomId::G3, tol), g4(AxiomId::G4, tol),
        g5(AxiomId::G5, tol);

    for (std::size_t s = 0; s < count; ++s) {
        auto rng = sampler.engine_for(s);
        const GridFunction x = sampler.draw(rng);
        const GridFunction y = sampler.draw_distinct(rng, x);
        const GridFunction z = sampler.draw_distinct(rng, y);
        const GridFunction a = sampler.draw(rng);
        const double lam = sampler.draw_lambda(rng);
        const double mu = sampler.draw_lambda(rng);

        g1.leq(s, {lam}, eval_omega(w, lam, x, x, x), 0.0);
        g2.strictly_greater(s, {lam}, eval_omega(w, lam, x, x, y), 0.0);
        g3.leq(s, {lam}, eval_omega(w, lam, x, x, y), eval_omega(w, lam, x, y, z));
        g4.leq(s, {lam}, permutation_spread(w, lam, x, y, z), 0.0);
        g5.leq(s, {lam, mu}, eval_omega(w, lam + mu, x, y, z),
               eval_omega(w, lam, x, a, a) + eval_omega(w, mu, a, y, z));
    }
    return {g1.take(), g2.take(), g3.take(), g4.take(), g5.take()};
}

std::vector<AxiomReport> check_axioms_coincident(const ModularGMetric& w, const GridSampler& sampler,
                                                 std::size_t count, double tol)
{
    require_count(count);
    Recorder g1(AxiomId::G1, tol), g4(AxiomId::G4, tol);
    for (std::size_t s = 0; s < count; ++s) {
        auto rng = sampler.engine_for(s);
        const GridFunction x = sampler.draw(rng);
        const double lam = sampler.draw_lambda(rng);
        g1.leq(s, {lam}, eval_omega(w, lam, x, x, x), 0.0);
        g4.leq(s, {lam}, permutation_spread(w, lam, x, x, x), 0.0);
    }
    return {g1.take(), g4.take()};
}

namespace {

// Near-coincident triple: x, x + δ·g1, x + δ·g2 with δ spanning the tolerance scale.
std::array<GridFunction, 3> near_coincident(const GridSampler& sampler, std::mt19937_64& rng)
{
    static constexpr std::array<double, 6> kScales{0.0, 1e-14, 1e-13, 5e-13, 1e-12, 1e-9};
    std::uniform_int_distribution<std::size_t> pick(0, kScales.size() - 1);
    std::uniform_real_distribution<double> unit(-1.0, 1.0);
    const double delta = kScales[pick(rng)];
    GridFunction x = sampler.draw(rng);
    std::vector<double> y(x.values().begin(), x.values().end());
    std::vector<double> z = y;
    for (std::size_t i = 0; i < y.size(); ++i) {
        y[i] += delta * unit(rng);
        z[i] += delta * unit(rng);
    }
    const double len = x.omega_len();
    return {std::move(x), GridFunction(len, std::move(y)), GridFunction(len, std::move(z))};
}

double pointwise_spread(const GridFunction& x, const GridFunction& y, const GridFunction& z)
{
    double m = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double hi = std::max({x[i], y[i], z[i]});
        const double lo = std::min({x[i], y[i], z[i]});
        m = std::max(m, hi - lo);
    }
    return m;
}

}  // namespace

std::vector<AxiomReport> check_derived_inequalities(const ModularGMetric& w, const GridSampler& sampler,
                                                    std::size_t count, double tol)
{
    require_count(count);
    Recorder p1(AxiomId::P2_1, tol), p2(AxiomId::P2_2, tol), p3(AxiomId::P2_3, tol), p4(AxiomId::P2_4, tol),
        p5(AxiomId::P2_5, tol), p6(AxiomId::P2_6, tol);

    for (std::size_t s = 0; s < count; ++s) {
        auto rng = sampler.engine_for(s);
        const GridFunction x = sampler.draw(rng);
        const GridFunction y = sampler.draw(rng);
        const GridFunction z = sampler.draw(rng);
        const GridFunction a = sampler.draw(rng);
        const double lam = sampler.draw_lambda(rng);
        const double h = lam / 2.0;
        const double q = lam / 4.0;

        const double wxyz = eval_omega(w, lam, x, y, z);
        p2.leq(s, {lam}, wxyz, eval_omega(w, h, x, x, y) + eval_omega(w, h, x, x, z));
        p3.leq(s, {lam}, eval_omega(w, lam, x, y, y), 2.0 * eval_omega(w, h, x, x, y));
        p4.leq(s, {lam}, wxyz, eval_omega(w, h, x, a, z) + eval_omega(w, h, a, y, z));
        p5.leq(s, {lam}, wxyz,
               (2.0 / 3.0) * (eval_omega(w, h, x, y, a) + eval_omega(w, h, x, a, z) + eval_omega(w, h, a, y, z)));
        p6.leq(s, {lam}, wxyz, eval_omega(w, h, x, a, a) + eval_omega(w, q, y, a, a) + eval_omega(w, q, z, a, a));

        // Item (1): vanishing for every sampled λ forces coincidence.
        const auto [u, v, r] = near_coincident(sampler, rng);
        std::array<double, 4> lambdas{};
        bool all_small = true;
        double lam_max = 0.0;
        for (double& l : lambdas) {
            l = sampler.draw_lambda(rng);
            lam_max = std::max(lam_max, l);
            all_small = all_small && eval_omega(w, l, u, v, r) <= tol;
        }
        if (all_small) {
            p1.leq_exact(s, {lam_max}, pointwise_spread(u, v, r), (1.0 + lam_max) * tol);
        } else {
            p1.skipped_sample();
        }
    }
    return {p1.take(), p2.take(), p3.take(), p4.take(), p5.take(), p6.take()};
}

}  // namespace gmetric
