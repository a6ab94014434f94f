#include "gmetric/sampling.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "gmetric/error.hpp"

namespace gmetric {

namespace {

constexpr double kDistinctGap = 1e-6;

}  // namespace

GridSampler::GridSampler(SamplerConfig cfg) : cfg_(cfg)
{
    if (cfg_.n < 2 || !(cfg_.omega_len > 0.0) || !(cfg_.amplitude > 0.0) || !(cfg_.lambda_max > 0.0)) {
        throw ConfigError("sampler: need n >= 2 and positive omega, amplitude and lambda_max");
    }
}

std::mt19937_64 GridSampler::engine_for(std::size_t sample_index) const
{
    const auto idx = static_cast<std::uint64_t>(sample_index);
    std::seed_seq seq{static_cast<std::uint32_t>(cfg_.seed), static_cast<std::uint32_t>(cfg_.seed >> 32),
                      static_cast<std::uint32_t>(idx), static_cast<std::uint32_t>(idx >> 32)};
    return std::mt19937_64(seq);
}

GridFunction GridSampler::draw(std::mt19937_64& rng) const
{
    std::uniform_real_distribution<double> unit(-1.0, 1.0);
    std::uniform_int_distribution<int> shape(0, 9);
    const double a = cfg_.amplitude;
    std::vector<double> v(cfg_.n);

    if (shape(rng) == 0) {
        std::fill(v.begin(), v.end(), a * unit(rng));
        return GridFunction(cfg_.omega_len, std::move(v));
    }

    // Cubic in the normalized coordinate; coefficients sum to at most a in magnitude.
    const double c0 = 0.4 * a * unit(rng);
    const double c1 = 0.3 * a * unit(rng);
    const double c2 = 0.2 * a * unit(rng);
    const double c3 = 0.1 * a * unit(rng);
    const double noise = 0.05 * a;
    for (std::size_t i = 0; i < cfg_.n; ++i) {
        const double s = static_cast<double>(i) / static_cast<double>(cfg_.n - 1);
        const double p = c0 + s * (c1 + s * (c2 + s * c3)) + noise * unit(rng);
        v[i] = std::clamp(p, -a, a);
    }
    return GridFunction(cfg_.omega_len, std::move(v));
}

GridFunction GridSampler::draw_distinct(std::mt19937_64& rng, const GridFunction& other) const
{
    GridFunction y = draw(rng);
    if (sup_distance(y, other) >= kDistinctGap) {
        return y;
    }
    // Push one node away from `other`, staying inside the amplitude box.
    std::vector<double> v(y.values().begin(), y.values().end());
    std::uniform_int_distribution<std::size_t> pick(0, v.size() - 1);
    const std::size_t i = pick(rng);
    v[i] = other[i] + (other[i] > 0.0 ? -1.0 : 1.0) * 0.5 * cfg_.amplitude;
    return GridFunction(cfg_.omega_len, std::move(v));
}

GridFunction GridSampler::draw_above(std::mt19937_64& rng, const GridFunction& other) const
{
    GridFunction bump = draw(rng);
    std::vector<double> v(other.size());
    for (std::size_t i = 0; i < v.size(); ++i) {
        v[i] = other[i] + std::abs(bump[i]);
    }
    return GridFunction(other.omega_len(), std::move(v));
}

double GridSampler::draw_lambda(std::mt19937_64& rng) const
{
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    return cfg_.lambda_max * (1.0 - unit(rng));
}

}  // namespace gmetric
