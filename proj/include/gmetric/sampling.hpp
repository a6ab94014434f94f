#pragma once

#include <cstddef>
#include <cstdint>
#include <random>

#include "gmetric/grid_function.hpp"

namespace gmetric {

struct SamplerConfig {
    double omega_len = 1.0;
    std::size_t n = 33;
    /// Sampled values lie in [−amplitude, amplitude].
    double amplitude = 10.0;
    /// λ, μ draws lie in (0, lambda_max].
    double lambda_max = 5.0;
    std::uint64_t seed = 0;
};

/// Seeded source of random grid functions.
///
/// Every sample index gets its own engine derived from (seed, index), so a
/// draw does not depend on how samples are scheduled across threads.
class GridSampler {
public:
    explicit GridSampler(SamplerConfig cfg);

    const SamplerConfig& config() const noexcept { return cfg_; }

    std::mt19937_64 engine_for(std::size_t sample_index) const;

    /// Random cubic plus small noise, clamped to the amplitude; occasionally constant.
    GridFunction draw(std::mt19937_64& rng) const;

    /// Like draw(), but guaranteed to differ from `other` by at least 1e−6 at some node.
    GridFunction draw_distinct(std::mt19937_64& rng, const GridFunction& other) const;

    /// other + (nonnegative random function); always ⪰ other pointwise.
    GridFunction draw_above(std::mt19937_64& rng, const GridFunction& other) const;

    /// Uniform in (0, lambda_max].
    double draw_lambda(std::mt19937_64& rng) const;

private:
    SamplerConfig cfg_;
};

}  // namespace gmetric
