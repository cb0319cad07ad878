#pragma once

#include <cstddef>
#include <cstdint>

#include "sagin/channel.hpp"
#include "sagin/geometry.hpp"

namespace sagin {

struct MonteCarloEstimate {
    double value = 0.0;          // bit/s
    double standard_error = 0.0; // bit/s
    double cone_fraction = 0.0;
    std::size_t samples = 0;
};

/// Sampling estimate of the aggregate eavesdropping rate against `sat`.
///
/// Each sample draws two independent uniform points on the eavesdropper shell.
/// The first is scored by whether the satellite is above its horizon, the second
/// by its distance to the sub-satellite surface point. Work is split into fixed
/// chunks seeded by chunk index, so the result is independent of `threads`.
MonteCarloEstimate monte_carlo_eavesdrop_capacity(std::size_t sat, const GeometryConfig& geom,
                                                  const ChannelConfig& channel, std::size_t samples,
                                                  std::uint64_t seed, unsigned threads = 1);

} // namespace sagin
