#include "sagin/monte_carlo.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <random>
#include <thread>
#include <vector>

#include "sagin/seeding.hpp"

namespace sagin {
namespace {

constexpr std::size_t kChunk = 1 << 18;

struct ChunkSums {
    double sum = 0.0;
    double sum_sq = 0.0;
    std::size_t in_cone = 0;
};

Vec3 unit_vector(std::mt19937_64& rng) {
    std::normal_distribution<double> g(0.0, 1.0);
    for (;;) {
        Vec3 v{g(rng), g(rng), g(rng)};
        const double n = norm(v);
        if (n > 1e-12) return {v[0] / n, v[1] / n, v[2] / n};
    }
}

ChunkSums run_chunk(std::size_t count, std::uint64_t seed, const Vec3& sat_pos, const GeometryConfig& geom,
                    const ChannelConfig& channel, double d_max) {
    std::mt19937_64 rng(seed);
    const double r = geom.earth_radius_km;
    const double shell = r + geom.eavesdropper_altitude_km;
    const double sn = norm(sat_pos);
    const Vec3 sub{r * sat_pos[0] / sn, r * sat_pos[1] / sn, r * sat_pos[2] / sn};
    const double k = static_cast<double>(geom.num_eavesdroppers);
    ChunkSums out;
    for (std::size_t i = 0; i < count; ++i) {
        const Vec3 u = unit_vector(rng);
        const Vec3 v = unit_vector(rng);
        // Satellite visible above the local horizon of the surface point below u.
        const bool in_cone = dot(sat_pos, u) >= r;
        const Vec3 e{shell * v[0], shell * v[1], shell * v[2]};
        const double d = distance(e, sub);
        double x = 0.0;
        if (in_cone) {
            ++out.in_cone;
            if (d > geom.eavesdropper_altitude_km && d <= d_max)
                x = k * channel.bandwidth_hz * std::log2(1.0 + mean_snr(d, channel));
        }
        out.sum += x;
        out.sum_sq += x * x;
    }
    return out;
}

} // namespace

MonteCarloEstimate monte_carlo_eavesdrop_capacity(std::size_t sat, const GeometryConfig& geom,
                                                  const ChannelConfig& channel, std::size_t samples,
                                                  std::uint64_t seed, unsigned threads) {
    MonteCarloEstimate est;
    est.samples = samples;
    if (samples == 0 || geom.num_eavesdroppers == 0) return est;
    const Vec3 sat_pos = serving_positions(geom).at(sat).position;
    // Longest mutually visible separation between the two shells.
    const double d_max = std::sqrt(dot(sat_pos, sat_pos) - geom.earth_radius_km * geom.earth_radius_km) +
                         std::sqrt(std::pow(geom.earth_radius_km + geom.eavesdropper_altitude_km, 2) -
                                   geom.earth_radius_km * geom.earth_radius_km);

    const std::size_t n_chunks = (samples + kChunk - 1) / kChunk;
    std::vector<ChunkSums> parts(n_chunks);
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t c = next++; c < n_chunks; c = next++) {
            const std::size_t count = std::min(kChunk, samples - c * kChunk);
            parts[c] = run_chunk(count, derive_seed(seed, c), sat_pos, geom, channel, d_max);
        }
    };
    const unsigned n_threads = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(n_chunks)));
    std::vector<std::thread> pool;
    for (unsigned t = 1; t < n_threads; ++t) pool.emplace_back(worker);
    worker();
    for (auto& th : pool) th.join();

    double sum = 0.0, sum_sq = 0.0;
    std::size_t in_cone = 0;
    for (const auto& p : parts) {
        sum += p.sum;
        sum_sq += p.sum_sq;
        in_cone += p.in_cone;
    }
    const double n = static_cast<double>(samples);
    est.value = sum / n;
    est.standard_error = std::sqrt(std::max(0.0, sum_sq / n - est.value * est.value) / n);
    est.cone_fraction = static_cast<double>(in_cone) / n;
    return est;
}

} // namespace sagin
