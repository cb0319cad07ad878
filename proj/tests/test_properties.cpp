#include "doctest.h"

#include <cmath>
#include <numeric>
#include <random>

#include "sagin/game.hpp"
#include "sagin/geometry.hpp"
#include "sagin/secrecy.hpp"
#include "support.hpp"

using namespace sagin;

namespace {

std::vector<double> random_simplex(std::size_t m, std::mt19937_64& rng) {
    std::exponential_distribution<double> e(1.0);
    std::vector<double> x(m);
    for (double& v : x) v = e(rng);
    const double s = std::accumulate(x.begin(), x.end(), 0.0);
    for (double& v : x) v /= s;
    return x;
}

} // namespace

TEST_CASE("cap geometry is monotone and bounded") {
    std::mt19937_64 rng(1);
    std::uniform_real_distribution<double> h(1.0, 40000.0);
    for (int k = 0; k < 2000; ++k) {
        const double a = h(rng), b = h(rng);
        const double pa = threat_probability(6371.0, a);
        CHECK(pa > 0.0);
        CHECK(pa < 0.5);
        if (a < b) {
            CHECK(effective_half_angle(6371.0, a) < effective_half_angle(6371.0, b));
            CHECK(pa < threat_probability(6371.0, b));
        }
    }
}

TEST_CASE("satellites stay on their shells") {
    GeometryConfig g;
    g.serving_altitude_km = {300.0, 550.0, 1200.0, 20000.0};
    std::mt19937_64 rng(2);
    std::uniform_real_distribution<double> t(0.0, 1e7);
    for (int k = 0; k < 200; ++k)
        for (const auto& p : serving_positions(g, t(rng)))
            CHECK(norm(p.position) == doctest::Approx(g.earth_radius_km + p.altitude_km).epsilon(1e-9));
}

TEST_CASE("density mass over the visible range") {
    GeometryConfig g;
    const double mass = integrate([&](double d) { return distance_pdf(d, g); }, g.eavesdropper_altitude_km,
                                  max_los_distance(g), {1 << 16, QuadratureRule::Midpoint});
    MESSAGE("distance density mass on (H_e, D_max] = " << mass);
    CHECK(mass > 0.0);
    CHECK(mass <= 1.0);
}

TEST_CASE("snr, secrecy and risk monotonicity") {
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    const ChannelConfig c;
    for (int k = 0; k < 2000; ++k) {
        const double d1 = 1.0 + 5000.0 * u(rng), d2 = 1.0 + 5000.0 * u(rng);
        if (d1 < d2) CHECK(mean_snr(d1, c) > mean_snr(d2, c));
        const double g = 1e4 * u(rng), ce1 = 1e7 * u(rng), ce2 = 1e7 * u(rng);
        const double s1 = secrecy_capacity(g, ce1, 1e6), s2 = secrecy_capacity(g, ce2, 1e6);
        CHECK(s1 >= 0.0);
        if (ce1 < ce2) CHECK(s1 >= s2);
        const RiskParams risk{2e7 * u(rng), 1e-3 * u(rng) + 1e-9};
        const double rp = risk_probability(s1, risk);
        CHECK(rp >= 0.0);
        CHECK(rp <= 1.0);
        if (risk.risk_exponent * (risk.secrecy_demand - s1) < 30.0) CHECK(rp < 1.0);
        if (risk.secrecy_demand <= s1) CHECK(rp == 0.0);
    }
}

TEST_CASE("replicator step keeps the simplex and the selection direction") {
    std::mt19937_64 rng(4);
    std::normal_distribution<double> n(0.0, 1.0);
    GameConfig cfg;
    for (int k = 0; k < 2000; ++k) {
        const std::size_t m = 2 + k % 5;
        PopulationState s{random_simplex(m, rng), 500, 0};
        UtilityProfile p;
        p.per_satellite.resize(m);
        for (double& v : p.per_satellite) v = n(rng);
        for (std::size_t i = 0; i < m; ++i) p.average += s.shares[i] * p.per_satellite[i];

        double drift = 1.0;
        const auto next = replicator_step(s, p, cfg, &drift);
        CHECK(std::abs(drift) < 1e-8);
        CHECK(std::accumulate(next.shares.begin(), next.shares.end(), 0.0) == doctest::Approx(1.0).epsilon(1e-12));
        const auto raw = replicator_euler(s, p, cfg);
        for (std::size_t i = 0; i < m; ++i) {
            CHECK(next.shares[i] >= 0.0);
            if (s.shares[i] > cfg.min_share_floor && s.shares[i] < 1.0) {
                if (p.per_satellite[i] > p.average) CHECK(raw[i] > s.shares[i]);
                if (p.per_satellite[i] < p.average) CHECK(raw[i] < s.shares[i]);
            }
        }

        // Common shifts leave the update unchanged; positive scaling scales the velocity.
        UtilityProfile shifted = p, scaled = p;
        for (double& v : shifted.per_satellite) v += 7.5;
        shifted.average += 7.5;
        for (double& v : scaled.per_satellite) v *= 3.0;
        scaled.average *= 3.0;
        const auto rs = replicator_euler(s, shifted, cfg);
        const auto rc = replicator_euler(s, scaled, cfg);
        for (std::size_t i = 0; i < m; ++i) {
            CHECK(rs[i] == doctest::Approx(raw[i]).epsilon(1e-12));
            CHECK(rc[i] - s.shares[i] == doctest::Approx(3.0 * (raw[i] - s.shares[i])).epsilon(1e-9).scale(1e-15));
        }
    }
}

TEST_CASE("fixed points coincide with exact equilibria") {
    std::mt19937_64 rng(5);
    GameConfig cfg;
    GameConfig exact = cfg;
    exact.equilibrium_tolerance = 1e-300;
    for (int k = 0; k < 500; ++k) {
        const std::size_t m = 3;
        PopulationState s{random_simplex(m, rng), 100, 0};
        UtilityProfile p;
        const bool flat = k % 2 == 0;
        p.per_satellite = flat ? std::vector<double>(m, 1.25) : std::vector<double>{1.0, 2.0, 3.0 + k};
        for (std::size_t i = 0; i < m; ++i) p.average += s.shares[i] * p.per_satellite[i];
        if (flat) p.average = 1.25;
        const auto next = replicator_step(s, p, cfg);
        double change = 0.0;
        for (std::size_t i = 0; i < m; ++i) change = std::max(change, std::abs(next.shares[i] - s.shares[i]));
        CHECK((change <= 1e-12) == flat);
        CHECK(equilibrium_detected(p, s, exact) == flat);
    }
}

TEST_CASE("utility profile average is the share-weighted utility") {
    std::mt19937_64 rng(6);
    const auto model = test::make_model({12.5e6, 10.7e6, 7.1e6, 5.3e6}, {11.0, 10.5, 9.5, 9.0}, 0.01, 1e-5, 1.0);
    for (int k = 0; k < 500; ++k) {
        const PopulationState s{random_simplex(4, rng), 1000, 0};
        const auto p = evaluate_profile(model, s);
        double avg = 0.0;
        for (std::size_t i = 0; i < 4; ++i) avg += s.shares[i] * p.per_satellite[i];
        CHECK(p.average == doctest::Approx(avg).epsilon(1e-12));
    }
}
