#include "doctest.h"

#include <random>

#include "sagin/channel.hpp"

using namespace sagin;

TEST_CASE("path-loss snr") {
    ChannelConfig c;
    CHECK(mean_snr(c.reference_distance_km, c) == c.reference_snr);
    CHECK(mean_snr(1200.0, c) == doctest::Approx(mean_snr(600.0, c) / 4.0).epsilon(1e-14));
    CHECK(mean_snr(600.0, c) == doctest::Approx(2500.0).epsilon(1e-14));
    CHECK(mean_snr(601.0, c) < mean_snr(600.0, c));
    CHECK_THROWS_AS(mean_snr(0.0, c), std::domain_error);
    CHECK_THROWS_AS(mean_snr(-5.0, c), std::domain_error);
}

TEST_CASE("fading sampler requires the fading mode") {
    ChannelConfig c;
    std::mt19937_64 rng(1);
    CHECK_THROWS_AS(sample_snr(600.0, c, rng), ModeError);
}

TEST_CASE("shadowed-Rician power has unit mean") {
    ChannelConfig c;
    c.fading_mode = FadingMode::ShadowedRician;
    std::mt19937_64 rng(c.rng_seed);
    const int n = 1000000;
    double sum = 0.0;
    for (int k = 0; k < n; ++k) sum += sample_snr(600.0, c, rng);
    CHECK(sum / n == doctest::Approx(mean_snr(600.0, c)).epsilon(5e-3));
}

TEST_CASE("shadowed-Rician degenerate limit collapses to the mean") {
    ChannelConfig c;
    c.fading_mode = FadingMode::ShadowedRician;
    c.rician = {1e-9, 1e7, 1.0};
    std::mt19937_64 rng(3);
    const int n = 100000;
    double sum = 0.0;
    for (int k = 0; k < n; ++k) sum += sample_snr(900.0, c, rng);
    CHECK(sum / n == doctest::Approx(mean_snr(900.0, c)).epsilon(1e-2));
}

TEST_CASE("fading samples are reproducible") {
    ChannelConfig c;
    c.fading_mode = FadingMode::ShadowedRician;
    std::mt19937_64 a(42), b(42);
    for (int k = 0; k < 100; ++k) CHECK(sample_snr(700.0, c, a) == sample_snr(700.0, c, b));
}

TEST_CASE("channel config validation") {
    ChannelConfig c;
    c.path_loss_exponent = 1.5;
    CHECK_THROWS_AS(c.validate(), std::invalid_argument);
    c = ChannelConfig{};
    c.bandwidth_hz = 0.0;
    CHECK_THROWS_AS(c.validate(), std::invalid_argument);
    c = ChannelConfig{};
    c.fading_mode = FadingMode::ShadowedRician;
    c.rician.m = 0.0;
    CHECK_THROWS_AS(c.validate(), std::invalid_argument);
    CHECK_NOTHROW(ChannelConfig{}.validate());
}
