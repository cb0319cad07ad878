#pragma once

#include <cstdint>
#include <random>
#include <stdexcept>

namespace sagin {

enum class FadingMode { MeanOnly, ShadowedRician };

struct RicianParams {
    double b = 0.126;     // average scattered power
    double m = 10.1;      // Nakagami severity of the LOS component
    double omega = 0.835; // average LOS power
};

struct ChannelConfig {
    double bandwidth_hz = 1.0e6;
    double reference_snr = 1.0e4;
    double reference_distance_km = 300.0;
    double path_loss_exponent = 2.0;
    FadingMode fading_mode = FadingMode::MeanOnly;
    RicianParams rician{};
    std::uint64_t rng_seed = 1;

    void validate() const;
};

class ModeError : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

/// Path-loss SNR, reference_snr * (d_ref / d)^n. Throws std::domain_error for d <= 0.
double mean_snr(double d_km, const ChannelConfig& config);

/// Unit-mean shadowed-Rician channel power gain.
double sample_channel_gain(const RicianParams& params, std::mt19937_64& rng);

/// mean_snr scaled by a fading gain. Throws ModeError in MeanOnly mode.
double sample_snr(double d_km, const ChannelConfig& config, std::mt19937_64& rng);

} // namespace sagin
