#include "sagin/channel.hpp"

#include <cmath>
#include <numbers>

namespace sagin {

void ChannelConfig::validate() const {
    if (!(bandwidth_hz > 0.0)) throw std::invalid_argument("channel.bandwidth_hz must be > 0");
    if (!(reference_snr > 0.0)) throw std::invalid_argument("channel.reference_snr must be > 0");
    if (!(reference_distance_km > 0.0))
        throw std::invalid_argument("channel.reference_distance_km must be > 0");
    if (!(path_loss_exponent >= 2.0)) throw std::invalid_argument("channel.path_loss_exponent must be >= 2");
    if (fading_mode == FadingMode::ShadowedRician &&
        !(rician.b > 0.0 && rician.m > 0.0 && rician.omega > 0.0))
        throw std::invalid_argument("channel.rician parameters must be > 0");
}

double mean_snr(double d_km, const ChannelConfig& config) {
    if (!(d_km > 0.0)) throw std::domain_error("mean_snr: distance must be > 0");
    return config.reference_snr * std::pow(config.reference_distance_km / d_km, config.path_loss_exponent);
}

double sample_channel_gain(const RicianParams& p, std::mt19937_64& rng) {
    std::gamma_distribution<double> los_power(p.m, p.omega / p.m);
    std::uniform_real_distribution<double> phase(0.0, 2.0 * std::numbers::pi);
    std::normal_distribution<double> scatter(0.0, std::sqrt(p.b));
    const double amp = std::sqrt(los_power(rng));
    const double th = phase(rng);
    const double re = amp * std::cos(th) + scatter(rng);
    const double im = amp * std::sin(th) + scatter(rng);
    return (re * re + im * im) / (p.omega + 2.0 * p.b);
}

double sample_snr(double d_km, const ChannelConfig& config, std::mt19937_64& rng) {
    if (config.fading_mode != FadingMode::ShadowedRician)
        throw ModeError("sample_snr requires ShadowedRician fading mode");
    return mean_snr(d_km, config) * sample_channel_gain(config.rician, rng);
}

} // namespace sagin
