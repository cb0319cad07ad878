#include "sagin/scenario.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "sagin/seeding.hpp"

namespace sagin {

std::vector<double> Scenario::delays(const PopulationState& state) const {
    std::vector<double> d(state.size());
    for (std::size_t i = 0; i < state.size(); ++i)
        d[i] = queuing_delay(arrival_rate(state.shares[i], state.n_devices, queue), queue.service_rates[i], queue);
    return d;
}

ScenarioModel Scenario::model() const {
    ScenarioModel m;
    m.num_satellites = reports.size();
    m.weights = weights;
    m.evaluate = [reports = reports, queue = queue](const PopulationState& state) {
        std::vector<SatelliteEval> out(reports.size());
        for (std::size_t i = 0; i < reports.size(); ++i) {
            out[i].secrecy = reports[i];
            out[i].delay_s = queuing_delay(arrival_rate(state.shares[i], state.n_devices, queue),
                                           queue.service_rates[i], queue);
        }
        return out;
    };
    return m;
}

double legit_link_snr(const ExperimentConfig& config, std::size_t sat) {
    const double d = mean_cap_slant_range(config.geometry.earth_radius_km, config.geometry.altitude(sat));
    return mean_snr(d, config.channel);
}

Scenario build_scenario(const ExperimentConfig& config) {
    config.validate();
    Scenario s;
    s.geometry = config.geometry;
    s.queue = config.queue;
    s.weights = config.weights;
    s.satellites = serving_positions(config.geometry);
    for (std::size_t i = 0; i < config.num_satellites(); ++i) {
        ChannelConfig ch = config.channel;
        ch.bandwidth_hz = config.bandwidth(i);
        const double snr = legit_link_snr(config, i);
        SecrecyReport rep =
            secrecy_report(i, snr, config.geometry, ch, config.quad, config.legit_term_includes_bandwidth);
        if (ch.fading_mode == FadingMode::ShadowedRician) {
            std::mt19937_64 rng(derive_seed(ch.rng_seed, i));
            double acc = 0.0;
            for (std::size_t k = 0; k < config.fading_samples; ++k)
                acc += std::log2(1.0 + sample_snr(mean_cap_slant_range(config.geometry.earth_radius_km,
                                                                       config.geometry.altitude(i)),
                                                  ch, rng));
            const double scale = config.legit_term_includes_bandwidth ? ch.bandwidth_hz : 1.0;
            rep.legit_capacity = scale * acc / static_cast<double>(config.fading_samples);
            rep.secrecy_capacity = std::max(0.0, rep.legit_capacity - rep.eavesdrop_capacity);
        }
        s.reports.push_back(rep);
    }
    return s;
}

} // namespace sagin
