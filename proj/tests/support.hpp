#pragma once

#include <vector>

#include "sagin/game.hpp"
#include "sagin/queueing.hpp"

namespace sagin::test {

/// Scenario closure with fixed secrecy capacities and M/M/1 delays.
inline ScenarioModel make_model(std::vector<double> capacities, std::vector<double> service_rates,
                                double task_rate, double alpha, double beta) {
    QueueConfig q;
    q.service_rates = std::move(service_rates);
    q.per_device_task_rate = task_rate;
    ScenarioModel m;
    m.num_satellites = capacities.size();
    m.weights = {alpha, beta};
    m.evaluate = [caps = std::move(capacities), q](const PopulationState& s) {
        std::vector<SatelliteEval> out(caps.size());
        for (std::size_t i = 0; i < caps.size(); ++i) {
            out[i].secrecy.satellite_id = i;
            out[i].secrecy.secrecy_capacity = caps[i];
            out[i].delay_s = queuing_delay(arrival_rate(s.shares[i], s.n_devices, q), q.service_rates[i], q);
        }
        return out;
    };
    return m;
}

/// Identical satellites: C = 8.9 Mbit/s, mu = 10 tasks/s.
inline ScenarioModel symmetric_model(std::size_t m = 4) {
    return make_model(std::vector<double>(m, 8.9e6), std::vector<double>(m, 10.0), 0.01, 1e-5, 1.0);
}

/// Two satellites, secrecy disabled, service rates 20 and 10, total load 15 tasks/s at N = 1000.
inline ScenarioModel delay_only_model() { return make_model({1.0e6, 1.0e6}, {20.0, 10.0}, 0.015, 0.0, 1.0); }

} // namespace sagin::test
