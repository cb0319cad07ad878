#pragma once

#include <vector>

#include "sagin/config.hpp"
#include "sagin/game.hpp"
#include "sagin/secrecy.hpp"

namespace sagin {

struct Scenario {
    GeometryConfig geometry;
    QueueConfig queue;
    UtilityWeights weights;
    std::vector<SatellitePosition> satellites;
    std::vector<SecrecyReport> reports;

    /// Closure over the fixed secrecy reports; delays follow the load at each state.
    ScenarioModel model() const;
    std::vector<double> delays(const PopulationState& state) const;
};

/// Legitimate link SNR for a satellite: path-loss SNR at the mean slant range to its cap.
double legit_link_snr(const ExperimentConfig& config, std::size_t sat);

Scenario build_scenario(const ExperimentConfig& config);

} // namespace sagin
