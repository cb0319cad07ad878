#pragma once

#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "sagin/channel.hpp"
#include "sagin/game.hpp"
#include "sagin/geometry.hpp"
#include "sagin/quadrature.hpp"
#include "sagin/queueing.hpp"
#include "sagin/strategies.hpp"

namespace sagin {

/// Invalid configuration; `key()` is the dotted path of the offending entry.
class ConfigError : public std::runtime_error {
public:
    ConfigError(std::string key, const std::string& message)
        : std::runtime_error(message), key_(std::move(key)) {}
    const std::string& key() const { return key_; }

private:
    std::string key_;
};

class IoError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct RiskDistribution {
    double demand_min_bps = 0.0;
    double demand_max_bps = 40000.0;
    double risk_exponent = 1e-3; // 1/(bit/s)
};

enum class Engine { Replicator, Agent };

struct ExperimentConfig {
    GeometryConfig geometry{};
    ChannelConfig channel{};
    std::vector<double> bandwidth_hz_per_satellite{1.4e6, 1.2e6, 0.8e6, 0.6e6};
    bool legit_term_includes_bandwidth = true;
    std::size_t fading_samples = 10000;
    QueueConfig queue{};
    UtilityWeights weights{};
    GameConfig game{};
    Engine engine = Engine::Replicator;
    QuadratureConfig quad{};
    RiskDistribution risk{};
    std::size_t grid_resolution = 100;
    std::vector<std::size_t> population_sizes{100, 200, 300, 400, 500, 600, 700, 800, 900, 1000};
    std::vector<Strategy> strategies{Strategy::Optimal, Strategy::Evolutionary, Strategy::Random, Strategy::Nearest,
                                     Strategy::Fixed};
    std::size_t fixed_target = 0;
    std::size_t replications = 10;
    std::string output_path = "results.csv";
    std::uint64_t master_seed = 20240601;

    std::size_t num_satellites() const { return geometry.num_serving; }
    double bandwidth(std::size_t sat) const;

    /// Throws ConfigError naming the first violated invariant.
    void validate() const;
};

ExperimentConfig default_config();

/// Parses JSON text. Unknown keys and invariant violations throw ConfigError.
ExperimentConfig parse_config(const std::string& json_text);

/// Reads and parses a config file. Unreadable files throw IoError.
ExperimentConfig load_config(const std::string& path);

/// Applies SAGIN_SIM_SEED when set. Throws ConfigError on a malformed value.
void apply_seed_override(ExperimentConfig& config);

} // namespace sagin
