#pragma once

#include <cstddef>
#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "sagin/config.hpp"
#include "sagin/scenario.hpp"

namespace sagin {

struct ExperimentRecord {
    std::string strategy;
    std::size_t n_devices = 0;
    std::size_t replication = 0;
    std::size_t round = 0;
    double avg_utility = 0.0;
    double normalized_utility = 0.0;
    double mean_risk_probability = 0.0;
    double mean_queuing_delay = 0.0;
    bool converged = true;
    std::vector<double> shares;

    bool operator==(const ExperimentRecord&) const = default;
};

struct TraceRow {
    std::string strategy;
    std::size_t n_devices = 0;
    std::size_t replication = 0;
    std::size_t round = 0;
    double avg_utility = 0.0;
    std::vector<double> shares;
};

struct RunOptions {
    unsigned parallel = 1;
    bool trace = false;
};

struct ExperimentOutput {
    std::vector<ExperimentRecord> records; // sorted by (strategy, n_devices, replication)
    std::vector<TraceRow> trace;
};

/// Seed shared by every strategy at one (N, replication): device placement and demands.
std::uint64_t scenario_seed(std::uint64_t master_seed, std::size_t n_devices, std::size_t replication);
std::uint64_t strategy_seed(std::uint64_t master_seed, Strategy strategy, std::size_t n_devices,
                            std::size_t replication);

std::vector<double> draw_demands(std::size_t n_devices, const RiskDistribution& risk, std::mt19937_64& rng);

/// Mean risk when each device's capacity is its satellite's secrecy capacity split across occupants.
double risk_metric(const std::vector<std::size_t>& assignments, const std::vector<SecrecyReport>& reports,
                   const std::vector<double>& demands, double risk_exponent);

/// Expected mean risk when each device picks satellite i with probability x_i.
double risk_metric(const PopulationState& state, const std::vector<SecrecyReport>& reports,
                   const std::vector<double>& demands, double risk_exponent, double min_share_floor);

/// Draws demands from `risk` and scores an assignment.
double risk_metric(const std::vector<std::size_t>& assignments, const std::vector<SecrecyReport>& reports,
                   const RiskDistribution& risk, std::mt19937_64& rng);

/// Device-averaged delay, sum_i x_i D_i.
double mean_delay(const Scenario& scenario, const PopulationState& state);

/// max(0, 1 - (opt - value) / |opt|); equals value / opt when opt > 0.
double normalize_utility(double value, double optimum);

ExperimentOutput run_experiment(const ExperimentConfig& config, const RunOptions& options);
std::vector<ExperimentRecord> run_experiment(const ExperimentConfig& config);

void sort_records(std::vector<ExperimentRecord>& records);

} // namespace sagin

namespace sagin {

/// Copy of `base` with `m` serving satellites at evenly spaced phases.
ExperimentConfig with_satellite_count(const ExperimentConfig& base, std::size_t m);

struct TinyOracleReport {
    std::size_t n_devices = 0;
    std::size_t num_satellites = 0;
    std::vector<std::size_t> integer_counts;
    double integer_optimum = 0.0;
    std::vector<double> relaxed_shares;
    double relaxed_optimum = 0.0;
    double utility_spread = 0.0;   // max - min utility over supported satellites at the relaxed optimum
    double granularity_bound = 0.0; // utility_spread / N
    std::vector<std::size_t> agent_counts;
    double agent_utility = 0.0;
    double replicator_utility = 0.0;
};

/// Exhaustive integer optimum versus the simplex relaxation and both game engines.
TinyOracleReport tiny_oracle(const ExperimentConfig& config, std::size_t n_devices);

} // namespace sagin
