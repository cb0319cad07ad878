#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <random>
#include <vector>

#include "sagin/secrecy.hpp"

namespace sagin {

struct PopulationState {
    std::vector<double> shares;
    std::size_t n_devices = 0;
    std::size_t round = 0;

    std::size_t size() const { return shares.size(); }
    /// Throws std::invalid_argument unless shares lie on the simplex within `tol`.
    void validate(double tol = 1e-9) const;
};

PopulationState uniform_state(std::size_t m, std::size_t n_devices);

struct UtilityWeights {
    double alpha = 1e-5; // per bit/s
    double beta = 1.0;   // per second

    void validate() const;
};

enum class MigrationTarget { Surplus, Uniform };

struct GameConfig {
    double learning_rate = 1.0;
    double time_step = 0.01;
    std::size_t max_rounds = 20000;
    double equilibrium_tolerance = 1e-4;
    double min_share_floor = 1e-6;
    double move_probability = 0.1;
    MigrationTarget migration_target = MigrationTarget::Surplus;
    std::size_t agent_stall_rounds = 25;
    std::uint64_t rng_seed = 0;

    void validate() const;
};

struct UtilityProfile {
    std::vector<double> per_satellite;
    double average = 0.0;
};

struct SatelliteEval {
    SecrecyReport secrecy;
    double delay_s = 0.0;
};

/// Scenario closure: per-satellite secrecy and delay at a population state.
struct ScenarioModel {
    std::size_t num_satellites = 0;
    UtilityWeights weights{};
    std::function<std::vector<SatelliteEval>(const PopulationState&)> evaluate;
};

double utility(std::size_t sat, const PopulationState& state, const SecrecyReport& secrecy, double delay,
               const UtilityWeights& weights, double min_share_floor = 1e-6);

/// Throws std::invalid_argument when the lengths disagree with the state.
UtilityProfile utility_profile(const PopulationState& state, const std::vector<SecrecyReport>& reports,
                               const std::vector<double>& delays, const UtilityWeights& weights,
                               double min_share_floor = 1e-6);

UtilityProfile evaluate_profile(const ScenarioModel& model, const PopulationState& state,
                                double min_share_floor = 1e-6);

/// Raw Euler update x + dt * sigma * x * (pi - pibar), before flooring.
std::vector<double> replicator_euler(const PopulationState& state, const UtilityProfile& profile,
                                     const GameConfig& config);

/// Euler step, floor and renormalize. `drift` receives the pre-normalization sum change.
PopulationState replicator_step(const PopulationState& state, const UtilityProfile& profile,
                                const GameConfig& config, double* drift = nullptr);

bool is_supported(double share, double min_share_floor);

bool equilibrium_detected(const UtilityProfile& profile, const PopulationState& state, const GameConfig& config);

/// No satellite held at the floor earns more than the average plus the equilibrium tolerance.
bool no_profitable_entry(const UtilityProfile& profile, const PopulationState& state, const GameConfig& config);

struct TrajectoryPoint {
    PopulationState state;
    UtilityProfile profile;
};

struct ReplicatorRun {
    std::vector<TrajectoryPoint> trajectory; // empty unless recorded
    PopulationState final_state;
    UtilityProfile final_profile;
    std::size_t rounds = 0;
    bool converged = false;
    double max_drift = 0.0;
};

ReplicatorRun run_replicator(const PopulationState& initial, const ScenarioModel& model, const GameConfig& config,
                             bool record_trajectory = false);

std::vector<std::size_t> assignment_counts(const std::vector<std::size_t>& assignments, std::size_t m);
PopulationState state_from_assignments(const std::vector<std::size_t>& assignments, std::size_t m);

/// True when no single device gains more than the equilibrium tolerance by switching satellite.
bool integer_equilibrium(const std::vector<std::size_t>& counts, const ScenarioModel& model, const GameConfig& config);

struct AgentRoundResult {
    std::vector<std::size_t> assignments;
    UtilityProfile profile; // evaluated before migration
    std::size_t migrations = 0;
};

/// One timeslot of the distributed selection algorithm.
AgentRoundResult agent_based_round(const std::vector<std::size_t>& assignments, const ScenarioModel& model,
                                   const GameConfig& config, std::mt19937_64& rng);

struct AgentRun {
    std::vector<std::size_t> assignments;
    PopulationState final_state;
    UtilityProfile final_profile;
    std::vector<std::vector<double>> share_history; // empty unless recorded
    std::size_t rounds = 0;
    bool converged = false;
};

AgentRun run_agent(const std::vector<std::size_t>& initial, const ScenarioModel& model, const GameConfig& config,
                   std::mt19937_64& rng, bool record_history = false);

} // namespace sagin
