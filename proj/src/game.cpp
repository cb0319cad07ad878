#include "sagin/game.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace sagin {

void PopulationState::validate(double tol) const {
    if (shares.empty()) throw std::invalid_argument("population state has no shares");
    double sum = 0.0;
    for (double x : shares) {
        if (!(x >= 0.0 && x <= 1.0)) throw std::invalid_argument("population share outside [0, 1]");
        sum += x;
    }
    if (std::abs(sum - 1.0) > tol) throw std::invalid_argument("population shares do not sum to 1");
}

PopulationState uniform_state(std::size_t m, std::size_t n_devices) {
    return {std::vector<double>(m, 1.0 / static_cast<double>(m)), n_devices, 0};
}

void UtilityWeights::validate() const {
    if (alpha < 0.0 || beta < 0.0) throw std::invalid_argument("weights.alpha and weights.beta must be >= 0");
    if (alpha == 0.0 && beta == 0.0) throw std::invalid_argument("weights.alpha and weights.beta are both zero");
}

void GameConfig::validate() const {
    if (!(learning_rate > 0.0)) throw std::invalid_argument("game.learning_rate must be > 0");
    if (!(time_step > 0.0)) throw std::invalid_argument("game.time_step must be > 0");
    if (!(equilibrium_tolerance > 0.0)) throw std::invalid_argument("game.equilibrium_tolerance must be > 0");
    if (!(min_share_floor >= 0.0 && min_share_floor < 1.0))
        throw std::invalid_argument("game.min_share_floor must lie in [0, 1)");
    if (!(move_probability > 0.0 && move_probability <= 1.0))
        throw std::invalid_argument("game.move_probability must lie in (0, 1]");
}

double utility(std::size_t sat, const PopulationState& state, const SecrecyReport& secrecy, double delay,
               const UtilityWeights& weights, double min_share_floor) {
    const double x = std::max(state.shares.at(sat), min_share_floor);
    const double per_device = secrecy.secrecy_capacity / (x * static_cast<double>(state.n_devices));
    return weights.alpha * per_device - weights.beta * delay;
}

UtilityProfile utility_profile(const PopulationState& state, const std::vector<SecrecyReport>& reports,
                               const std::vector<double>& delays, const UtilityWeights& weights,
                               double min_share_floor) {
    const std::size_t m = state.size();
    if (reports.size() != m || delays.size() != m)
        throw std::invalid_argument("utility_profile: reports and delays must have one entry per satellite");
    UtilityProfile p;
    p.per_satellite.resize(m);
    for (std::size_t i = 0; i < m; ++i) {
        p.per_satellite[i] = utility(i, state, reports[i], delays[i], weights, min_share_floor);
        p.average += state.shares[i] * p.per_satellite[i];
    }
    return p;
}

UtilityProfile evaluate_profile(const ScenarioModel& model, const PopulationState& state, double min_share_floor) {
    const auto evals = model.evaluate(state);
    std::vector<SecrecyReport> reports;
    std::vector<double> delays;
    reports.reserve(evals.size());
    delays.reserve(evals.size());
    for (const auto& e : evals) {
        reports.push_back(e.secrecy);
        delays.push_back(e.delay_s);
    }
    return utility_profile(state, reports, delays, model.weights, min_share_floor);
}

std::vector<double> replicator_euler(const PopulationState& state, const UtilityProfile& profile,
                                     const GameConfig& config) {
    std::vector<double> x = state.shares;
    const double rate = config.time_step * config.learning_rate;
    for (std::size_t i = 0; i < x.size(); ++i)
        x[i] += rate * state.shares[i] * (profile.per_satellite[i] - profile.average);
    return x;
}

PopulationState replicator_step(const PopulationState& state, const UtilityProfile& profile,
                                const GameConfig& config, double* drift) {
    std::vector<double> x = replicator_euler(state, profile, config);
    if (drift) {
        const double before = std::accumulate(state.shares.begin(), state.shares.end(), 0.0);
        *drift = std::accumulate(x.begin(), x.end(), 0.0) - before;
    }
    double sum = 0.0;
    for (double& v : x) {
        v = std::max(v, config.min_share_floor);
        sum += v;
    }
    for (double& v : x) v /= sum;
    return {std::move(x), state.n_devices, state.round + 1};
}

bool is_supported(double share, double min_share_floor) {
    // Renormalization can leave a floored share a hair above the floor.
    return share > min_share_floor * (1.0 + 1e-3);
}

bool equilibrium_detected(const UtilityProfile& profile, const PopulationState& state, const GameConfig& config) {
    const double bound = config.equilibrium_tolerance * std::max(1.0, std::abs(profile.average));
    for (std::size_t i = 0; i < state.size(); ++i) {
        if (!is_supported(state.shares[i], config.min_share_floor)) continue;
        if (std::abs(profile.per_satellite[i] - profile.average) > bound) return false;
    }
    return true;
}

bool no_profitable_entry(const UtilityProfile& profile, const PopulationState& state, const GameConfig& config) {
    const double bound = config.equilibrium_tolerance * std::max(1.0, std::abs(profile.average));
    for (std::size_t i = 0; i < state.size(); ++i) {
        if (is_supported(state.shares[i], config.min_share_floor)) continue;
        if (profile.per_satellite[i] > profile.average + bound) return false;
    }
    return true;
}

ReplicatorRun run_replicator(const PopulationState& initial, const ScenarioModel& model, const GameConfig& config,
                             bool record_trajectory) {
    config.validate();
    ReplicatorRun run;
    PopulationState state = initial;
    for (std::size_t t = 0;; ++t) {
        UtilityProfile profile = evaluate_profile(model, state, config.min_share_floor);
        if (record_trajectory) run.trajectory.push_back({state, profile});
        const bool done = equilibrium_detected(profile, state, config) && no_profitable_entry(profile, state, config);
        if (done || t >= config.max_rounds) {
            run.converged = done;
            run.rounds = t;
            run.final_state = state;
            run.final_profile = std::move(profile);
            return run;
        }
        double drift = 0.0;
        state = replicator_step(state, profile, config, &drift);
        run.max_drift = std::max(run.max_drift, std::abs(drift));
    }
}

std::vector<std::size_t> assignment_counts(const std::vector<std::size_t>& assignments, std::size_t m) {
    std::vector<std::size_t> counts(m, 0);
    for (std::size_t a : assignments) ++counts.at(a);
    return counts;
}

PopulationState state_from_assignments(const std::vector<std::size_t>& assignments, std::size_t m) {
    const auto counts = assignment_counts(assignments, m);
    PopulationState s;
    s.n_devices = assignments.size();
    s.shares.resize(m, 0.0);
    if (assignments.empty()) return s;
    for (std::size_t i = 0; i < m; ++i)
        s.shares[i] = static_cast<double>(counts[i]) / static_cast<double>(assignments.size());
    return s;
}

bool integer_equilibrium(const std::vector<std::size_t>& counts, const ScenarioModel& model, const GameConfig& config) {
    const std::size_t m = counts.size();
    std::size_t n = 0;
    for (std::size_t c : counts) n += c;
    if (n == 0) return true;
    auto profile_of = [&](const std::vector<std::size_t>& c) {
        PopulationState s;
        s.n_devices = n;
        s.shares.resize(m);
        for (std::size_t i = 0; i < m; ++i) s.shares[i] = static_cast<double>(c[i]) / static_cast<double>(n);
        return evaluate_profile(model, s, config.min_share_floor);
    };
    const UtilityProfile here = profile_of(counts);
    const double bound = config.equilibrium_tolerance * std::max(1.0, std::abs(here.average));
    for (std::size_t i = 0; i < m; ++i) {
        if (counts[i] == 0) continue;
        for (std::size_t j = 0; j < m; ++j) {
            if (j == i) continue;
            auto moved = counts;
            --moved[i];
            ++moved[j];
            if (profile_of(moved).per_satellite[j] > here.per_satellite[i] + bound) return false;
        }
    }
    return true;
}

AgentRoundResult agent_based_round(const std::vector<std::size_t>& assignments, const ScenarioModel& model,
                                   const GameConfig& config, std::mt19937_64& rng) {
    const std::size_t m = model.num_satellites;
    for (std::size_t a : assignments)
        if (a >= m) throw std::invalid_argument("agent_based_round: assignment out of range");

    AgentRoundResult out;
    out.assignments = assignments;
    const PopulationState state = state_from_assignments(assignments, m);
    out.profile = evaluate_profile(model, state, config.min_share_floor);
    const auto& pi = out.profile.per_satellite;
    const double avg = out.profile.average;

    std::vector<double> weights(m, 0.0);
    for (std::size_t j = 0; j < m; ++j) {
        const double surplus = pi[j] - avg;
        if (surplus > 0.0) weights[j] = config.migration_target == MigrationTarget::Surplus ? surplus : 1.0;
    }
    if (std::all_of(weights.begin(), weights.end(), [](double w) { return w == 0.0; })) return out;

    std::discrete_distribution<std::size_t> target(weights.begin(), weights.end());
    std::bernoulli_distribution moves(config.move_probability);
    for (auto& a : out.assignments) {
        if (!(pi[a] < avg)) continue;
        if (!moves(rng)) continue;
        a = target(rng);
        ++out.migrations;
    }
    return out;
}

AgentRun run_agent(const std::vector<std::size_t>& initial, const ScenarioModel& model, const GameConfig& config,
                   std::mt19937_64& rng, bool record_history) {
    config.validate();
    const std::size_t m = model.num_satellites;
    AgentRun run;
    run.assignments = initial;
    std::size_t still = 0;
    for (std::size_t t = 0;; ++t) {
        const PopulationState state = state_from_assignments(run.assignments, m);
        if (record_history) run.share_history.push_back(state.shares);
        if (t >= config.max_rounds || (config.agent_stall_rounds > 0 && still >= config.agent_stall_rounds)) {
            run.final_state = state;
            run.final_profile = evaluate_profile(model, state, config.min_share_floor);
            run.converged = run.converged || still >= config.agent_stall_rounds ||
                            equilibrium_detected(run.final_profile, state, config);
            run.rounds = t;
            return run;
        }
        AgentRoundResult r = agent_based_round(run.assignments, model, config, rng);
        if (equilibrium_detected(r.profile, state, config) ||
            integer_equilibrium(assignment_counts(run.assignments, m), model, config)) {
            run.final_state = state;
            run.final_profile = std::move(r.profile);
            run.converged = true;
            run.rounds = t;
            return run;
        }
        still = r.migrations == 0 ? still + 1 : 0;
        run.assignments = std::move(r.assignments);
    }
}

} // namespace sagin
