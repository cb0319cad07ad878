#include "sagin/experiment.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <mutex>
#include <thread>
#include <tuple>

#include "sagin/seeding.hpp"
#include "sagin/strategies.hpp"

namespace sagin {

std::uint64_t scenario_seed(std::uint64_t master_seed, std::size_t n_devices, std::size_t replication) {
    return derive_seed(derive_seed(derive_seed(master_seed, "scenario"), n_devices), replication);
}

std::uint64_t strategy_seed(std::uint64_t master_seed, Strategy strategy, std::size_t n_devices,
                            std::size_t replication) {
    return derive_seed(scenario_seed(master_seed, n_devices, replication), strategy_name(strategy));
}

std::vector<double> draw_demands(std::size_t n_devices, const RiskDistribution& risk, std::mt19937_64& rng) {
    std::uniform_real_distribution<double> u(risk.demand_min_bps, risk.demand_max_bps);
    std::vector<double> d(n_devices);
    for (double& v : d) v = risk.demand_max_bps > risk.demand_min_bps ? u(rng) : risk.demand_min_bps;
    return d;
}

double risk_metric(const std::vector<std::size_t>& assignments, const std::vector<SecrecyReport>& reports,
                   const std::vector<double>& demands, double risk_exponent) {
    if (assignments.empty()) return 0.0;
    const auto counts = assignment_counts(assignments, reports.size());
    double total = 0.0;
    for (std::size_t n = 0; n < assignments.size(); ++n) {
        const std::size_t i = assignments[n];
        const double cap = reports[i].secrecy_capacity / static_cast<double>(counts[i]);
        total += risk_probability(cap, {demands.at(n), risk_exponent});
    }
    return total / static_cast<double>(assignments.size());
}

double risk_metric(const PopulationState& state, const std::vector<SecrecyReport>& reports,
                   const std::vector<double>& demands, double risk_exponent, double min_share_floor) {
    if (demands.empty()) return 0.0;
    const std::size_t m = state.size();
    std::vector<double> cap(m);
    for (std::size_t i = 0; i < m; ++i)
        cap[i] = reports[i].secrecy_capacity /
                 (std::max(state.shares[i], min_share_floor) * static_cast<double>(state.n_devices));
    double total = 0.0;
    for (double sd : demands)
        for (std::size_t i = 0; i < m; ++i) total += state.shares[i] * risk_probability(cap[i], {sd, risk_exponent});
    return total / static_cast<double>(demands.size());
}

double risk_metric(const std::vector<std::size_t>& assignments, const std::vector<SecrecyReport>& reports,
                   const RiskDistribution& risk, std::mt19937_64& rng) {
    const auto demands = draw_demands(assignments.size(), risk, rng);
    return risk_metric(assignments, reports, demands, risk.risk_exponent);
}

double mean_delay(const Scenario& scenario, const PopulationState& state) {
    const auto d = scenario.delays(state);
    double total = 0.0;
    for (std::size_t i = 0; i < d.size(); ++i) total += state.shares[i] * d[i];
    return total;
}

double normalize_utility(double value, double optimum) {
    const double scale = std::abs(optimum);
    if (scale == 0.0) return value >= 0.0 ? 1.0 : 0.0;
    return std::max(0.0, 1.0 - (optimum - value) / scale);
}

void sort_records(std::vector<ExperimentRecord>& records) {
    std::stable_sort(records.begin(), records.end(), [](const ExperimentRecord& a, const ExperimentRecord& b) {
        return std::tie(a.strategy, a.n_devices, a.replication) < std::tie(b.strategy, b.n_devices, b.replication);
    });
}

namespace {

struct Cell {
    Strategy strategy;
    std::size_t n_devices;
    std::size_t replication;
    std::size_t n_index;
};

struct CellResult {
    ExperimentRecord record;
    std::vector<TraceRow> trace;
};

template <class F>
void parallel_for(std::size_t count, unsigned workers, F&& body) {
    std::atomic<std::size_t> next{0};
    std::exception_ptr error;
    std::mutex error_mutex;
    auto run = [&] {
        for (std::size_t i = next++; i < count; i = next++) {
            try {
                body(i);
            } catch (...) {
                std::lock_guard lock(error_mutex);
                if (!error) error = std::current_exception();
            }
        }
    };
    const unsigned n = std::max(1u, std::min<unsigned>(workers, static_cast<unsigned>(std::max<std::size_t>(count, 1))));
    std::vector<std::thread> pool;
    for (unsigned t = 1; t < n; ++t) pool.emplace_back(run);
    run();
    for (auto& th : pool) th.join();
    if (error) std::rethrow_exception(error);
}

CellResult run_cell(const ExperimentConfig& cfg, const Scenario& scenario, const ScenarioModel& model,
                    const Cell& cell, const OptimalSearch& optimum, bool trace) {
    const std::size_t m = cfg.num_satellites();
    const std::size_t n = cell.n_devices;
    const double floor = cfg.game.min_share_floor;
    const std::uint64_t seed = scenario_seed(cfg.master_seed, n, cell.replication);

    std::mt19937_64 place_rng(derive_seed(seed, "placement"));
    const auto devices = place_devices(n, cfg.geometry, place_rng);
    std::mt19937_64 demand_rng(derive_seed(seed, "demand"));
    const auto demands = draw_demands(n, cfg.risk, demand_rng);
    std::mt19937_64 rng(strategy_seed(cfg.master_seed, cell.strategy, n, cell.replication));

    CellResult out;
    ExperimentRecord& r = out.record;
    r.strategy = std::string(strategy_name(cell.strategy));
    r.n_devices = n;
    r.replication = cell.replication;

    PopulationState state;
    auto score_assignments = [&](const std::vector<std::size_t>& a) {
        state = state_from_assignments(a, m);
        r.mean_risk_probability = risk_metric(a, scenario.reports, demands, cfg.risk.risk_exponent);
    };
    auto add_trace = [&](std::size_t round, const PopulationState& s, double avg) {
        out.trace.push_back({r.strategy, n, cell.replication, round, avg, s.shares});
    };

    switch (cell.strategy) {
    case Strategy::Optimal:
        state = optimum.state;
        r.mean_risk_probability = risk_metric(state, scenario.reports, demands, cfg.risk.risk_exponent, floor);
        break;
    case Strategy::Evolutionary: {
        const auto start = assign({Strategy::Nearest}, devices, scenario.satellites, rng);
        if (cfg.engine == Engine::Replicator) {
            const ReplicatorRun run = run_replicator(state_from_assignments(start, m), model, cfg.game, trace);
            state = run.final_state;
            r.round = run.rounds;
            r.converged = run.converged;
            r.mean_risk_probability = risk_metric(state, scenario.reports, demands, cfg.risk.risk_exponent, floor);
            for (const auto& p : run.trajectory) add_trace(p.state.round, p.state, p.profile.average);
        } else {
            const AgentRun run = run_agent(start, model, cfg.game, rng, trace);
            score_assignments(run.assignments);
            r.round = run.rounds;
            r.converged = run.converged;
            for (std::size_t t = 0; t < run.share_history.size(); ++t) {
                const PopulationState s{run.share_history[t], n, t};
                add_trace(t, s, evaluate_profile(model, s, floor).average);
            }
        }
        break;
    }
    case Strategy::Random:
    case Strategy::Nearest:
    case Strategy::Fixed:
        score_assignments(assign({cell.strategy, cfg.fixed_target}, devices, scenario.satellites, rng));
        break;
    }
    state.n_devices = n;
    r.shares = state.shares;
    r.avg_utility = evaluate_profile(model, state, floor).average;
    r.normalized_utility = normalize_utility(r.avg_utility, optimum.value);
    r.mean_queuing_delay = mean_delay(scenario, state);
    return out;
}

} // namespace

ExperimentOutput run_experiment(const ExperimentConfig& config, const RunOptions& options) {
    config.validate();
    const Scenario scenario = build_scenario(config);
    const ScenarioModel model = scenario.model();

    std::vector<OptimalSearch> optima(config.population_sizes.size());
    parallel_for(optima.size(), options.parallel, [&](std::size_t k) {
        optima[k] = optimal_search(model, config.population_sizes[k], config.game.min_share_floor,
                                   config.grid_resolution);
    });

    std::vector<Cell> cells;
    for (Strategy s : config.strategies)
        for (std::size_t k = 0; k < config.population_sizes.size(); ++k)
            for (std::size_t rep = 0; rep < config.replications; ++rep)
                cells.push_back({s, config.population_sizes[k], rep, k});

    std::vector<CellResult> results(cells.size());
    parallel_for(cells.size(), options.parallel, [&](std::size_t c) {
        results[c] = run_cell(config, scenario, model, cells[c], optima[cells[c].n_index], options.trace);
    });

    ExperimentOutput out;
    for (auto& res : results) {
        out.records.push_back(std::move(res.record));
        for (auto& t : res.trace) out.trace.push_back(std::move(t));
    }
    sort_records(out.records);
    std::stable_sort(out.trace.begin(), out.trace.end(), [](const TraceRow& a, const TraceRow& b) {
        return std::tie(a.strategy, a.n_devices, a.replication, a.round) <
               std::tie(b.strategy, b.n_devices, b.replication, b.round);
    });
    return out;
}

std::vector<ExperimentRecord> run_experiment(const ExperimentConfig& config) {
    return run_experiment(config, RunOptions{}).records;
}

} // namespace sagin

namespace sagin {

ExperimentConfig with_satellite_count(const ExperimentConfig& base, std::size_t m) {
    ExperimentConfig c = base;
    c.geometry.num_serving = m;
    c.geometry.serving_phases_deg.resize(m);
    for (std::size_t i = 0; i < m; ++i) c.geometry.serving_phases_deg[i] = 360.0 * static_cast<double>(i) / static_cast<double>(m);
    c.geometry.serving_altitude_km.assign(m, base.geometry.serving_altitude_km.front());
    const auto& mu = base.queue.service_rates;
    c.queue.service_rates.resize(m);
    for (std::size_t i = 0; i < m; ++i) c.queue.service_rates[i] = i < mu.size() ? mu[i] : mu.back();
    if (!base.bandwidth_hz_per_satellite.empty()) {
        c.bandwidth_hz_per_satellite.resize(m);
        for (std::size_t i = 0; i < m; ++i)
            c.bandwidth_hz_per_satellite[i] = i < base.bandwidth_hz_per_satellite.size()
                                                  ? base.bandwidth_hz_per_satellite[i]
                                                  : base.bandwidth_hz_per_satellite.back();
    }
    c.fixed_target = std::min(c.fixed_target, m - 1);
    for (auto& n : c.population_sizes) n = std::max(n, m);
    return c;
}

TinyOracleReport tiny_oracle(const ExperimentConfig& config, std::size_t n_devices) {
    const Scenario scenario = build_scenario(config);
    const ScenarioModel model = scenario.model();
    const double floor = config.game.min_share_floor;
    const std::size_t m = config.num_satellites();

    TinyOracleReport rep;
    rep.n_devices = n_devices;
    rep.num_satellites = m;
    const IntegerOptimum best = exhaustive_integer_optimum(model, n_devices, floor);
    rep.integer_counts = best.counts;
    rep.integer_optimum = best.value;

    const OptimalSearch relaxed = optimal_search(model, n_devices, floor, config.grid_resolution);
    rep.relaxed_shares = relaxed.state.shares;
    rep.relaxed_optimum = relaxed.value;
    const UtilityProfile prof = evaluate_profile(model, relaxed.state, floor);
    double lo = 0.0, hi = 0.0;
    bool any = false;
    for (std::size_t i = 0; i < m; ++i) {
        if (!is_supported(relaxed.state.shares[i], floor)) continue;
        const double v = prof.per_satellite[i];
        lo = any ? std::min(lo, v) : v;
        hi = any ? std::max(hi, v) : v;
        any = true;
    }
    rep.utility_spread = hi - lo;
    rep.granularity_bound = rep.utility_spread / static_cast<double>(n_devices);

    std::mt19937_64 place_rng(derive_seed(scenario_seed(config.master_seed, n_devices, 0), "placement"));
    const auto devices = place_devices(n_devices, config.geometry, place_rng);
    std::mt19937_64 rng(strategy_seed(config.master_seed, Strategy::Evolutionary, n_devices, 0));
    const auto start = assign({Strategy::Nearest}, devices, scenario.satellites, rng);
    const AgentRun agent = run_agent(start, model, config.game, rng);
    rep.agent_counts = assignment_counts(agent.assignments, m);
    rep.agent_utility = evaluate_profile(model, agent.final_state, floor).average;

    const ReplicatorRun ode = run_replicator(state_from_assignments(start, m), model, config.game);
    rep.replicator_utility = ode.final_profile.average;
    return rep;
}

} // namespace sagin
