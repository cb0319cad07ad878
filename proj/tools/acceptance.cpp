// sagin-acceptance: one PASS/FAIL line per acceptance criterion; exit status 1 if any fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iterator>
#include <map>
#include <random>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include <unistd.h>

#include "sagin/config.hpp"
#include "sagin/experiment.hpp"
#include "sagin/game.hpp"
#include "sagin/monte_carlo.hpp"
#include "sagin/output.hpp"
#include "sagin/scenario.hpp"
#include "sagin/secrecy.hpp"
#include "sagin/seeding.hpp"
#include "sagin/strategies.hpp"

using namespace sagin;

namespace {

using Clock = std::chrono::steady_clock;

int failures = 0;

void report(bool ok, const std::string& name, const std::string& detail) {
    std::printf("%s  %-34s %s\n", ok ? "PASS" : "FAIL", name.c_str(), detail.c_str());
    std::fflush(stdout);
    if (!ok) ++failures;
}

double seconds_since(Clock::time_point t0) {
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

std::string fmt(const char* f, double a) {
    char buf[128];
    std::snprintf(buf, sizeof buf, f, a);
    return buf;
}

unsigned worker_threads() { return std::max(1u, std::thread::hardware_concurrency()); }

void secrecy_oracle() {
    const auto t0 = Clock::now();
    ExperimentConfig cfg = default_config();
    cfg.bandwidth_hz_per_satellite.clear();
    cfg.channel.bandwidth_hz = 1e6;
    QuadratureConfig doubled = cfg.quad;
    doubled.num_intervals *= 2;

    double worst_mc = 0.0, worst_refine = 0.0;
    for (std::size_t i = 0; i < cfg.num_satellites(); ++i) {
        const double quad = total_eavesdrop_capacity(i, cfg.geometry, cfg.channel, cfg.quad);
        const double fine = total_eavesdrop_capacity(i, cfg.geometry, cfg.channel, doubled);
        const auto mc = monte_carlo_eavesdrop_capacity(i, cfg.geometry, cfg.channel, 10'000'000, cfg.master_seed,
                                                       worker_threads());
        worst_mc = std::max(worst_mc, std::abs(mc.value - quad) / quad);
        worst_refine = std::max(worst_refine, std::abs(fine - quad) / quad);
    }
    const double elapsed = seconds_since(t0);
    report(worst_mc < 0.03 && worst_refine < 1e-3 && elapsed < 60.0, "secrecy integral oracle",
           fmt("max MC rel err %.5f (<0.03)", worst_mc) + fmt(", refinement change %.2e (<1e-3)", worst_refine) +
               fmt(", %.1f s (<60)", elapsed));
}

void simplex_conservation() {
    const ExperimentConfig cfg = default_config();
    const Scenario sc = build_scenario(cfg);
    const ScenarioModel model = sc.model();
    PopulationState s{{0.7, 0.1, 0.1, 0.1}, 1000, 0};
    double worst_sum = 0.0, worst_drift = 0.0, min_share = 1.0;
    for (int t = 0; t < 10'000; ++t) {
        const UtilityProfile p = evaluate_profile(model, s, cfg.game.min_share_floor);
        double drift = 0.0;
        s = replicator_step(s, p, cfg.game, &drift);
        double sum = 0.0;
        for (double x : s.shares) {
            sum += x;
            min_share = std::min(min_share, x);
        }
        worst_sum = std::max(worst_sum, std::abs(sum - 1.0));
        worst_drift = std::max(worst_drift, std::abs(drift));
    }
    report(min_share >= 0.0 && worst_sum <= 1e-12 && worst_drift < 1e-8, "simplex conservation",
           fmt("max |sum-1| %.2e (<=1e-12)", worst_sum) + fmt(", max drift %.2e (<1e-8)", worst_drift) +
               fmt(", min share %.3g", min_share));
}

double equilibrium_gap(const ReplicatorRun& run, double floor) {
    double gap = 0.0;
    for (std::size_t i = 0; i < run.final_state.size(); ++i)
        if (is_supported(run.final_state.shares[i], floor))
            gap = std::max(gap, std::abs(run.final_profile.per_satellite[i] - run.final_profile.average));
    return gap / std::max(1.0, std::abs(run.final_profile.average));
}

void equilibrium_reproduction() {
    // (a) identical satellites: uniform shares from many interior starts.
    ExperimentConfig sym = default_config();
    sym.queue.service_rates.assign(4, 10.0);
    sym.bandwidth_hz_per_satellite.clear();
    const ScenarioModel sym_model = build_scenario(sym).model();

    std::mt19937_64 rng(derive_seed(sym.master_seed, "interior-starts"));
    std::gamma_distribution<double> g(1.0, 1.0);
    std::vector<std::vector<double>> starts{{0.97, 0.01, 0.01, 0.01}, {0.01, 0.01, 0.01, 0.97},
                                            {0.49, 0.49, 0.01, 0.01}};
    for (int k = 0; k < 47; ++k) {
        std::vector<double> x(4);
        double total = 0.0;
        for (double& v : x) total += (v = g(rng) + 1e-3);
        for (double& v : x) v /= total;
        starts.push_back(x);
    }
    double worst_a = 0.0, worst_c = 0.0;
    std::size_t converged_a = 0, converged_b = 0;
    for (const auto& x0 : starts) {
        const auto run = run_replicator({x0, 1000, 0}, sym_model, sym.game);
        converged_a += run.converged;
        for (double x : run.final_state.shares) worst_a = std::max(worst_a, std::abs(x - 0.25));
        worst_c = std::max(worst_c, equilibrium_gap(run, sym.game.min_share_floor));
    }

    // (b) two satellites, delay only: equal-delay split mu1 - L x = mu2 - L (1 - x).
    ExperimentConfig two = with_satellite_count(default_config(), 2);
    two.weights.alpha = 0.0;
    two.queue.service_rates = {20.0, 10.0};
    two.queue.per_device_task_rate = 0.015;
    const ScenarioModel two_model = build_scenario(two).model();
    const double load = 0.015 * 1000.0;
    const double split = (20.0 - 10.0 + load) / (2.0 * load);
    double worst_b = 0.0;
    const std::vector<double> two_starts{0.05, 0.3, 0.5, 0.7, 0.95};
    for (double x0 : two_starts) {
        const auto run = run_replicator({{x0, 1.0 - x0}, 1000, 0}, two_model, two.game);
        converged_b += run.converged;
        worst_b = std::max(worst_b, std::abs(run.final_state.shares[0] - split));
        worst_c = std::max(worst_c, equilibrium_gap(run, two.game.min_share_floor));
    }

    report(worst_a <= 1e-3, "equilibrium (a) symmetric uniform",
           std::to_string(starts.size()) + " starts, " + std::to_string(converged_a) + " stopped by tolerance" +
               fmt(", max |x-0.25| %.2e (<=1e-3)", worst_a));
    report(worst_b <= 1e-3, "equilibrium (b) delay-only split",
           std::to_string(two_starts.size()) + " starts, " + std::to_string(converged_b) + " stopped by tolerance" +
               fmt(", target %.6f", split) + fmt(", max error %.2e (<=1e-3)", worst_b));
    report(worst_c <= 1e-3, "equilibrium (c) utility gap",
           fmt("max |pi_i - pibar| / max(1,|pibar|) %.2e (<=1e-3)", worst_c));
}

std::vector<double> mean_shares(const std::vector<ExperimentRecord>& records) {
    std::vector<double> mean(records.front().shares.size(), 0.0);
    for (const auto& r : records)
        for (std::size_t i = 0; i < mean.size(); ++i) mean[i] += r.shares[i] / static_cast<double>(records.size());
    return mean;
}

void agent_mean_field() {
    ExperimentConfig cfg = default_config();
    cfg.population_sizes = {1000};
    cfg.strategies = {Strategy::Evolutionary};
    const auto t0 = Clock::now();
    cfg.engine = Engine::Agent;
    const auto agent = run_experiment(cfg);
    const double elapsed = seconds_since(t0);
    cfg.engine = Engine::Replicator;
    const auto ode = run_experiment(cfg);

    const auto xa = mean_shares(agent), xo = mean_shares(ode);
    double worst = 0.0;
    for (std::size_t i = 0; i < xa.size(); ++i) worst = std::max(worst, std::abs(xa[i] - xo[i]));
    std::size_t converged = 0;
    for (const auto& r : agent) converged += r.converged;
    report(worst <= 0.05 && elapsed < 120.0, "agent vs mean-field",
           "agent " + format_shares(xa) + " ode " + format_shares(xo) + fmt(", max diff %.4f (<=0.05)", worst) +
               ", " + std::to_string(converged) + "/" + std::to_string(agent.size()) + " converged" +
               fmt(", %.1f s (<120)", elapsed));
}

struct Averages {
    double utility = 0.0, normalized = 0.0, risk = 0.0, delay = 0.0;
};

using Table = std::map<std::string, std::map<std::size_t, Averages>>;

Table average(const std::vector<ExperimentRecord>& records) {
    Table t;
    std::map<std::pair<std::string, std::size_t>, std::size_t> count;
    for (const auto& r : records) {
        auto& a = t[r.strategy][r.n_devices];
        a.utility += r.avg_utility;
        a.normalized += r.normalized_utility;
        a.risk += r.mean_risk_probability;
        a.delay += r.mean_queuing_delay;
        ++count[{r.strategy, r.n_devices}];
    }
    for (auto& [s, by_n] : t)
        for (auto& [n, a] : by_n) {
            const double c = static_cast<double>(count[{s, n}]);
            a.utility /= c;
            a.normalized /= c;
            a.risk /= c;
            a.delay /= c;
        }
    return t;
}

// Number of adjacent N pairs where the metric moves the wrong way as N decreases.
template <class Get>
int inversions(const std::map<std::size_t, Averages>& by_n, Get get, bool should_increase) {
    int bad = 0;
    for (auto it = std::next(by_n.begin()); it != by_n.end(); ++it) {
        const double smaller_n = get(std::prev(it)->second), larger_n = get(it->second);
        if (should_increase ? smaller_n < larger_n : smaller_n > larger_n) ++bad;
    }
    return bad;
}

void figure_trends(const std::vector<ExperimentRecord>& records) {
    const Table t = average(records);
    const auto& evo = t.at("evolutionary");
    const std::vector<std::string> baselines{"random", "nearest", "fixed"};

    bool beats = true;
    double min_norm = 1.0;
    for (const auto& [n, a] : evo) {
        min_norm = std::min(min_norm, a.normalized);
        for (const auto& b : baselines) beats = beats && a.normalized >= t.at(b).at(n).normalized;
    }
    std::string inv;
    bool monotone = true;
    for (const auto& [s, by_n] : t) {
        const int bad = inversions(by_n, [](const Averages& a) { return a.utility; }, true);
        monotone = monotone && bad <= (s == "random" ? 1 : 0);
        inv += " " + s + "=" + std::to_string(bad);
    }
    report(beats && min_norm >= 0.95 && monotone, "utility trend",
           std::string("evolutionary >= baselines at every N: ") + (beats ? "yes" : "no") +
               fmt(", min normalized %.4f (>=0.95), inversions", min_norm) + inv);

    const std::size_t n_max = evo.rbegin()->first;
    const double r_evo = evo.at(n_max).risk;
    bool lower = true;
    std::string risks = fmt("evolutionary %.4f", r_evo);
    for (const auto& b : {"nearest", "fixed", "random"}) {
        const double r = t.at(b).at(n_max).risk;
        lower = lower && r_evo < r;
        risks += std::string(", ") + b + fmt(" %.4f", r);
    }
    report(lower, "risk trend at N=" + std::to_string(n_max), risks);

    double worst_ratio = 0.0;
    for (const auto& [n, a] : evo) worst_ratio = std::max(worst_ratio, a.delay / t.at("optimal").at(n).delay);
    const double d_evo = evo.at(n_max).delay;
    const bool below = d_evo < t.at("fixed").at(n_max).delay && d_evo < t.at("nearest").at(n_max).delay;
    std::string dinv;
    bool dmono = true;
    for (const auto& [s, by_n] : t) {
        if (s == "random") continue;
        const int bad = inversions(by_n, [](const Averages& a) { return a.delay; }, false);
        dmono = dmono && bad == 0;
        dinv += " " + s + "=" + std::to_string(bad);
    }
    report(worst_ratio <= 1.10 && below && dmono, "delay trend",
           fmt("max evolutionary/optimal %.4f (<=1.10)", worst_ratio) + fmt(", at N=max evolutionary %.4f s", d_evo) +
               fmt(" nearest %.4f", t.at("nearest").at(n_max).delay) +
               fmt(" fixed %.4f, inversions", t.at("fixed").at(n_max).delay) + dinv);
}

void tiny_oracle_check() {
    struct Layout {
        std::size_t m;
        std::vector<double> mu, w;
    };
    const std::vector<Layout> layouts{{2, {}, {}}, {3, {}, {}}, {2, {11.0, 9.0}, {1.4e6, 0.6e6}},
                                      {3, {11.0, 10.0, 9.0}, {1.4e6, 1.0e6, 0.6e6}}};
    std::size_t cases = 0;
    double worst_excess = -1e300, worst_agent = -1e300;
    bool ok = true;
    for (const auto& l : layouts) {
        ExperimentConfig cfg = with_satellite_count(default_config(), l.m);
        if (!l.mu.empty()) {
            cfg.queue.service_rates = l.mu;
            cfg.bandwidth_hz_per_satellite = l.w;
        }
        cfg.validate();
        for (std::size_t n = l.m; n <= 12; ++n) {
            const auto r = tiny_oracle(cfg, n);
            const double excess = (r.integer_optimum - r.relaxed_optimum) - r.granularity_bound;
            const double agent = r.agent_utility - r.integer_optimum;
            worst_excess = std::max(worst_excess, excess);
            worst_agent = std::max(worst_agent, agent);
            ok = ok && excess < 1e-9 && agent <= 1e-9;
            ++cases;
        }
    }
    report(ok, "tiny-N exhaustive oracle",
           std::to_string(cases) + " cases" + fmt(", max (integer - relaxed - bound) %.3e (<1e-9)", worst_excess) +
               fmt(", max (evolutionary - integer) %.3e (<=1e-9)", worst_agent));
}

std::uint64_t file_hash(const std::filesystem::path& p) {
    std::ifstream in(p, std::ios::binary);
    const std::string bytes((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    return fnv1a64(bytes);
}

void determinism(const std::vector<ExperimentRecord>& first) {
    const ExperimentConfig cfg = default_config();
    const auto dir = std::filesystem::temp_directory_path() / ("sagin-acceptance-" + std::to_string(::getpid()));
    std::filesystem::create_directories(dir);
    emit(first, (dir / "a.csv").string(), OutputFormat::Csv);
    emit(run_experiment(cfg), (dir / "b.csv").string(), OutputFormat::Csv);
    emit(run_experiment(cfg, {4, false}).records, (dir / "c.csv").string(), OutputFormat::Csv);
    const auto ha = file_hash(dir / "a.csv"), hb = file_hash(dir / "b.csv"), hc = file_hash(dir / "c.csv");
    char buf[160];
    std::snprintf(buf, sizeof buf, "serial %016llx, serial %016llx, 4 workers %016llx",
                  static_cast<unsigned long long>(ha), static_cast<unsigned long long>(hb),
                  static_cast<unsigned long long>(hc));
    report(ha == hb && hb == hc && std::filesystem::file_size(dir / "a.csv") > 0, "determinism", buf);
    std::filesystem::remove_all(dir);
}

} // namespace

int main() {
    secrecy_oracle();
    simplex_conservation();
    equilibrium_reproduction();
    agent_mean_field();
    const auto sweep = run_experiment(default_config());
    figure_trends(sweep);
    tiny_oracle_check();
    determinism(sweep);
    std::printf("%d failed\n", failures);
    return failures == 0 ? 0 : 1;
}
