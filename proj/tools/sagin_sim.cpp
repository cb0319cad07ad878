// sagin-sim: experiment sweeps, single runs and the numerical oracles.

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <iostream>
#include <string>
#include <thread>

#include "CLI11.hpp"

#include "sagin/config.hpp"
#include "sagin/experiment.hpp"
#include "sagin/monte_carlo.hpp"
#include "sagin/output.hpp"
#include "sagin/scenario.hpp"
#include "sagin/secrecy.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitConfig = 1;
constexpr int kExitIo = 2;
constexpr int kExitMismatch = 3;

sagin::ExperimentConfig config_from(const std::string& path) {
    sagin::ExperimentConfig cfg = path.empty() ? sagin::default_config() : sagin::load_config(path);
    sagin::apply_seed_override(cfg);
    return cfg;
}

int cmd_run(const std::string& config_path, std::string out_path, const std::string& format, bool trace,
            unsigned parallel) {
    const auto cfg = config_from(config_path);
    if (out_path.empty()) out_path = cfg.output_path;
    sagin::RunOptions opts;
    opts.parallel = parallel == 0 ? std::max(1u, std::thread::hardware_concurrency()) : parallel;
    opts.trace = trace;
    const auto result = sagin::run_experiment(cfg, opts);
    sagin::emit(result.records, out_path, format == "jsonl" ? sagin::OutputFormat::JsonLines : sagin::OutputFormat::Csv);
    if (trace) sagin::emit_trace(result.trace, out_path + ".trace.csv");
    std::cout << "wrote " << result.records.size() << " records to " << out_path << '\n';
    return kExitOk;
}

int cmd_single(const std::string& config_path, const std::string& strategy, std::size_t devices,
               std::size_t replication) {
    auto cfg = config_from(config_path);
    const auto s = sagin::parse_strategy(strategy);
    if (!s) throw sagin::ConfigError("strategy", "unknown strategy '" + strategy + "'");
    cfg.strategies = {*s};
    cfg.population_sizes = {devices};
    cfg.replications = replication + 1;
    cfg.validate();
    for (const auto& r : sagin::run_experiment(cfg)) {
        if (r.replication != replication) continue;
        std::cout << "strategy              " << r.strategy << '\n'
                  << "n_devices             " << r.n_devices << '\n'
                  << "replication           " << r.replication << '\n'
                  << "rounds                " << r.round << (r.converged ? " (converged)" : " (not converged)") << '\n'
                  << "avg_utility           " << sagin::format_double(r.avg_utility) << '\n'
                  << "normalized_utility    " << sagin::format_double(r.normalized_utility) << '\n'
                  << "mean_risk_probability " << sagin::format_double(r.mean_risk_probability) << '\n'
                  << "mean_queuing_delay_s  " << sagin::format_double(r.mean_queuing_delay) << '\n'
                  << "shares                " << sagin::format_shares(r.shares) << '\n';
    }
    return kExitOk;
}

int cmd_validate(const std::string& config_path, std::size_t samples, unsigned threads) {
    const auto cfg = config_from(config_path);
    double worst = 0.0;
    std::printf("%-4s %16s %16s %12s %10s\n", "sat", "quadrature_bps", "monte_carlo_bps", "stderr_bps", "rel_err");
    for (std::size_t i = 0; i < cfg.num_satellites(); ++i) {
        sagin::ChannelConfig ch = cfg.channel;
        ch.bandwidth_hz = cfg.bandwidth(i);
        const double quad = sagin::total_eavesdrop_capacity(i, cfg.geometry, ch, cfg.quad);
        const auto mc = sagin::monte_carlo_eavesdrop_capacity(i, cfg.geometry, ch, samples,
                                                             cfg.master_seed, threads == 0 ? 1 : threads);
        const double rel = quad > 0.0 ? std::abs(mc.value - quad) / quad : std::abs(mc.value);
        worst = std::max(worst, rel);
        std::printf("%-4zu %16.6f %16.6f %12.6f %10.6f\n", i, quad, mc.value, mc.standard_error, rel);
    }
    const bool ok = worst <= 0.03;
    std::printf("%s max relative error %.6f (limit 0.03)\n", ok ? "OK" : "MISMATCH", worst);
    return ok ? kExitOk : kExitMismatch;
}

int cmd_oracle(const std::string& config_path, std::size_t devices, std::size_t sats) {
    if (devices > 12 || sats > 3 || sats == 0 || devices < sats)
        throw sagin::ConfigError("devices", "oracle requires 1 <= sats <= 3 and sats <= devices <= 12");
    const auto cfg = sagin::with_satellite_count(config_from(config_path), sats);
    cfg.validate();
    const auto r = sagin::tiny_oracle(cfg, devices);
    std::string counts;
    for (std::size_t c : r.integer_counts) counts += (counts.empty() ? "" : ";") + std::to_string(c);
    std::string agent;
    for (std::size_t c : r.agent_counts) agent += (agent.empty() ? "" : ";") + std::to_string(c);
    std::cout << "n_devices           " << r.n_devices << '\n'
              << "num_satellites      " << r.num_satellites << '\n'
              << "integer_optimum     " << sagin::format_double(r.integer_optimum) << " counts " << counts << '\n'
              << "relaxed_optimum     " << sagin::format_double(r.relaxed_optimum) << " shares "
              << sagin::format_shares(r.relaxed_shares) << '\n'
              << "granularity_bound   " << sagin::format_double(r.granularity_bound) << '\n'
              << "agent_utility       " << sagin::format_double(r.agent_utility) << " counts " << agent << '\n'
              << "replicator_utility  " << sagin::format_double(r.replicator_utility) << '\n';
    const bool ok = r.integer_optimum - r.relaxed_optimum < r.granularity_bound + 1e-9 &&
                    r.agent_utility <= r.integer_optimum + 1e-9;
    std::cout << (ok ? "OK" : "VIOLATION") << '\n';
    return ok ? kExitOk : kExitMismatch;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Secure serving-satellite selection simulator"};
    app.require_subcommand(1);

    std::string config_path, out_path, format = "csv", strategy = "evolutionary";
    bool trace = false;
    unsigned parallel = 1, threads = 1;
    std::size_t samples = 10000000, devices = 0, sats = 0, replication = 0;

    auto* run = app.add_subcommand("run", "Full sweep over strategies, population sizes and replications");
    run->add_option("--config", config_path, "JSON config file")->required();
    run->add_option("--out", out_path, "Output file (defaults to output_path in the config)");
    run->add_option("--format", format, "csv or jsonl")->check(CLI::IsMember({"csv", "jsonl"}));
    run->add_flag("--trace", trace, "Also write per-round evolutionary trajectories to <out>.trace.csv");
    run->add_option("--parallel", parallel, "Worker threads (0 = hardware concurrency)");

    auto* single = app.add_subcommand("single", "One strategy at one population size");
    single->add_option("--config", config_path, "JSON config file");
    single->add_option("--strategy", strategy, "optimal, evolutionary, random, nearest or fixed");
    single->add_option("--devices", devices, "Number of devices")->required();
    single->add_option("--replication", replication, "Replication index");

    auto* validate = app.add_subcommand("validate", "Quadrature versus Monte Carlo for the eavesdropping integral");
    validate->add_option("--config", config_path, "JSON config file");
    validate->add_option("--samples", samples, "Monte Carlo samples per satellite");
    validate->add_option("--threads", threads, "Worker threads");

    auto* oracle = app.add_subcommand("oracle", "Exhaustive integer optimum for tiny populations");
    oracle->add_option("--config", config_path, "JSON config file");
    oracle->add_option("--devices", devices, "Number of devices (<= 12)")->required();
    oracle->add_option("--sats", sats, "Number of satellites (<= 3)")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitConfig;
    }

    try {
        if (*run) return cmd_run(config_path, out_path, format, trace, parallel);
        if (*single) return cmd_single(config_path, strategy, devices, replication);
        if (*validate) return cmd_validate(config_path, samples, threads);
        if (*oracle) return cmd_oracle(config_path, devices, sats);
    } catch (const sagin::ConfigError& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return kExitConfig;
    } catch (const sagin::IoError& e) {
        std::cerr << "i/o error: " << e.what() << '\n';
        return kExitIo;
    } catch (const std::invalid_argument& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return kExitConfig;
    }
    return kExitOk;
}
