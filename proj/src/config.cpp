#include "sagin/config.hpp"

#include <cstdlib>
#include <fstream>
#include <set>
#include <sstream>

#include "json.hpp"

namespace sagin {
namespace {

using nlohmann::json;

std::string join_key(const std::string& prefix, const std::string& key) {
    return prefix.empty() ? key : prefix + "." + key;
}

/// Reads keys from one JSON object and rejects whatever was not consumed.
class Section {
public:
    Section(const json& j, std::string path) : j_(j), path_(std::move(path)) {
        if (!j_.is_object()) throw ConfigError(path_, "'" + path_ + "' must be an object");
    }

    bool has(const std::string& key) const { return j_.contains(key); }

    template <class T>
    void read(const std::string& key, T& out) {
        if (!j_.contains(key)) return;
        used_.insert(key);
        try {
            out = j_.at(key).get<T>();
        } catch (const json::exception&) {
            throw ConfigError(join_key(path_, key), "'" + join_key(path_, key) + "' has the wrong type");
        }
    }

    /// Accepts a scalar (broadcast later) or a list.
    void read_list_or_scalar(const std::string& key, std::vector<double>& out, bool& was_scalar) {
        if (!j_.contains(key)) return;
        const json& v = j_.at(key);
        if (v.is_number()) {
            used_.insert(key);
            out = {v.get<double>()};
            was_scalar = true;
            return;
        }
        read(key, out);
    }

    Section child(const std::string& key) {
        used_.insert(key);
        return Section(j_.at(key), join_key(path_, key));
    }

    void finish() const {
        for (auto it = j_.begin(); it != j_.end(); ++it)
            if (!used_.count(it.key()))
                throw ConfigError(join_key(path_, it.key()), "unknown key '" + join_key(path_, it.key()) + "'");
    }

private:
    const json& j_;
    std::string path_;
    std::set<std::string> used_;
};

void fail(const std::string& key, const std::string& what) { throw ConfigError(key, "'" + key + "' " + what); }

FadingMode parse_fading(const std::string& s) {
    if (s == "mean_only") return FadingMode::MeanOnly;
    if (s == "shadowed_rician") return FadingMode::ShadowedRician;
    fail("channel.fading_mode", "must be 'mean_only' or 'shadowed_rician'");
    return FadingMode::MeanOnly;
}

} // namespace

double ExperimentConfig::bandwidth(std::size_t sat) const {
    return bandwidth_hz_per_satellite.empty() ? channel.bandwidth_hz : bandwidth_hz_per_satellite.at(sat);
}

ExperimentConfig default_config() { return ExperimentConfig{}; }

void ExperimentConfig::validate() const {
    auto wrap = [](const char* key, auto&& check) {
        try {
            check();
        } catch (const std::invalid_argument& e) {
            throw ConfigError(key, e.what());
        }
    };
    wrap("geometry", [&] { geometry.validate(); });
    wrap("channel", [&] { channel.validate(); });
    wrap("queue", [&] { queue.validate(); });
    wrap("weights", [&] { weights.validate(); });
    wrap("game", [&] { game.validate(); });
    wrap("quadrature", [&] { quad.validate(); });

    const std::size_t m = num_satellites();
    if (queue.service_rates.size() != m) fail("queue.service_rates", "must have one entry per serving satellite");
    if (!bandwidth_hz_per_satellite.empty()) {
        if (bandwidth_hz_per_satellite.size() != m)
            fail("channel.bandwidth_hz_per_satellite", "must have one entry per serving satellite");
        for (double w : bandwidth_hz_per_satellite)
            if (!(w > 0.0)) fail("channel.bandwidth_hz_per_satellite", "entries must be > 0");
    }
    if (channel.fading_mode == FadingMode::ShadowedRician && fading_samples == 0)
        fail("channel.fading_samples", "must be >= 1");
    if (population_sizes.empty()) fail("population_sizes", "must not be empty");
    for (std::size_t n : population_sizes)
        if (n < m) fail("population_sizes", "entries must be >= the number of serving satellites");
    if (strategies.empty()) fail("strategies", "must not be empty");
    for (std::size_t i = 0; i < strategies.size(); ++i)
        for (std::size_t j = i + 1; j < strategies.size(); ++j)
            if (strategies[i] == strategies[j]) fail("strategies", "must not repeat a strategy");
    if (fixed_target >= m) fail("fixed_target", "must index a serving satellite");
    if (replications < 1) fail("replications", "must be >= 1");
    if (grid_resolution < 10) fail("optimal.grid_resolution", "must be >= 10");
    if (!(risk.demand_min_bps >= 0.0)) fail("risk.demand_min_bps", "must be >= 0");
    if (!(risk.demand_max_bps >= risk.demand_min_bps)) fail("risk.demand_max_bps", "must be >= demand_min_bps");
    if (!(risk.risk_exponent > 0.0)) fail("risk.risk_exponent", "must be > 0");
}

ExperimentConfig parse_config(const std::string& json_text) {
    json root;
    try {
        root = json::parse(json_text);
    } catch (const json::parse_error& e) {
        throw ConfigError("", std::string("config parse error: ") + e.what());
    }
    ExperimentConfig c;
    Section top(root, "");

    bool altitude_scalar = false;
    bool altitude_given = false;
    bool phases_given = false;
    if (top.has("geometry")) {
        Section s = top.child("geometry");
        s.read("earth_radius_km", c.geometry.earth_radius_km);
        altitude_given = s.has("serving_altitude_km");
        s.read_list_or_scalar("serving_altitude_km", c.geometry.serving_altitude_km, altitude_scalar);
        s.read("eavesdropper_altitude_km", c.geometry.eavesdropper_altitude_km);
        phases_given = s.has("serving_phases_deg");
        s.read("serving_phases_deg", c.geometry.serving_phases_deg);
        c.geometry.num_serving = c.geometry.serving_phases_deg.size();
        std::size_t declared = c.geometry.num_serving;
        s.read("num_serving", declared);
        if (declared != c.geometry.num_serving)
            fail("geometry.num_serving", "must equal the number of serving_phases_deg entries");
        s.read("num_eavesdroppers", c.geometry.num_eavesdroppers);
        s.finish();
    }
    const std::size_t m = c.geometry.num_serving;
    const bool default_layout = !phases_given || m == 4;
    if (altitude_scalar || (!default_layout && !altitude_given)) {
        const double h = c.geometry.serving_altitude_km.front();
        c.geometry.serving_altitude_km.assign(m, h);
    }
    if (!default_layout) {
        c.queue.service_rates.assign(m, 10.0);
        c.bandwidth_hz_per_satellite.clear();
    }

    if (top.has("channel")) {
        Section s = top.child("channel");
        s.read("bandwidth_hz", c.channel.bandwidth_hz);
        s.read("bandwidth_hz_per_satellite", c.bandwidth_hz_per_satellite);
        s.read("reference_snr", c.channel.reference_snr);
        s.read("reference_distance_km", c.channel.reference_distance_km);
        s.read("path_loss_exponent", c.channel.path_loss_exponent);
        std::string mode = c.channel.fading_mode == FadingMode::MeanOnly ? "mean_only" : "shadowed_rician";
        s.read("fading_mode", mode);
        c.channel.fading_mode = parse_fading(mode);
        if (s.has("rician")) {
            Section r = s.child("rician");
            r.read("b", c.channel.rician.b);
            r.read("m", c.channel.rician.m);
            r.read("omega", c.channel.rician.omega);
            r.finish();
        }
        s.read("rng_seed", c.channel.rng_seed);
        s.read("legit_term_includes_bandwidth", c.legit_term_includes_bandwidth);
        s.read("fading_samples", c.fading_samples);
        s.finish();
    }
    if (top.has("queue")) {
        Section s = top.child("queue");
        bool mu_scalar = false;
        s.read_list_or_scalar("service_rates", c.queue.service_rates, mu_scalar);
        if (mu_scalar) c.queue.service_rates.assign(m, c.queue.service_rates.front());
        s.read("per_device_task_rate", c.queue.per_device_task_rate);
        s.read("overload_delay_cap", c.queue.overload_delay_cap);
        s.read("utilization_guard", c.queue.utilization_guard);
        s.finish();
    }
    if (top.has("weights")) {
        Section s = top.child("weights");
        s.read("alpha", c.weights.alpha);
        s.read("beta", c.weights.beta);
        s.finish();
    }
    if (top.has("game")) {
        Section s = top.child("game");
        s.read("learning_rate", c.game.learning_rate);
        s.read("time_step", c.game.time_step);
        s.read("max_rounds", c.game.max_rounds);
        s.read("equilibrium_tolerance", c.game.equilibrium_tolerance);
        s.read("min_share_floor", c.game.min_share_floor);
        s.read("move_probability", c.game.move_probability);
        s.read("agent_stall_rounds", c.game.agent_stall_rounds);
        s.read("rng_seed", c.game.rng_seed);
        std::string target = "surplus";
        s.read("migration_target", target);
        if (target == "surplus") c.game.migration_target = MigrationTarget::Surplus;
        else if (target == "uniform") c.game.migration_target = MigrationTarget::Uniform;
        else fail("game.migration_target", "must be 'surplus' or 'uniform'");
        std::string engine = "replicator";
        s.read("engine", engine);
        if (engine == "replicator") c.engine = Engine::Replicator;
        else if (engine == "agent") c.engine = Engine::Agent;
        else fail("game.engine", "must be 'replicator' or 'agent'");
        s.finish();
    }
    if (top.has("quadrature")) {
        Section s = top.child("quadrature");
        s.read("num_intervals", c.quad.num_intervals);
        std::string rule = "simpson";
        s.read("rule", rule);
        if (rule == "simpson") c.quad.rule = QuadratureRule::Simpson;
        else if (rule == "midpoint") c.quad.rule = QuadratureRule::Midpoint;
        else fail("quadrature.rule", "must be 'simpson' or 'midpoint'");
        s.finish();
    }
    if (top.has("risk")) {
        Section s = top.child("risk");
        s.read("demand_min_bps", c.risk.demand_min_bps);
        s.read("demand_max_bps", c.risk.demand_max_bps);
        s.read("risk_exponent", c.risk.risk_exponent);
        s.finish();
    }
    if (top.has("optimal")) {
        Section s = top.child("optimal");
        s.read("grid_resolution", c.grid_resolution);
        s.finish();
    }
    top.read("population_sizes", c.population_sizes);
    if (top.has("strategies")) {
        std::vector<std::string> names;
        top.read("strategies", names);
        c.strategies.clear();
        for (const auto& n : names) {
            const auto s = parse_strategy(n);
            if (!s) fail("strategies", "contains unknown strategy '" + n + "'");
            c.strategies.push_back(*s);
        }
    }
    top.read("fixed_target", c.fixed_target);
    top.read("replications", c.replications);
    top.read("output_path", c.output_path);
    top.read("master_seed", c.master_seed);
    top.finish();

    c.validate();
    return c;
}

ExperimentConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot read config file '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_config(ss.str());
}

void apply_seed_override(ExperimentConfig& config) {
    const char* env = std::getenv("SAGIN_SIM_SEED");
    if (!env || !*env) return;
    try {
        std::size_t used = 0;
        const unsigned long long v = std::stoull(env, &used, 0);
        if (used != std::string(env).size()) throw std::invalid_argument("trailing characters");
        config.master_seed = v;
    } catch (const std::exception&) {
        throw ConfigError("SAGIN_SIM_SEED", "'SAGIN_SIM_SEED' must be an unsigned integer");
    }
}

} // namespace sagin
