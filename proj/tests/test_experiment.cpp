#include "doctest.h"

#include <cmath>
#include <map>
#include <sstream>

#include "sagin/experiment.hpp"
#include "sagin/output.hpp"
#include "sagin/seeding.hpp"

using namespace sagin;

namespace {

ExperimentConfig small_config() {
    auto c = default_config();
    c.population_sizes = {200, 1000};
    c.replications = 2;
    c.grid_resolution = 40;
    return c;
}

ExperimentConfig symmetric_config() {
    auto c = small_config();
    c.queue.service_rates.assign(4, 10.0);
    c.bandwidth_hz_per_satellite.clear();
    return c;
}

std::string csv_of(const std::vector<ExperimentRecord>& r) {
    std::ostringstream out;
    write_csv(r, out);
    return out.str();
}

} // namespace

TEST_CASE("optimal-only sweep normalizes to one") {
    auto c = small_config();
    c.strategies = {Strategy::Optimal};
    const auto records = run_experiment(c);
    CHECK(records.size() == 4);
    for (const auto& r : records) CHECK(r.normalized_utility == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("symmetric scenario: evolutionary tracks the optimum") {
    auto c = symmetric_config();
    c.strategies = {Strategy::Evolutionary, Strategy::Optimal};
    for (const auto& r : run_experiment(c)) {
        CHECK(r.normalized_utility >= 0.98);
        CHECK(r.normalized_utility <= 1.0 + 1e-6);
        CHECK(r.converged);
    }
}

TEST_CASE("overloaded fixed satellite reports the delay cap") {
    auto c = small_config();
    c.strategies = {Strategy::Fixed};
    c.population_sizes = {1000};
    c.queue.service_rates = {5.0, 10.5, 9.5, 9.0};
    for (const auto& r : run_experiment(c)) {
        CHECK(r.mean_queuing_delay == c.queue.overload_delay_cap);
        CHECK(r.shares == std::vector<double>{1.0, 0.0, 0.0, 0.0});
    }
}

TEST_CASE("risk metric") {
    std::vector<SecrecyReport> reports(2);
    reports[0].secrecy_capacity = 4000.0;
    reports[1].secrecy_capacity = 8000.0;
    const std::vector<std::size_t> a{0, 0, 1, 1};
    CHECK(risk_metric(a, reports, std::vector<double>(4, 0.0), 1e-3) == 0.0);
    const double k = 1e-3, gap = std::log(2.0) / k;
    // Per-device capacities are 2000 and 4000 bit/s.
    CHECK(risk_metric(a, reports, {2000.0 + gap, 2000.0 + gap, 4000.0 + gap, 4000.0 + gap}, k) ==
          doctest::Approx(0.5).epsilon(1e-12));
    const PopulationState s{{0.5, 0.5}, 4, 0};
    CHECK(risk_metric(s, reports, std::vector<double>(4, 0.0), k, 1e-6) == 0.0);
    CHECK(risk_metric(s, {reports[0], reports[0]}, std::vector<double>(4, 2000.0 + gap), k, 1e-6) ==
          doctest::Approx(0.5).epsilon(1e-12));

    RiskDistribution zero{0.0, 0.0, 1e-3};
    std::mt19937_64 rng(1);
    CHECK(risk_metric(a, reports, zero, rng) == 0.0);
}

TEST_CASE("evolutionary lowers risk against nearest in the default scenario") {
    auto c = small_config();
    c.population_sizes = {1000};
    c.strategies = {Strategy::Evolutionary, Strategy::Nearest};
    const auto records = run_experiment(c);
    std::map<std::string, double> risk;
    for (const auto& r : records) risk[r.strategy] += r.mean_risk_probability;
    CHECK(risk["evolutionary"] < risk["nearest"]);
}

TEST_CASE("utility normalization") {
    CHECK(normalize_utility(0.5, 1.0) == doctest::Approx(0.5));
    CHECK(normalize_utility(1.0, 1.0) == 1.0);
    CHECK(normalize_utility(-3.0, 1.0) == 0.0);
    CHECK(normalize_utility(-1.5, -1.0) == doctest::Approx(0.5));
    CHECK(normalize_utility(-1.0, -1.0) == 1.0);
}

TEST_CASE("sweeps are deterministic and schedule independent") {
    const auto c = small_config();
    const auto a = run_experiment(c, {1, false}).records;
    const auto b = run_experiment(c, {3, false}).records;
    CHECK(fnv1a64(csv_of(a)) == fnv1a64(csv_of(b)));
    auto d = c;
    d.master_seed += 1;
    CHECK(csv_of(run_experiment(d)) != csv_of(a));
}

TEST_CASE("adding a strategy leaves other arms untouched") {
    auto c = small_config();
    c.strategies = {Strategy::Random};
    const auto alone = run_experiment(c);
    c.strategies = {Strategy::Random, Strategy::Fixed, Strategy::Nearest};
    std::vector<ExperimentRecord> mixed;
    for (const auto& r : run_experiment(c))
        if (r.strategy == "random") mixed.push_back(r);
    CHECK(csv_of(alone) == csv_of(mixed));
}

TEST_CASE("agent engine and trace output") {
    auto c = small_config();
    c.population_sizes = {200};
    c.replications = 1;
    c.engine = Engine::Agent;
    c.strategies = {Strategy::Evolutionary};
    const auto out = run_experiment(c, {1, true});
    REQUIRE(out.records.size() == 1);
    CHECK(out.records[0].converged);
    CHECK(out.trace.size() == out.records[0].round + 1);
    double sum = 0.0;
    for (double x : out.records[0].shares) sum += x;
    CHECK(sum == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("tiny population oracle") {
    for (std::size_t m = 1; m <= 3; ++m) {
        const auto c = with_satellite_count(small_config(), m);
        for (std::size_t n = std::max<std::size_t>(m, 2); n <= 12; n += 5) {
            const auto r = tiny_oracle(c, n);
            CHECK(r.integer_optimum - r.relaxed_optimum < r.granularity_bound + 1e-9);
            CHECK(r.agent_utility <= r.integer_optimum + 1e-9);
            CHECK(r.replicator_utility <= r.relaxed_optimum + 1e-9);
        }
    }
}
