#include "doctest.h"

#include <cmath>
#include <random>

#include "sagin/game.hpp"
#include "support.hpp"

using namespace sagin;

namespace {

std::vector<std::size_t> block_assignments(const std::vector<std::size_t>& counts) {
    std::vector<std::size_t> a;
    for (std::size_t i = 0; i < counts.size(); ++i) a.insert(a.end(), counts[i], i);
    return a;
}

} // namespace

TEST_CASE("balanced satellites produce no migrations") {
    const auto model = test::symmetric_model();
    GameConfig cfg;
    std::mt19937_64 rng(1);
    const auto start = block_assignments({250, 250, 250, 250});
    const auto r = agent_based_round(start, model, cfg, rng);
    CHECK(r.migrations == 0);
    CHECK(r.assignments == start);
}

TEST_CASE("single device on a single satellite stays put") {
    const auto model = test::make_model({1e6}, {10.0}, 0.01, 1e-5, 1.0);
    GameConfig cfg;
    std::mt19937_64 rng(1);
    const auto r = agent_based_round({0}, model, cfg, rng);
    CHECK(r.assignments == std::vector<std::size_t>{0});
}

TEST_CASE("below-average devices move only toward above-average satellites") {
    const auto model = test::symmetric_model();
    GameConfig cfg;
    cfg.move_probability = 1.0;
    std::mt19937_64 rng(9);
    const auto start = block_assignments({700, 100, 100, 100});
    const auto r = agent_based_round(start, model, cfg, rng);
    CHECK(r.migrations == 700);
    for (std::size_t n = 0; n < r.assignments.size(); ++n) {
        if (start[n] != 0) CHECK(r.assignments[n] == start[n]);
        else CHECK(r.assignments[n] != 0);
    }
}

TEST_CASE("agent rounds are reproducible for a seed") {
    const auto model = test::symmetric_model();
    GameConfig cfg;
    std::mt19937_64 a(5), b(5);
    const auto start = block_assignments({700, 100, 100, 100});
    CHECK(agent_based_round(start, model, cfg, a).assignments == agent_based_round(start, model, cfg, b).assignments);
}

TEST_CASE("agent dynamics approach the mean-field equilibrium") {
    const auto model = test::symmetric_model();
    GameConfig cfg;
    const auto ode = run_replicator({{0.7, 0.1, 0.1, 0.1}, 1000, 0}, model, cfg);
    REQUIRE(ode.converged);
    for (auto target : {MigrationTarget::Surplus, MigrationTarget::Uniform}) {
        cfg.migration_target = target;
        std::mt19937_64 rng(21);
        const auto run = run_agent(block_assignments({700, 100, 100, 100}), model, cfg, rng);
        if (target == MigrationTarget::Surplus) CHECK(run.converged);
        for (std::size_t i = 0; i < 4; ++i)
            CHECK(std::abs(run.final_state.shares[i] - ode.final_state.shares[i]) < 0.05);
    }
}

TEST_CASE("out-of-range assignment is rejected") {
    const auto model = test::symmetric_model();
    GameConfig cfg;
    std::mt19937_64 rng(1);
    CHECK_THROWS_AS(agent_based_round({0, 4}, model, cfg, rng), std::invalid_argument);
}

TEST_CASE("empirical shares from assignments") {
    const auto s = state_from_assignments({0, 1, 1, 3}, 4);
    CHECK(s.n_devices == 4);
    CHECK(s.shares == std::vector<double>{0.25, 0.5, 0.0, 0.25});
    CHECK(assignment_counts({0, 1, 1, 3}, 4) == std::vector<std::size_t>{1, 2, 0, 1});
}

TEST_CASE("integer equilibrium means no profitable single switch") {
    const auto model = test::symmetric_model();
    GameConfig cfg;
    CHECK(integer_equilibrium({250, 250, 250, 250}, model, cfg));
    CHECK_FALSE(integer_equilibrium({251, 250, 250, 249}, model, cfg));
    CHECK_FALSE(integer_equilibrium({700, 100, 100, 100}, model, cfg));
    CHECK(integer_equilibrium({0, 0, 0, 0}, model, cfg));

    // Brute force over all count vectors of a tiny population.
    const auto tiny = test::delay_only_model();
    std::size_t found = 0;
    for (std::size_t a = 0; a <= 12; ++a) {
        const std::vector<std::size_t> c{a, 12 - a};
        bool stable = true;
        const auto here = evaluate_profile(tiny, state_from_assignments(
            [&] { std::vector<std::size_t> v(a, 0); v.resize(12, 1); return v; }(), 2), cfg.min_share_floor);
        for (int dir = 0; dir < 2; ++dir) {
            const std::size_t from = dir, to = 1 - dir;
            if (c[from] == 0) continue;
            std::vector<std::size_t> v(c[0] - (from == 0), 0);
            v.resize(12, 1);
            if (from == 1) v[c[0]] = 0;
            const auto moved = evaluate_profile(tiny, state_from_assignments(v, 2), cfg.min_share_floor);
            const double bound = cfg.equilibrium_tolerance * std::max(1.0, std::abs(here.average));
            if (moved.per_satellite[to] > here.per_satellite[from] + bound) stable = false;
        }
        CHECK(integer_equilibrium(c, tiny, cfg) == stable);
        found += stable;
    }
    CHECK(found >= 1);
}
