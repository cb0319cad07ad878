#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <string_view>
#include <vector>

#include "sagin/game.hpp"
#include "sagin/geometry.hpp"

namespace sagin {

enum class Strategy { Optimal, Evolutionary, Random, Nearest, Fixed };

std::string_view strategy_name(Strategy s);
std::optional<Strategy> parse_strategy(std::string_view name);

struct StrategyKind {
    Strategy kind = Strategy::Evolutionary;
    std::size_t fixed_target = 0;
    std::uint64_t rng_seed = 0;
};

/// Average utility at a share vector.
double average_utility(const ScenarioModel& model, const std::vector<double>& shares, std::size_t n_devices,
                       double min_share_floor);

/// Euclidean projection onto {x : x_i >= lower, sum x = 1}.
std::vector<double> project_to_simplex(const std::vector<double>& v, double lower = 0.0);

struct OptimalSearch {
    PopulationState state;
    double value = 0.0;
    std::vector<double> gradient_shares;
    double gradient_value = 0.0;
    std::vector<double> grid_shares; // empty when the lattice was skipped
    double grid_value = 0.0;
    std::size_t grid_points = 0;
};

/// Maximizer of the average utility over the floored simplex: projected gradient
/// ascent from the uniform point, cross-checked by a simplex-lattice search for M <= 4.
OptimalSearch optimal_search(const ScenarioModel& model, std::size_t n_devices, double min_share_floor,
                             std::size_t grid_resolution = 100);

PopulationState optimal_shares(const ScenarioModel& model, std::size_t n_devices, double min_share_floor,
                               std::size_t grid_resolution = 100);

/// Per-device satellite index for the static strategies.
/// Throws std::invalid_argument for Optimal/Evolutionary or an out-of-range fixed target.
std::vector<std::size_t> assign(const StrategyKind& kind, const std::vector<Vec3>& devices,
                                const std::vector<SatellitePosition>& sats, std::mt19937_64& rng);

/// Devices spread over the coverage caps: equal counts per cap, uniform within each cap.
std::vector<Vec3> place_devices(std::size_t n_devices, const GeometryConfig& geom, std::mt19937_64& rng);

struct IntegerOptimum {
    std::vector<std::size_t> counts;
    double value = 0.0;
};

/// Exhaustive optimum over integer assignments. Utility depends on an assignment
/// only through its per-satellite counts, so every count composition is scored.
IntegerOptimum exhaustive_integer_optimum(const ScenarioModel& model, std::size_t n_devices,
                                          double min_share_floor);

} // namespace sagin
