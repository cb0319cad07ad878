#include "sagin/strategies.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <numeric>
#include <stdexcept>

namespace sagin {

std::string_view strategy_name(Strategy s) {
    switch (s) {
    case Strategy::Optimal: return "optimal";
    case Strategy::Evolutionary: return "evolutionary";
    case Strategy::Random: return "random";
    case Strategy::Nearest: return "nearest";
    case Strategy::Fixed: return "fixed";
    }
    return "unknown";
}

std::optional<Strategy> parse_strategy(std::string_view name) {
    for (Strategy s : {Strategy::Optimal, Strategy::Evolutionary, Strategy::Random, Strategy::Nearest,
                       Strategy::Fixed})
        if (strategy_name(s) == name) return s;
    return std::nullopt;
}

double average_utility(const ScenarioModel& model, const std::vector<double>& shares, std::size_t n_devices,
                       double min_share_floor) {
    const PopulationState s{shares, n_devices, 0};
    return evaluate_profile(model, s, min_share_floor).average;
}

std::vector<double> project_to_simplex(const std::vector<double>& v, double lower) {
    const std::size_t m = v.size();
    const double mass = 1.0 - static_cast<double>(m) * lower;
    if (mass < 0.0) throw std::invalid_argument("project_to_simplex: lower bound too large");
    std::vector<double> y(m);
    for (std::size_t i = 0; i < m; ++i) y[i] = v[i] - lower;
    std::vector<double> u = y;
    std::sort(u.begin(), u.end(), std::greater<>());
    double cum = 0.0, theta = 0.0;
    for (std::size_t k = 0; k < m; ++k) {
        cum += u[k];
        const double t = (cum - mass) / static_cast<double>(k + 1);
        if (u[k] - t > 0.0) theta = t;
    }
    for (std::size_t i = 0; i < m; ++i) y[i] = std::max(y[i] - theta, 0.0) + lower;
    return y;
}

namespace {

using Objective = std::function<double(const std::vector<double>&)>;

std::vector<double> fd_gradient(const Objective& f, const std::vector<double>& x, double fx, double floor) {
    const double h = 1e-7;
    std::vector<double> g(x.size());
    std::vector<double> p = x;
    for (std::size_t i = 0; i < x.size(); ++i) {
        if (x[i] - h > floor * (1.0 + 1e-9)) {
            p[i] = x[i] + h;
            const double up = f(p);
            p[i] = x[i] - h;
            const double dn = f(p);
            g[i] = (up - dn) / (2.0 * h);
        } else {
            p[i] = x[i] + h;
            g[i] = (f(p) - fx) / h;
        }
        p[i] = x[i];
    }
    return g;
}

std::vector<double> gradient_ascent(const Objective& f, std::size_t m, double floor) {
    std::vector<double> x = project_to_simplex(std::vector<double>(m, 1.0 / static_cast<double>(m)), floor);
    double fx = f(x);
    double step = 1e-3;
    for (int iter = 0; iter < 20000; ++iter) {
        const auto g = fd_gradient(f, x, fx, floor);
        bool moved = false;
        step *= 2.0;
        while (step > 1e-18) {
            std::vector<double> trial(m);
            for (std::size_t i = 0; i < m; ++i) trial[i] = x[i] + step * g[i];
            trial = project_to_simplex(trial, floor);
            double dir = 0.0;
            for (std::size_t i = 0; i < m; ++i) dir += g[i] * (trial[i] - x[i]);
            const double ft = f(trial);
            if (ft >= fx + 1e-4 * dir && ft > fx) {
                double change = 0.0;
                for (std::size_t i = 0; i < m; ++i) change = std::max(change, std::abs(trial[i] - x[i]));
                x = std::move(trial);
                fx = ft;
                moved = change > 1e-14;
                break;
            }
            step *= 0.5;
        }
        if (!moved) break;
    }
    return x;
}

void for_each_lattice_point(std::size_t m, std::size_t resolution,
                            const std::function<void(const std::vector<std::size_t>&)>& visit) {
    std::vector<std::size_t> k(m, 0);
    std::function<void(std::size_t, std::size_t)> rec = [&](std::size_t i, std::size_t left) {
        if (i + 1 == m) {
            k[i] = left;
            visit(k);
            return;
        }
        for (std::size_t c = 0; c <= left; ++c) {
            k[i] = c;
            rec(i + 1, left - c);
        }
    };
    rec(0, resolution);
}

} // namespace

OptimalSearch optimal_search(const ScenarioModel& model, std::size_t n_devices, double min_share_floor,
                             std::size_t grid_resolution) {
    if (grid_resolution < 10) throw std::invalid_argument("optimal grid_resolution must be >= 10");
    const std::size_t m = model.num_satellites;
    const Objective f = [&](const std::vector<double>& x) {
        return average_utility(model, x, n_devices, min_share_floor);
    };

    OptimalSearch out;
    out.gradient_shares = gradient_ascent(f, m, min_share_floor);
    out.gradient_value = f(out.gradient_shares);

    if (m <= 4) {
        double best = -std::numeric_limits<double>::infinity();
        std::vector<double> x(m);
        const double r = static_cast<double>(grid_resolution);
        for_each_lattice_point(m, grid_resolution, [&](const std::vector<std::size_t>& k) {
            for (std::size_t i = 0; i < m; ++i) x[i] = static_cast<double>(k[i]) / r;
            const double v = f(x);
            ++out.grid_points;
            if (v > best) {
                best = v;
                out.grid_shares = x;
            }
        });
        out.grid_value = best;
    }

    const bool grid_wins = !out.grid_shares.empty() && out.grid_value > out.gradient_value;
    out.state = {grid_wins ? out.grid_shares : out.gradient_shares, n_devices, 0};
    out.value = grid_wins ? out.grid_value : out.gradient_value;
    return out;
}

PopulationState optimal_shares(const ScenarioModel& model, std::size_t n_devices, double min_share_floor,
                               std::size_t grid_resolution) {
    return optimal_search(model, n_devices, min_share_floor, grid_resolution).state;
}

std::vector<std::size_t> assign(const StrategyKind& kind, const std::vector<Vec3>& devices,
                                const std::vector<SatellitePosition>& sats, std::mt19937_64& rng) {
    const std::size_t m = sats.size();
    if (m == 0) throw std::invalid_argument("assign: no satellites");
    std::vector<std::size_t> out(devices.size(), 0);
    switch (kind.kind) {
    case Strategy::Random: {
        std::uniform_int_distribution<std::size_t> pick(0, m - 1);
        for (auto& a : out) a = pick(rng);
        break;
    }
    case Strategy::Nearest:
        for (std::size_t n = 0; n < devices.size(); ++n) {
            double best = std::numeric_limits<double>::infinity();
            for (std::size_t i = 0; i < m; ++i) {
                const double d = distance(devices[n], sats[i].position);
                if (d < best) {
                    best = d;
                    out[n] = i;
                }
            }
        }
        break;
    case Strategy::Fixed:
        if (kind.fixed_target >= m) throw std::invalid_argument("assign: fixed_target out of range");
        std::fill(out.begin(), out.end(), kind.fixed_target);
        break;
    default:
        throw std::invalid_argument("assign: strategy has no static assignment");
    }
    return out;
}

std::vector<Vec3> place_devices(std::size_t n_devices, const GeometryConfig& geom, std::mt19937_64& rng) {
    const auto sats = serving_positions(geom);
    const std::size_t m = sats.size();
    std::vector<Vec3> out;
    out.reserve(n_devices);
    for (std::size_t i = 0; i < m; ++i) {
        const std::size_t count = n_devices / m + (i < n_devices % m ? 1 : 0);
        for (std::size_t k = 0; k < count; ++k)
            out.push_back(sample_cap_point(sats[i].position, geom.earth_radius_km, geom.altitude(i), rng));
    }
    return out;
}

IntegerOptimum exhaustive_integer_optimum(const ScenarioModel& model, std::size_t n_devices,
                                          double min_share_floor) {
    const std::size_t m = model.num_satellites;
    IntegerOptimum best;
    best.value = -std::numeric_limits<double>::infinity();
    std::vector<double> x(m);
    for_each_lattice_point(m, n_devices, [&](const std::vector<std::size_t>& k) {
        for (std::size_t i = 0; i < m; ++i) x[i] = static_cast<double>(k[i]) / static_cast<double>(n_devices);
        const double v = average_utility(model, x, n_devices, min_share_floor);
        if (v > best.value) {
            best.value = v;
            best.counts = k;
        }
    });
    return best;
}

} // namespace sagin
