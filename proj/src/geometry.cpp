#include "sagin/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace sagin {

double norm(const Vec3& v) { return std::sqrt(dot(v, v)); }

double dot(const Vec3& a, const Vec3& b) { return a[0] * b[0] + a[1] * b[1] + a[2] * b[2]; }

double distance(const Vec3& a, const Vec3& b) {
    const Vec3 d{a[0] - b[0], a[1] - b[1], a[2] - b[2]};
    return norm(d);
}

void GeometryConfig::validate() const {
    if (!(earth_radius_km > 0.0)) throw std::invalid_argument("geometry.earth_radius_km must be > 0");
    if (!(eavesdropper_altitude_km > 0.0))
        throw std::invalid_argument("geometry.eavesdropper_altitude_km must be > 0");
    if (num_serving == 0) throw std::invalid_argument("geometry.num_serving must be >= 1");
    if (serving_phases_deg.size() != num_serving)
        throw std::invalid_argument("geometry.serving_phases_deg must have num_serving entries");
    if (serving_altitude_km.size() != num_serving)
        throw std::invalid_argument("geometry.serving_altitude_km must have num_serving entries");
    for (double h : serving_altitude_km)
        if (!(h > 0.0)) throw std::invalid_argument("geometry.serving_altitude_km must be > 0");
    for (double p : serving_phases_deg)
        if (!(p >= 0.0 && p < 360.0))
            throw std::invalid_argument("geometry.serving_phases_deg entries must lie in [0, 360)");
}

double orbital_period_s(double earth_radius_km, double altitude_km) {
    const double r = earth_radius_km + altitude_km;
    return 2.0 * std::numbers::pi * std::sqrt(r * r * r / kEarthMuKm3PerS2);
}

std::vector<SatellitePosition> serving_positions(const GeometryConfig& config, double epoch_s) {
    config.validate();
    std::vector<SatellitePosition> out;
    out.reserve(config.num_serving);
    for (std::size_t i = 0; i < config.num_serving; ++i) {
        const double h = config.serving_altitude_km[i];
        const double r = config.earth_radius_km + h;
        const double omega = 2.0 * std::numbers::pi / orbital_period_s(config.earth_radius_km, h);
        const double phase = config.serving_phases_deg[i] * std::numbers::pi / 180.0 + omega * epoch_s;
        out.push_back({i, {r * std::cos(phase), r * std::sin(phase), 0.0}, h});
    }
    return out;
}

double effective_half_angle(double earth_radius_km, double serving_altitude_km) {
    if (!(earth_radius_km > 0.0) || serving_altitude_km < 0.0)
        throw std::domain_error("effective_half_angle: radius must be > 0 and altitude >= 0");
    return std::acos(earth_radius_km / (earth_radius_km + serving_altitude_km));
}

double threat_probability(double earth_radius_km, double serving_altitude_km) {
    return 0.5 * (1.0 - std::cos(effective_half_angle(earth_radius_km, serving_altitude_km)));
}

double horizon_range_km(double earth_radius_km, double altitude_km) {
    const double r = earth_radius_km + altitude_km;
    return std::sqrt(r * r - earth_radius_km * earth_radius_km);
}

double max_los_distance(double earth_radius_km, double serving_altitude_km, double eavesdropper_altitude_km) {
    return horizon_range_km(earth_radius_km, serving_altitude_km) +
           horizon_range_km(earth_radius_km, eavesdropper_altitude_km);
}

double max_los_distance(const GeometryConfig& config, std::size_t sat) {
    return max_los_distance(config.earth_radius_km, config.altitude(sat), config.eavesdropper_altitude_km);
}

double distance_pdf(double d_e_km, const GeometryConfig& config, std::size_t sat) {
    const double he = config.eavesdropper_altitude_km;
    if (d_e_km <= he || d_e_km > max_los_distance(config, sat)) return 0.0;
    const double r = config.earth_radius_km;
    return d_e_km / (2.0 * r * (r + he));
}

double mean_cap_slant_range(double earth_radius_km, double altitude_km) {
    const double dh = horizon_range_km(earth_radius_km, altitude_km);
    const double h = altitude_km;
    return (2.0 / 3.0) * (dh * dh * dh - h * h * h) / (dh * dh - h * h);
}

Vec3 sample_cap_point(const Vec3& sat_position, double earth_radius_km, double altitude_km,
                      std::mt19937_64& rng) {
    const double n = norm(sat_position);
    const Vec3 z{sat_position[0] / n, sat_position[1] / n, sat_position[2] / n};
    // Orthonormal frame around the sub-satellite direction.
    const Vec3 helper = std::abs(z[2]) < 0.9 ? Vec3{0.0, 0.0, 1.0} : Vec3{1.0, 0.0, 0.0};
    Vec3 x{helper[1] * z[2] - helper[2] * z[1], helper[2] * z[0] - helper[0] * z[2],
           helper[0] * z[1] - helper[1] * z[0]};
    const double xn = norm(x);
    for (double& c : x) c /= xn;
    const Vec3 y{z[1] * x[2] - z[2] * x[1], z[2] * x[0] - z[0] * x[2], z[0] * x[1] - z[1] * x[0]};

    const double cos_psi = std::cos(effective_half_angle(earth_radius_km, altitude_km));
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    const double c = cos_psi + (1.0 - cos_psi) * unit(rng);
    const double s = std::sqrt(std::max(0.0, 1.0 - c * c));
    const double phi = 2.0 * std::numbers::pi * unit(rng);
    Vec3 p{};
    for (int k = 0; k < 3; ++k)
        p[k] = earth_radius_km * (c * z[k] + s * (std::cos(phi) * x[k] + std::sin(phi) * y[k]));
    return p;
}

} // namespace sagin
