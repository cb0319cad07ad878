#pragma once

#include <array>
#include <cstddef>
#include <random>
#include <vector>

namespace sagin {

using Vec3 = std::array<double, 3>;

inline constexpr double kEarthMuKm3PerS2 = 398600.4418;

double norm(const Vec3& v);
double dot(const Vec3& a, const Vec3& b);
double distance(const Vec3& a, const Vec3& b);

struct GeometryConfig {
    double earth_radius_km = 6371.0;
    std::vector<double> serving_altitude_km{300.0, 300.0, 300.0, 300.0};
    double eavesdropper_altitude_km = 600.0;
    std::vector<double> serving_phases_deg{0.0, 90.0, 180.0, 270.0};
    std::size_t num_serving = 4;
    std::size_t num_eavesdroppers = 3;

    /// Throws std::invalid_argument describing the first violated invariant.
    void validate() const;
    double altitude(std::size_t sat) const { return serving_altitude_km.at(sat); }
};

struct SatellitePosition {
    std::size_t satellite_id = 0;
    Vec3 position{};
    double altitude_km = 0.0;
};

/// Circular-orbit period from Kepler's third law, seconds.
double orbital_period_s(double earth_radius_km, double altitude_km);

/// Satellites on one equatorial circular orbit, advanced by `epoch_s` seconds.
std::vector<SatellitePosition> serving_positions(const GeometryConfig& config, double epoch_s = 0.0);

/// Half-angle of the coverage cone, arccos(R/(R+H)), radians.
/// Throws std::domain_error for R <= 0 or H < 0.
double effective_half_angle(double earth_radius_km, double serving_altitude_km);

/// Probability that a uniformly placed point on the sphere falls in the coverage cap.
double threat_probability(double earth_radius_km, double serving_altitude_km);

double horizon_range_km(double earth_radius_km, double altitude_km);
double max_los_distance(double earth_radius_km, double serving_altitude_km, double eavesdropper_altitude_km);
double max_los_distance(const GeometryConfig& config, std::size_t sat = 0);

/// Eavesdropper distance density on (H_e, D_max], zero elsewhere.
double distance_pdf(double d_e_km, const GeometryConfig& config, std::size_t sat = 0);

/// Mean slant range from a satellite to a uniform point of its coverage cap.
double mean_cap_slant_range(double earth_radius_km, double altitude_km);

/// Uniform point on the Earth's surface within the coverage cap of `sat`.
Vec3 sample_cap_point(const Vec3& sat_position, double earth_radius_km, double altitude_km,
                      std::mt19937_64& rng);

} // namespace sagin
