#pragma once

#include <cstddef>

#include "sagin/channel.hpp"
#include "sagin/geometry.hpp"
#include "sagin/quadrature.hpp"

namespace sagin {

struct SecrecyReport {
    std::size_t satellite_id = 0;
    double legit_snr = 0.0;
    double legit_capacity = 0.0;     // bit/s
    double eavesdrop_capacity = 0.0; // bit/s
    double secrecy_capacity = 0.0;   // bit/s
    double threat_probability = 0.0;
    double half_angle_rad = 0.0;
};

struct RiskParams {
    double secrecy_demand = 0.0; // bit/s
    double risk_exponent = 1e-3; // 1/(bit/s)
};

/// W log2(1 + gamma(d_e)).
double eavesdrop_capacity_at(double d_e_km, const ChannelConfig& channel);

/// Expected aggregate eavesdropping rate against satellite `sat`, bit/s.
double total_eavesdrop_capacity(std::size_t sat, const GeometryConfig& geom, const ChannelConfig& channel,
                                const QuadratureConfig& quad);

double legitimate_capacity(double legit_snr, double bandwidth_hz, bool include_bandwidth = true);

/// max(0, W log2(1 + gamma) - C^E); the legitimate term drops W when include_bandwidth is false.
double secrecy_capacity(double legit_snr, double eavesdrop_capacity, double bandwidth_hz,
                        bool include_bandwidth = true);

double expected_eavesdropper_count(double d_e_km, double delta_km, std::size_t sat, const GeometryConfig& geom);

/// 0 when demand fits, else 1 - exp(-k (SD - C^S)).
double risk_probability(double secrecy_capacity_bps, const RiskParams& risk);
double risk_probability(const SecrecyReport& report, const RiskParams& risk);

SecrecyReport secrecy_report(std::size_t sat, double legit_snr, const GeometryConfig& geom,
                             const ChannelConfig& channel, const QuadratureConfig& quad,
                             bool include_bandwidth = true);

} // namespace sagin
