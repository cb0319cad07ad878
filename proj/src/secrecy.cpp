#include "sagin/secrecy.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace sagin {

double eavesdrop_capacity_at(double d_e_km, const ChannelConfig& channel) {
    return channel.bandwidth_hz * std::log2(1.0 + mean_snr(d_e_km, channel));
}

double total_eavesdrop_capacity(std::size_t sat, const GeometryConfig& geom, const ChannelConfig& channel,
                                const QuadratureConfig& quad) {
    quad.validate();
    if (geom.num_eavesdroppers == 0) return 0.0;
    const double r = geom.earth_radius_km;
    const double he = geom.eavesdropper_altitude_km;
    const double d_max = max_los_distance(geom, sat);
    if (d_max <= he) return 0.0;
    const double ps = threat_probability(r, geom.altitude(sat));
    const double integral = integrate(
        [&](double d) { return d * std::log2(1.0 + mean_snr(d, channel)); }, he, d_max, quad);
    return static_cast<double>(geom.num_eavesdroppers) * channel.bandwidth_hz * ps /
           (2.0 * r * (r + he)) * integral;
}

double legitimate_capacity(double legit_snr, double bandwidth_hz, bool include_bandwidth) {
    if (legit_snr < 0.0) throw std::domain_error("legitimate_capacity: snr must be >= 0");
    return (include_bandwidth ? bandwidth_hz : 1.0) * std::log2(1.0 + legit_snr);
}

double secrecy_capacity(double legit_snr, double eavesdrop_capacity, double bandwidth_hz, bool include_bandwidth) {
    return std::max(0.0, legitimate_capacity(legit_snr, bandwidth_hz, include_bandwidth) - eavesdrop_capacity);
}

double expected_eavesdropper_count(double d_e_km, double delta_km, std::size_t sat, const GeometryConfig& geom) {
    if (!(delta_km > 0.0)) throw std::domain_error("expected_eavesdropper_count: delta must be > 0");
    return static_cast<double>(geom.num_eavesdroppers) * distance_pdf(d_e_km, geom, sat) * delta_km *
           threat_probability(geom.earth_radius_km, geom.altitude(sat));
}

double risk_probability(double secrecy_capacity_bps, const RiskParams& risk) {
    const double gap = risk.secrecy_demand - secrecy_capacity_bps;
    if (gap <= 0.0) return 0.0;
    return -std::expm1(-risk.risk_exponent * gap);
}

double risk_probability(const SecrecyReport& report, const RiskParams& risk) {
    return risk_probability(report.secrecy_capacity, risk);
}

SecrecyReport secrecy_report(std::size_t sat, double legit_snr, const GeometryConfig& geom,
                             const ChannelConfig& channel, const QuadratureConfig& quad, bool include_bandwidth) {
    SecrecyReport rep;
    rep.satellite_id = sat;
    rep.legit_snr = legit_snr;
    rep.legit_capacity = legitimate_capacity(legit_snr, channel.bandwidth_hz, include_bandwidth);
    rep.eavesdrop_capacity = total_eavesdrop_capacity(sat, geom, channel, quad);
    rep.secrecy_capacity = std::max(0.0, rep.legit_capacity - rep.eavesdrop_capacity);
    rep.threat_probability = threat_probability(geom.earth_radius_km, geom.altitude(sat));
    rep.half_angle_rad = effective_half_angle(geom.earth_radius_km, geom.altitude(sat));
    return rep;
}

} // namespace sagin
