#pragma once

#include <cstddef>
#include <vector>

namespace sagin {

struct QueueConfig {
    std::vector<double> service_rates{11.0, 10.5, 9.5, 9.0}; // tasks/s
    double per_device_task_rate = 0.01;                        // tasks/s
    double overload_delay_cap = 1.0e3;                         // s
    double utilization_guard = 0.999;

    void validate() const;
};

double arrival_rate(double share, std::size_t n_devices, const QueueConfig& config);

/// M/M/1 sojourn time 1/(mu - lambda), or the overload cap once lambda >= guard * mu.
double queuing_delay(double arrival, double service, const QueueConfig& config);

} // namespace sagin
