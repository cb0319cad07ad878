#include "sagin/queueing.hpp"

#include <stdexcept>

namespace sagin {

void QueueConfig::validate() const {
    if (service_rates.empty()) throw std::invalid_argument("queue.service_rates must not be empty");
    for (double mu : service_rates)
        if (!(mu > 0.0)) throw std::invalid_argument("queue.service_rates must be > 0");
    if (!(per_device_task_rate > 0.0)) throw std::invalid_argument("queue.per_device_task_rate must be > 0");
    if (!(overload_delay_cap > 0.0)) throw std::invalid_argument("queue.overload_delay_cap must be > 0");
    if (!(utilization_guard > 0.0 && utilization_guard < 1.0))
        throw std::invalid_argument("queue.utilization_guard must lie in (0, 1)");
}

double arrival_rate(double share, std::size_t n_devices, const QueueConfig& config) {
    return share * static_cast<double>(n_devices) * config.per_device_task_rate;
}

double queuing_delay(double arrival, double service, const QueueConfig& config) {
    if (arrival < config.utilization_guard * service) return 1.0 / (service - arrival);
    return config.overload_delay_cap;
}

} // namespace sagin
