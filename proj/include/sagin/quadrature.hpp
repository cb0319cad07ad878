#pragma once

#include <cstddef>
#include <stdexcept>

namespace sagin {

enum class QuadratureRule { Midpoint, Simpson };

struct QuadratureConfig {
    std::size_t num_intervals = 4096;
    QuadratureRule rule = QuadratureRule::Simpson;

    void validate() const {
        if (num_intervals < 2) throw std::invalid_argument("quadrature.num_intervals must be >= 2");
        if (rule == QuadratureRule::Simpson && num_intervals % 2 != 0)
            throw std::invalid_argument("quadrature.num_intervals must be even for simpson");
    }
};

/// Composite rule over [a, b] with `config.num_intervals` panels.
template <class F>
double integrate(F&& f, double a, double b, const QuadratureConfig& config) {
    config.validate();
    const std::size_t n = config.num_intervals;
    const double h = (b - a) / static_cast<double>(n);
    double sum = 0.0;
    if (config.rule == QuadratureRule::Midpoint) {
        for (std::size_t k = 0; k < n; ++k) sum += f(a + (static_cast<double>(k) + 0.5) * h);
        return sum * h;
    }
    sum = f(a) + f(b);
    for (std::size_t k = 1; k < n; ++k) sum += (k % 2 ? 4.0 : 2.0) * f(a + static_cast<double>(k) * h);
    return sum * h / 3.0;
}

} // namespace sagin
