#pragma once

#include <cstddef>
#include <span>

namespace cfr {

struct Metrics {
    double mse = 0.0;
    double nmse = 0.0;
    double adjusted_mse = 0.0;
    std::size_t n_vars_used = 0;
};

// Mean squared error. Any non-finite prediction poisons the result to +inf
// so that population comparisons stay total.
double mse(std::span<const double> y, std::span<const double> yhat);

// Sample variance with the n-1 denominator.
double variance(std::span<const double> y);

// mse / Var(y). Throws std::domain_error on a constant target.
double nmse(std::span<const double> y, std::span<const double> yhat);

// mse * (1 + delta * n_vars_used) -- the guiding function's complexity
// penalty.
double adjusted_mse(double mse_value, std::size_t n_vars_used, double delta = 0.10);

} // namespace cfr
