#include "cfr/metrics.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace cfr {

double mse(std::span<const double> y, std::span<const double> yhat) {
    if (y.size() != yhat.size())
        throw std::invalid_argument("mse: length mismatch (" + std::to_string(y.size()) +
                                    " vs " + std::to_string(yhat.size()) + ")");
    if (y.empty())
        throw std::invalid_argument("mse: empty input");
    double acc = 0.0;
    for (std::size_t i = 0; i < y.size(); ++i) {
        if (!std::isfinite(yhat[i]))
            return std::numeric_limits<double>::infinity();
        const double e = y[i] - yhat[i];
        acc += e * e;
    }
    return acc / static_cast<double>(y.size());
}

double variance(std::span<const double> y) {
    if (y.size() < 2)
        throw std::invalid_argument("variance: need at least 2 values");
    double mean = 0.0;
    for (double v : y) mean += v;
    mean /= static_cast<double>(y.size());
    double acc = 0.0;
    for (double v : y) {
        const double e = v - mean;
        acc += e * e;
    }
    return acc / static_cast<double>(y.size() - 1);
}

double nmse(std::span<const double> y, std::span<const double> yhat) {
    const double var = variance(y);
    if (var <= 0.0)
        throw std::domain_error("nmse: degenerate (constant) target, variance is zero");
    return mse(y, yhat) / var;
}

double adjusted_mse(double mse_value, std::size_t n_vars_used, double delta) {
    return mse_value * (1.0 + delta * static_cast<double>(n_vars_used));
}

} // namespace cfr
