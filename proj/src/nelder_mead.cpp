#include "cfr/nelder_mead.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

namespace cfr {

namespace {

double guard(double v) {
    return std::isnan(v) ? std::numeric_limits<double>::infinity() : v;
}

} // namespace

MinimizeResult minimize(const std::function<double(std::span<const double>)>& objective,
                        std::span<const double> x0, const NMConfig& config) {
    const std::size_t dim = x0.size();
    if (dim == 0)
        throw std::invalid_argument("minimize: empty starting point");

    std::vector<std::vector<double>> vertex(dim + 1, std::vector<double>(x0.begin(), x0.end()));
    for (std::size_t j = 0; j < dim; ++j)
        vertex[j + 1][j] += 1.0; // unit-step initial simplex

    std::vector<double> value(dim + 1);
    MinimizeResult best;
    best.f = std::numeric_limits<double>::infinity();
    auto eval = [&](std::span<const double> x) {
        const double f = guard(objective(x));
        if (f < best.f) {
            best.f = f;
            best.x.assign(x.begin(), x.end());
        }
        return f;
    };
    for (std::size_t v = 0; v <= dim; ++v)
        value[v] = eval(vertex[v]);

    std::vector<std::size_t> order(dim + 1);
    std::vector<double> centroid(dim), reflected(dim), candidate(dim);

    int stall = 0;
    double last_best = *std::min_element(value.begin(), value.end());
    double last_worst = *std::max_element(value.begin(), value.end());
    int iterations = 0;

    for (int iter = 0; iter < config.max_iterations; ++iter) {
        std::iota(order.begin(), order.end(), std::size_t{0});
        std::stable_sort(order.begin(), order.end(),
                         [&](std::size_t a, std::size_t b) { return value[a] < value[b]; });
        const std::size_t lo = order[0];
        const std::size_t hi = order[dim];
        const std::size_t next_hi = order[dim - 1];

        if (std::abs(value[lo] - value[hi]) < config.tolerance)
            break;

        for (std::size_t j = 0; j < dim; ++j) {
            double acc = 0.0;
            for (std::size_t v = 0; v <= dim; ++v)
                if (v != hi) acc += vertex[v][j];
            centroid[j] = acc / static_cast<double>(dim);
        }

        for (std::size_t j = 0; j < dim; ++j)
            reflected[j] = centroid[j] + config.reflection * (centroid[j] - vertex[hi][j]);
        const double f_reflected = eval(reflected);

        if (f_reflected < value[lo]) {
            for (std::size_t j = 0; j < dim; ++j)
                candidate[j] = centroid[j] + config.expansion * (reflected[j] - centroid[j]);
            const double f_expanded = eval(candidate);
            if (f_expanded < f_reflected) {
                vertex[hi] = candidate;
                value[hi] = f_expanded;
            } else {
                vertex[hi] = reflected;
                value[hi] = f_reflected;
            }
        } else if (f_reflected < value[next_hi]) {
            vertex[hi] = reflected;
            value[hi] = f_reflected;
        } else {
            bool shrink_needed = false;
            if (f_reflected < value[hi]) {
                // outside contraction
                for (std::size_t j = 0; j < dim; ++j)
                    candidate[j] = centroid[j] + config.contraction * (reflected[j] - centroid[j]);
                const double f_contracted = eval(candidate);
                if (f_contracted <= f_reflected) {
                    vertex[hi] = candidate;
                    value[hi] = f_contracted;
                } else {
                    shrink_needed = true;
                }
            } else {
                // inside contraction
                for (std::size_t j = 0; j < dim; ++j)
                    candidate[j] = centroid[j] + config.contraction * (vertex[hi][j] - centroid[j]);
                const double f_contracted = eval(candidate);
                if (f_contracted < value[hi]) {
                    vertex[hi] = candidate;
                    value[hi] = f_contracted;
                } else {
                    shrink_needed = true;
                }
            }
            if (shrink_needed) {
                for (std::size_t v = 0; v <= dim; ++v) {
                    if (v == lo) continue;
                    for (std::size_t j = 0; j < dim; ++j)
                        vertex[v][j] = vertex[lo][j] + config.shrink * (vertex[v][j] - vertex[lo][j]);
                    value[v] = eval(vertex[v]);
                }
            }
        }

        iterations = iter + 1;

        const double cur_best = *std::min_element(value.begin(), value.end());
        const double cur_worst = *std::max_element(value.begin(), value.end());
        const bool reshaped = cur_best < last_best || cur_worst < last_worst;
        last_best = std::min(last_best, cur_best);
        last_worst = std::min(last_worst, cur_worst);
        if (reshaped) {
            stall = 0;
        } else if (++stall >= config.stagnation_limit) {
            break;
        }
    }

    MinimizeResult out = best;
    out.iterations = iterations;
    return out;
}

} // namespace cfr
