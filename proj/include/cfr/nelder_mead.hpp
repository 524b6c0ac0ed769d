#pragma once

#include <functional>
#include <span>
#include <vector>

namespace cfr {

struct NMConfig {
    double tolerance = 1e-3;
    int max_iterations = 250;
    int stagnation_limit = 10;
    double reflection = 1.0;
    double expansion = 2.0;
    double contraction = 0.5;
    double shrink = 0.5;
};

struct MinimizeResult {
    std::vector<double> x;
    double f = 0.0;
    int iterations = 0;
};

// Downhill simplex search. The initial simplex is {x0} plus x0 shifted by a
// unit step along each coordinate axis. One iteration is one pass of the
// classic scheme:
//
//   order vertices by value; reflect the worst through the centroid of the
//   rest; expand greedily if the reflection beats the best vertex; otherwise
//   contract (outside/inside) when the reflection is no better than the
//   second-worst; shrink everything toward the best vertex when the
//   contraction fails too.
//
// The loop stops when, checked before each iteration, |f_best - f_worst| <
// tolerance; or after max_iterations; or on stagnation: stagnation_limit
// consecutive iterations in which neither the best nor the worst vertex
// value strictly improved, i.e. the simplex has stopped reshaping (this is
// what ends searches stuck on an all-infinite plateau). Returns the best
// vertex seen, so the result is never worse than objective(x0). Objectives
// may return +inf (NaN is treated as +inf).
MinimizeResult minimize(const std::function<double(std::span<const double>)>& objective,
                        std::span<const double> x0, const NMConfig& config = {});

} // namespace cfr
