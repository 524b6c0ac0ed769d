#pragma once

#include "cfr/continued_fraction.hpp"
#include "cfr/dataset.hpp"
#include "cfr/ma_config.hpp"
#include "cfr/rng.hpp"

namespace cfr {

struct ScoredModel {
    ContinuedFraction model;
    double guiding = 0.0;
};

// Above this many training rows, each local-search instance optimizes
// against a fresh random subsample instead of the full set.
inline constexpr std::size_t kSmallBatchThreshold = 200;

// Individual optimization step of the memetic loop: several independent
// simplex searches over the model's packed coefficients, each candidate
// re-scored by adjusted MSE on the full training set. Never returns a model
// scoring worse than the input.
ScoredModel local_search(const ContinuedFraction& cf, const Dataset& train, Rng& rng,
                         const MAConfig& config);

} // namespace cfr
