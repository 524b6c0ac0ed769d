#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "cfr/rng.hpp"

namespace cfr {

// In-memory regression dataset: row-major feature matrix plus targets.
// Immutable after load; all derived datasets (splits, subsamples) are copies.
struct Dataset {
    std::vector<double> features; // row-major, n * d
    std::size_t n = 0;
    std::size_t d = 0;
    std::vector<double> targets;
    std::vector<std::string> feature_names;
    std::string source_name;

    std::span<const double> row(std::size_t i) const {
        return {features.data() + i * d, d};
    }

    Dataset take_rows(std::span<const std::size_t> indices) const;
};

// Loads a delimiter-separated text file with a header row. delimiter 0 means
// auto-detect (tab first, then comma). Throws std::runtime_error naming the
// offending line/column on malformed input.
Dataset load_dataset(const std::string& path, const std::string& target_column = "target",
                     char delimiter = '\0');

void save_dataset(const Dataset& ds, const std::string& path, char delimiter = '\t');

// Random 75/25-style split: a uniform permutation is drawn from rng and the
// first ceil(train_fraction * n) rows become the training set.
std::pair<Dataset, Dataset> train_test_split(const Dataset& ds, double train_fraction, Rng& rng);

// ceil(fraction * n) rows chosen uniformly without replacement.
Dataset subsample(const Dataset& ds, double fraction, Rng& rng);

} // namespace cfr
