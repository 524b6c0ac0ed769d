#pragma once

#include <string>
#include <utility>
#include <vector>

namespace cfr {

// algorithm x dataset error matrix (row-major; NaN marks a missing cell).
struct ErrorTable {
    std::vector<std::string> algorithms;
    std::vector<std::string> datasets;
    std::vector<double> errors;

    double at(std::size_t a, std::size_t d) const { return errors[a * datasets.size() + d]; }
};

// One step curve per algorithm: x is the percent relative error difference
// to the per-dataset best, y the fraction of datasets at or below x.
struct ProfileCurve {
    std::string algorithm;
    std::vector<std::pair<double, double>> points;
};

// Throws on missing cells (naming algorithm and dataset) and on a
// non-positive per-dataset best.
std::vector<ProfileCurve> performance_profiles(const ErrorTable& table);

} // namespace cfr
