#include "cfr/profile.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace cfr {

std::vector<ProfileCurve> performance_profiles(const ErrorTable& table) {
    const std::size_t n_algos = table.algorithms.size();
    const std::size_t n_datasets = table.datasets.size();
    if (n_algos == 0 || n_datasets == 0)
        throw std::invalid_argument("performance_profiles: empty table");
    if (table.errors.size() != n_algos * n_datasets)
        throw std::invalid_argument("performance_profiles: matrix shape mismatch");

    for (std::size_t a = 0; a < n_algos; ++a)
        for (std::size_t d = 0; d < n_datasets; ++d)
            if (std::isnan(table.at(a, d)))
                throw std::runtime_error("performance_profiles: missing cell (" +
                                         table.algorithms[a] + ", " + table.datasets[d] + ")");

    std::vector<double> best(n_datasets);
    for (std::size_t d = 0; d < n_datasets; ++d) {
        double mn = table.at(0, d);
        for (std::size_t a = 1; a < n_algos; ++a)
            mn = std::min(mn, table.at(a, d));
        if (mn <= 0.0)
            throw std::runtime_error("performance_profiles: non-positive best error on dataset " +
                                     table.datasets[d]);
        best[d] = mn;
    }

    std::vector<ProfileCurve> curves;
    curves.reserve(n_algos);
    for (std::size_t a = 0; a < n_algos; ++a) {
        std::vector<double> tau(n_datasets);
        for (std::size_t d = 0; d < n_datasets; ++d)
            tau[d] = 100.0 * (table.at(a, d) - best[d]) / best[d];
        std::sort(tau.begin(), tau.end());

        ProfileCurve curve;
        curve.algorithm = table.algorithms[a];
        for (std::size_t i = 0; i < n_datasets; ++i) {
            // collapse duplicates: keep the last (highest) y at each x
            const double y = static_cast<double>(i + 1) / static_cast<double>(n_datasets);
            if (!curve.points.empty() && curve.points.back().first == tau[i])
                curve.points.back().second = y;
            else
                curve.points.emplace_back(tau[i], y);
        }
        curves.push_back(std::move(curve));
    }
    return curves;
}

} // namespace cfr
