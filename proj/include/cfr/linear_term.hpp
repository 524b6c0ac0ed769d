#pragma once

#include <cstddef>
#include <span>
#include <stdexcept>
#include <vector>

namespace cfr {

// One affine building block a.x + c of a fraction. Each variable carries an
// activity flag; inactive coefficients stay stored ("remembered") but never
// contribute to the value.
struct LinearTerm {
    std::vector<double> coefficients;
    std::vector<bool> active;
    double constant = 0.0;

    LinearTerm() = default;
    explicit LinearTerm(std::size_t n_vars)
        : coefficients(n_vars, 0.0), active(n_vars, false) {}

    std::size_t n_vars() const { return coefficients.size(); }

    bool operator==(const LinearTerm&) const = default;
};

inline double linear_eval(const LinearTerm& term, std::span<const double> x) {
    if (x.size() != term.coefficients.size())
        throw std::invalid_argument("linear_eval: point has " + std::to_string(x.size()) +
                                    " components, term expects " +
                                    std::to_string(term.coefficients.size()));
    double acc = term.constant;
    for (std::size_t j = 0; j < x.size(); ++j) {
        // zero coefficients are skipped so this stays bit-identical with the
        // batch evaluator, which does the same
        if (term.active[j] && term.coefficients[j] != 0.0)
            acc += term.coefficients[j] * x[j];
    }
    return acc;
}

} // namespace cfr
