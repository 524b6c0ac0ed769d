#include "cfr/continued_fraction.hpp"

#include <cmath>
#include <stdexcept>

namespace cfr {

EvalOutcome ContinuedFraction::evaluate(std::span<const double> x) const {
    if (x.size() != n_vars)
        throw std::invalid_argument("evaluate: point has " + std::to_string(x.size()) +
                                    " components, model expects " + std::to_string(n_vars));
    // bottom-up: r <- g_depth, then r <- g_i + h_i / r for i = depth-1 .. 0
    double r = linear_eval(terms[2 * depth], x);
    if (!std::isfinite(r)) return EvalOutcome::non_finite();
    for (std::size_t i = depth; i-- > 0;) {
        if (std::abs(r) < kPoleGuard) return EvalOutcome::non_finite();
        r = linear_eval(terms[2 * i], x) + linear_eval(terms[2 * i + 1], x) / r;
        if (!std::isfinite(r)) return EvalOutcome::non_finite();
    }
    return EvalOutcome::of(r);
}

ContinuedFraction ContinuedFraction::convergent(std::size_t k) const {
    if (k > depth)
        throw std::invalid_argument("convergent: k=" + std::to_string(k) +
                                    " exceeds depth " + std::to_string(depth));
    ContinuedFraction out;
    out.n_vars = n_vars;
    out.depth = k;
    out.terms.assign(terms.begin(), terms.begin() + static_cast<std::ptrdiff_t>(2 * k + 1));
    out.whitelist = whitelist;
    return out;
}

std::vector<std::size_t> ContinuedFraction::used_variables() const {
    std::vector<std::size_t> used;
    for (std::size_t j = 0; j < n_vars; ++j) {
        for (const auto& term : terms) {
            if (term.active[j] && term.coefficients[j] != 0.0) {
                used.push_back(j);
                break;
            }
        }
    }
    return used;
}

std::size_t ContinuedFraction::used_variable_count() const {
    std::size_t count = 0;
    for (std::size_t j = 0; j < n_vars; ++j) {
        for (const auto& term : terms) {
            if (term.active[j] && term.coefficients[j] != 0.0) {
                ++count;
                break;
            }
        }
    }
    return count;
}

ContinuedFraction random_fraction(std::size_t n_vars, std::size_t depth, Rng& rng,
                                  double coeff_lo, double coeff_hi, double whitelist_p) {
    ContinuedFraction cf(n_vars, depth);
    for (std::size_t j = 0; j < n_vars; ++j)
        cf.whitelist[j] = rng.bernoulli(whitelist_p);
    for (auto& term : cf.terms) {
        for (std::size_t j = 0; j < n_vars; ++j) {
            if (cf.whitelist[j]) {
                term.active[j] = true;
                term.coefficients[j] = rng.uniform(coeff_lo, coeff_hi);
            }
        }
        term.constant = rng.uniform(coeff_lo, coeff_hi);
    }
    return cf;
}

} // namespace cfr
