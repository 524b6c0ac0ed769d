#pragma once

#include <cstddef>
#include <limits>
#include <span>
#include <vector>

#include "cfr/linear_term.hpp"
#include "cfr/rng.hpp"

namespace cfr {

// Denominators smaller than this in magnitude count as poles.
inline constexpr double kPoleGuard = 1e-12;

// Result of evaluating a fraction at one point. Poles and overflow are
// reported through `finite` rather than exceptions, so scoring loops can
// treat them as ordinary (infinitely bad) predictions.
struct EvalOutcome {
    double value = std::numeric_limits<double>::quiet_NaN();
    bool finite = false;

    static EvalOutcome of(double v) { return {v, true}; }
    static EvalOutcome non_finite() { return {}; }
};

// Analytic continued fraction g0 + h0/(g1 + h1/(g2 + ...)) with affine
// terms. Terms are stored flat: index 2i holds g_i and index 2i+1 holds h_i,
// so a model of depth d has 2d+1 terms. The whitelist caps which variables
// may ever be active in any term.
struct ContinuedFraction {
    std::size_t n_vars = 0;
    std::size_t depth = 0;
    std::vector<LinearTerm> terms;
    std::vector<bool> whitelist;

    ContinuedFraction() = default;
    ContinuedFraction(std::size_t n_vars_, std::size_t depth_)
        : n_vars(n_vars_),
          depth(depth_),
          terms(2 * depth_ + 1, LinearTerm(n_vars_)),
          whitelist(n_vars_, false) {}

    std::size_t n_terms() const { return terms.size(); }

    LinearTerm& g(std::size_t i) { return terms[2 * i]; }
    const LinearTerm& g(std::size_t i) const { return terms[2 * i]; }
    LinearTerm& h(std::size_t i) { return terms[2 * i + 1]; }
    const LinearTerm& h(std::size_t i) const { return terms[2 * i + 1]; }

    EvalOutcome evaluate(std::span<const double> x) const;

    // Copy truncated to depth k (keeps terms 0..2k, i.e. drops h_k and
    // everything below while keeping g_k).
    ContinuedFraction convergent(std::size_t k) const;

    // Sorted indices of variables that are active with a nonzero coefficient
    // in at least one term.
    std::vector<std::size_t> used_variables() const;
    std::size_t used_variable_count() const;

    bool operator==(const ContinuedFraction&) const = default;
};

// Fresh random model: each variable enters the whitelist independently with
// probability `whitelist_p`; whitelisted variables are active in every term
// with coefficients drawn uniformly, as are all term constants.
ContinuedFraction random_fraction(std::size_t n_vars, std::size_t depth, Rng& rng,
                                  double coeff_lo = -3.0, double coeff_hi = 3.0,
                                  double whitelist_p = 1.0 / 3.0);

} // namespace cfr
