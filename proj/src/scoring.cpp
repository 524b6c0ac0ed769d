#include "cfr/scoring.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "cfr/metrics.hpp"

namespace cfr {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

void eval_term_block(const LinearTerm& term, const EvalBlock& block, std::span<double> out) {
    for (std::size_t i = 0; i < block.n; ++i)
        out[i] = term.constant;
    for (std::size_t j = 0; j < term.coefficients.size(); ++j) {
        if (!term.active[j] || term.coefficients[j] == 0.0) continue;
        const double c = term.coefficients[j];
        const auto col = block.column(j);
        for (std::size_t i = 0; i < block.n; ++i)
            out[i] += c * col[i];
    }
}

} // namespace

EvalBlock::EvalBlock(const Dataset& ds) : n(ds.n), d(ds.d), targets(ds.targets) {
    columns.resize(n * d);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < d; ++j)
            columns[j * n + i] = ds.features[i * d + j];
}

void predict_block(const ContinuedFraction& cf, const EvalBlock& block, std::span<double> out) {
    std::vector<double> g, h;
    predict_block(cf, block, out, g, h);
}

void predict_block(const ContinuedFraction& cf, const EvalBlock& block, std::span<double> out,
                   std::vector<double>& g, std::vector<double>& h) {
    if (block.d != cf.n_vars)
        throw std::invalid_argument("predict_block: block width " + std::to_string(block.d) +
                                    " does not match model n_vars " + std::to_string(cf.n_vars));
    if (out.size() != block.n)
        throw std::invalid_argument("predict_block: output span has wrong length");

    g.resize(block.n);
    h.resize(block.n);

    eval_term_block(cf.terms[2 * cf.depth], block, out);
    for (std::size_t i = 0; i < block.n; ++i)
        if (!std::isfinite(out[i])) out[i] = kNaN;

    for (std::size_t level = cf.depth; level-- > 0;) {
        eval_term_block(cf.terms[2 * level], block, g);
        eval_term_block(cf.terms[2 * level + 1], block, h);
        for (std::size_t i = 0; i < block.n; ++i) {
            const double denom = out[i];
            // NaN fails the guard comparison and then propagates through the
            // division, so a poisoned row stays poisoned
            const double v = std::abs(denom) < kPoleGuard ? kNaN : g[i] + h[i] / denom;
            out[i] = std::isfinite(v) ? v : kNaN;
        }
    }
}

Metrics compute_metrics(const ContinuedFraction& cf, const Dataset& ds, double delta) {
    const EvalBlock block(ds);
    std::vector<double> pred(block.n);
    predict_block(cf, block, pred);
    Metrics m;
    m.n_vars_used = cf.used_variable_count();
    m.mse = mse(ds.targets, pred);
    m.nmse = nmse(ds.targets, pred);
    m.adjusted_mse = adjusted_mse(m.mse, m.n_vars_used, delta);
    return m;
}

double GuidingFunction::operator()(const ContinuedFraction& cf) const {
    pred_.resize(block_->n);
    predict_block(cf, *block_, pred_, g_, h_);
    const double m = mse(block_->targets, pred_);
    return adjusted_mse(m, cf.used_variable_count(), delta_);
}

} // namespace cfr
