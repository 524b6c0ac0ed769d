#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "cfr/continued_fraction.hpp"
#include "cfr/dataset.hpp"
#include "cfr/metrics.hpp"

namespace cfr {

// Column-major copy of a dataset, the layout the batch evaluator wants.
struct EvalBlock {
    std::size_t n = 0;
    std::size_t d = 0;
    std::vector<double> columns; // column j occupies [j*n, (j+1)*n)
    std::vector<double> targets;

    explicit EvalBlock(const Dataset& ds);

    std::span<const double> column(std::size_t j) const { return {columns.data() + j * n, n}; }
};

// Evaluates the fraction at every row of the block. Poles and non-finite
// intermediates become NaN in `out`. Produces bit-identical values to calling
// ContinuedFraction::evaluate row by row.
void predict_block(const ContinuedFraction& cf, const EvalBlock& block, std::span<double> out);

// Same, with caller-owned scratch (g and h are resized to block.n).
void predict_block(const ContinuedFraction& cf, const EvalBlock& block, std::span<double> out,
                   std::vector<double>& g, std::vector<double>& h);

// Full metric bundle of a model against a dataset.
Metrics compute_metrics(const ContinuedFraction& cf, const Dataset& ds, double delta = 0.10);

// Adjusted training MSE of a model on a fixed block -- the score the
// population minimizes. Owns scratch buffers so repeated scoring does not
// allocate; not safe to share across threads.
class GuidingFunction {
public:
    GuidingFunction(const EvalBlock& block, double delta) : block_(&block), delta_(delta) {}

    double operator()(const ContinuedFraction& cf) const;

    double delta() const { return delta_; }
    const EvalBlock& block() const { return *block_; }

private:
    const EvalBlock* block_;
    double delta_;
    mutable std::vector<double> pred_, g_, h_;
};

} // namespace cfr
