#include "cfr/local_search.hpp"

#include <stdexcept>

#include "cfr/nelder_mead.hpp"
#include "cfr/packing.hpp"
#include "cfr/scoring.hpp"

namespace cfr {

ScoredModel local_search(const ContinuedFraction& cf, const Dataset& train, Rng& rng,
                         const MAConfig& config) {
    if (train.n == 0)
        throw std::invalid_argument("local_search: empty training set");

    const auto [x0, packing] = pack(cf);

    EvalBlock full_block(train);
    GuidingFunction full_score(full_block, config.delta);

    ScoredModel best{cf, full_score(cf)};

    const bool small_batch = train.n > kSmallBatchThreshold;
    // without subsampling the searches would all be identical, so one run
    // stands in for all of them
    const int instances = small_batch ? config.nm_instances : 1;
    const NMConfig nm = config.nelder_mead();

    for (int s = 0; s < instances; ++s) {
        Dataset batch;
        const Dataset* objective_data = &train;
        if (small_batch) {
            batch = subsample(train, config.subsample_fraction, rng);
            objective_data = &batch;
        }
        EvalBlock block(*objective_data);
        GuidingFunction batch_score(block, config.delta);

        ContinuedFraction working = cf;
        auto objective = [&](std::span<const double> v) {
            unpack_into(working, v, packing);
            return batch_score(working);
        };
        const MinimizeResult result = minimize(objective, x0, nm);

        unpack_into(working, result.x, packing);
        const double value = full_score(working);
        if (value < best.guiding)
            best = ScoredModel{std::move(working), value};
    }
    return best;
}

} // namespace cfr
