#pragma once

#include <cstdint>

#include "cfr/nelder_mead.hpp"

namespace cfr {

// Run parameters of the memetic algorithm. Defaults are the experiment
// settings the whole benchmark harness uses.
struct MAConfig {
    double delta = 0.10;            // complexity penalty scale
    std::size_t depth = 4;          // fraction depth
    int root_reset_stagnation = 5;  // generations without improvement before root reset
    int generations = 200;
    double mutation_rate = 0.10;    // per agent per generation
    int nm_instances = 4;           // independent local searches per model
    int nm_iterations = 250;
    int nm_stagnation = 10;
    double subsample_fraction = 0.20;
    double coeff_lo = -3.0;
    double coeff_hi = 3.0;
    double whitelist_p = 1.0 / 3.0;
    std::uint64_t seed = 0;

    NMConfig nelder_mead() const {
        NMConfig nm;
        nm.max_iterations = nm_iterations;
        nm.stagnation_limit = nm_stagnation;
        return nm;
    }
};

} // namespace cfr
