#pragma once

#include <cstddef>
#include <span>
#include <utility>
#include <vector>

#include "cfr/continued_fraction.hpp"

namespace cfr {

// Maps the free parameters of a model onto a flat vector in the order they
// appear: term 0 through 2*depth, within a term the active-variable
// coefficients by ascending variable index, then the term constant.
struct PackSlot {
    std::size_t term = 0;
    bool is_constant = false;
    std::size_t var = 0;
};

struct ParameterPacking {
    std::vector<PackSlot> slots;

    std::size_t size() const { return slots.size(); }
};

ParameterPacking make_packing(const ContinuedFraction& cf);

std::pair<std::vector<double>, ParameterPacking> pack(const ContinuedFraction& cf);

// Writes packed values back into the model (activity flags are untouched).
// Throws on a length mismatch.
void unpack_into(ContinuedFraction& cf, std::span<const double> values,
                 const ParameterPacking& packing);

ContinuedFraction unpack(const ContinuedFraction& base, std::span<const double> values,
                         const ParameterPacking& packing);

} // namespace cfr
