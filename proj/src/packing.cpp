#include "cfr/packing.hpp"

#include <stdexcept>

namespace cfr {

ParameterPacking make_packing(const ContinuedFraction& cf) {
    ParameterPacking packing;
    for (std::size_t t = 0; t < cf.terms.size(); ++t) {
        const auto& term = cf.terms[t];
        for (std::size_t j = 0; j < cf.n_vars; ++j)
            if (term.active[j])
                packing.slots.push_back({t, false, j});
        packing.slots.push_back({t, true, 0});
    }
    return packing;
}

std::pair<std::vector<double>, ParameterPacking> pack(const ContinuedFraction& cf) {
    ParameterPacking packing = make_packing(cf);
    std::vector<double> values;
    values.reserve(packing.size());
    for (const auto& slot : packing.slots)
        values.push_back(slot.is_constant ? cf.terms[slot.term].constant
                                          : cf.terms[slot.term].coefficients[slot.var]);
    return {std::move(values), std::move(packing)};
}

void unpack_into(ContinuedFraction& cf, std::span<const double> values,
                 const ParameterPacking& packing) {
    if (values.size() != packing.size())
        throw std::invalid_argument("unpack: vector length " + std::to_string(values.size()) +
                                    " does not match packing size " +
                                    std::to_string(packing.size()));
    for (std::size_t i = 0; i < values.size(); ++i) {
        const auto& slot = packing.slots[i];
        if (slot.is_constant)
            cf.terms[slot.term].constant = values[i];
        else
            cf.terms[slot.term].coefficients[slot.var] = values[i];
    }
}

ContinuedFraction unpack(const ContinuedFraction& base, std::span<const double> values,
                         const ParameterPacking& packing) {
    ContinuedFraction out = base;
    unpack_into(out, values, packing);
    return out;
}

} // namespace cfr
