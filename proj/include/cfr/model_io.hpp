#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "cfr/continued_fraction.hpp"

namespace cfr {

// A model plus the seed that produced it, as stored in the text document.
struct ModelDocument {
    ContinuedFraction model;
    std::uint64_t seed = 0;
};

// Self-describing text format; round-trips every field bit-exactly.
std::string serialize(const ContinuedFraction& cf, std::uint64_t seed = 0);

// Throws std::runtime_error with the offending line number on malformed
// input.
ModelDocument deserialize(const std::string& text);

ModelDocument read_model_file(const std::string& path);
void write_model_file(const ContinuedFraction& cf, std::uint64_t seed, const std::string& path);

// Nested-fraction rendering with only the active nonzero coefficients shown.
// Falls back to x0, x1, ... when no names are given.
std::string render_formula(const ContinuedFraction& cf,
                           const std::vector<std::string>& names = {});
std::string render_latex(const ContinuedFraction& cf, const std::vector<std::string>& names = {});

} // namespace cfr
