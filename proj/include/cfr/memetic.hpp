#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <stdexcept>
#include <vector>

#include "cfr/continued_fraction.hpp"
#include "cfr/dataset.hpp"
#include "cfr/local_search.hpp"
#include "cfr/ma_config.hpp"
#include "cfr/rng.hpp"
#include "cfr/scoring.hpp"

namespace cfr {

// An agent keeps two models: the pocket (its memory of the best model it has
// seen) and the current (the working solution the operators act on). The
// pocket always scores at least as well as the current.
struct Agent {
    ScoredModel pocket;
    ScoredModel current;
};

// 13 agents in a depth-3 ternary tree: agent 0 is the root, children of
// agent i are 3i+1, 3i+2, 3i+3; agents 4..12 are leaves. Good pockets flow
// upward, so after an invariant pass the root pocket is the population best.
struct Population {
    static constexpr std::size_t kAgents = 13;

    std::array<Agent, kAgents> agents;

    static std::size_t parent(std::size_t i) { return (i - 1) / 3; }
    static std::array<std::size_t, 3> children(std::size_t i) {
        return {3 * i + 1, 3 * i + 2, 3 * i + 3};
    }
    static bool is_leaf(std::size_t i) { return 3 * i + 1 >= kAgents; }
};

struct RunResult {
    ScoredModel best;
    std::vector<double> trace; // best-so-far guiding value per generation
    double train_mse = 0.0;
    double train_nmse = 0.0;
    double test_mse = 0.0;
    double test_nmse = 0.0;
    std::size_t n_vars_used = 0;
    std::uint64_t seed = 0;
    double wall_seconds = 0.0;
};

// Optional per-generation observers, used by the invariant test suite.
struct GenerationHooks {
    std::function<void(const Population&)> after_mutation;
    std::function<void(const Population&, const ScoredModel& best, int gen)> after_generation;
};

Population init_population(std::size_t n_vars, const Dataset& train, const MAConfig& config,
                           Rng& rng);

// Swaps pocket and current when the current strictly beats the pocket.
void maintain_invariant(Agent& agent);

// Bubbles strictly better pockets up the tree until no parent holds a worse
// pocket than a child.
void propagate_pockets(Population& pop);

// Alternates the two passes above until both invariants hold at once.
void enforce_invariants(Population& pop);

void mutate_population(Population& pop, double rate, const GuidingFunction& guiding, Rng& rng);

void recombine_population(Population& pop, const GuidingFunction& guiding, Rng& rng);

RunResult run(const Dataset& train, const Dataset& test, const MAConfig& config,
              const GenerationHooks* hooks = nullptr);

// ---------------------------------------------------------------------------
// Variable-selection operators. Templated on the random source so tests can
// rig the draws.

// Crossover of a.pocket with b.current: a set operator (union, intersection
// or symmetric difference) drawn at random combines the parents' used
// variables into the child whitelist; coefficients present in both parents
// blend as cof_a + r*(cof_b - cof_a)/3 with r ~ U[-1,4], ones present in a
// single parent are copied, and term constants always blend.
template <class R>
ContinuedFraction recombine(const Agent& a, const Agent& b, R& rng) {
    const ContinuedFraction& p1 = a.pocket.model;
    const ContinuedFraction& p2 = b.current.model;
    if (p1.n_vars != p2.n_vars || p1.depth != p2.depth)
        throw std::invalid_argument("recombine: parents disagree in shape");

    std::vector<bool> used1(p1.n_vars, false), used2(p1.n_vars, false);
    for (std::size_t j : p1.used_variables()) used1[j] = true;
    for (std::size_t j : p2.used_variables()) used2[j] = true;

    ContinuedFraction child(p1.n_vars, p1.depth);
    const std::size_t op = rng.uniform_index(3);
    for (std::size_t j = 0; j < p1.n_vars; ++j) {
        switch (op) {
        case 0: child.whitelist[j] = used1[j] || used2[j]; break;
        case 1: child.whitelist[j] = used1[j] && used2[j]; break;
        default: child.whitelist[j] = used1[j] != used2[j]; break;
        }
    }

    for (std::size_t t = 0; t < child.terms.size(); ++t) {
        const LinearTerm& ta = p1.terms[t];
        const LinearTerm& tb = p2.terms[t];
        LinearTerm& tc = child.terms[t];
        for (std::size_t j = 0; j < child.n_vars; ++j) {
            if (!child.whitelist[j]) continue;
            const bool in_a = ta.active[j];
            const bool in_b = tb.active[j];
            if (in_a && in_b) {
                const double r = rng.uniform(-1.0, 4.0);
                tc.coefficients[j] =
                    ta.coefficients[j] + r * (tb.coefficients[j] - ta.coefficients[j]) / 3.0;
                tc.active[j] = true;
            } else if (in_a) {
                tc.coefficients[j] = ta.coefficients[j];
                tc.active[j] = true;
            } else if (in_b) {
                tc.coefficients[j] = tb.coefficients[j];
                tc.active[j] = true;
            }
        }
        const double r = rng.uniform(-1.0, 4.0);
        tc.constant = ta.constant + r * (tb.constant - ta.constant) / 3.0;
    }
    return child;
}

// Major mutation: one variable is toggled at model level across all terms.
// Turning it off either zeroes the stored coefficient ("remove") or keeps it
// ("remember") with equal probability; turning it on installs either zero or
// a fresh uniform coefficient.
template <class R>
void toggle_variables(ContinuedFraction& cf, R& rng) {
    if (cf.n_vars == 0) return;
    const std::size_t v = rng.uniform_index(cf.n_vars);
    const bool model_on = cf.whitelist[v];
    for (auto& term : cf.terms) {
        if (model_on) {
            term.active[v] = false;
            if (rng.coin())
                term.coefficients[v] = 0.0;
        } else if (!term.active[v]) {
            term.active[v] = true;
            term.coefficients[v] = rng.coin() ? 0.0 : rng.uniform(-3.0, 3.0);
        }
    }
    cf.whitelist[v] = !model_on;
}

// Soft mutation: one (term, variable) slot of a whitelisted variable is
// toggled; an active slot is zeroed, an inactive one gets a fresh uniform
// coefficient. No-op when no variable is whitelisted.
template <class R>
void modify_variable(ContinuedFraction& cf, R& rng) {
    std::vector<std::size_t> candidates;
    for (std::size_t j = 0; j < cf.n_vars; ++j)
        if (cf.whitelist[j]) candidates.push_back(j);
    if (candidates.empty()) return;
    const std::size_t v = candidates[rng.uniform_index(candidates.size())];
    LinearTerm& term = cf.terms[rng.uniform_index(cf.terms.size())];
    if (term.active[v])
        term.coefficients[v] = 0.0;
    else
        term.coefficients[v] = rng.uniform(-3.0, 3.0);
    term.active[v] = !term.active[v];
}

} // namespace cfr
