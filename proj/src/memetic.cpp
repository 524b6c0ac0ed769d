#include "cfr/memetic.hpp"

#include <algorithm>
#include <chrono>
#include <utility>

namespace cfr {

Population init_population(std::size_t n_vars, const Dataset& train, const MAConfig& config,
                           Rng& rng) {
    if (train.n == 0)
        throw std::invalid_argument("init_population: empty training set");
    EvalBlock block(train);
    GuidingFunction guiding(block, config.delta);

    Population pop;
    for (auto& agent : pop.agents) {
        ContinuedFraction current = random_fraction(n_vars, config.depth, rng, config.coeff_lo,
                                                    config.coeff_hi, config.whitelist_p);
        ContinuedFraction pocket = random_fraction(n_vars, config.depth, rng, config.coeff_lo,
                                                   config.coeff_hi, config.whitelist_p);
        agent.current = ScoredModel{std::move(current), 0.0};
        agent.pocket = ScoredModel{std::move(pocket), 0.0};
        agent.current.guiding = guiding(agent.current.model);
        agent.pocket.guiding = guiding(agent.pocket.model);
        maintain_invariant(agent);
    }
    return pop;
}

void maintain_invariant(Agent& agent) {
    if (agent.current.guiding < agent.pocket.guiding)
        std::swap(agent.pocket, agent.current);
}

void propagate_pockets(Population& pop) {
    bool changed = true;
    while (changed) {
        changed = false;
        for (std::size_t i = 1; i < Population::kAgents; ++i) {
            Agent& child = pop.agents[i];
            Agent& parent = pop.agents[Population::parent(i)];
            if (child.pocket.guiding < parent.pocket.guiding) {
                std::swap(child.pocket, parent.pocket);
                changed = true;
            }
        }
    }
}

void enforce_invariants(Population& pop) {
    // a pocket swap can leave an agent holding a current that beats its new
    // pocket, so alternate both passes until a full sweep is clean
    bool changed = true;
    while (changed) {
        changed = false;
        for (auto& agent : pop.agents) {
            if (agent.current.guiding < agent.pocket.guiding) {
                std::swap(agent.pocket, agent.current);
                changed = true;
            }
        }
        for (std::size_t i = 1; i < Population::kAgents; ++i) {
            Agent& child = pop.agents[i];
            Agent& parent = pop.agents[Population::parent(i)];
            if (child.pocket.guiding < parent.pocket.guiding) {
                std::swap(child.pocket, parent.pocket);
                changed = true;
            }
        }
    }
}

void mutate_population(Population& pop, double rate, const GuidingFunction& guiding, Rng& rng) {
    // pockets are the population's memory and are never mutated
    for (auto& agent : pop.agents) {
        if (!rng.bernoulli(rate)) continue;
        const double gc = agent.current.guiding;
        const double gp = agent.pocket.guiding;
        const bool major = gc < 1.2 * gp || gc > 2.0 * gp;
        if (major)
            toggle_variables(agent.current.model, rng);
        else
            modify_variable(agent.current.model, rng);
        agent.current.guiding = guiding(agent.current.model);
    }
}

void recombine_population(Population& pop, const GuidingFunction& guiding, Rng& rng) {
    auto set_current = [&](std::size_t idx, ContinuedFraction child) {
        pop.agents[idx].current.guiding = guiding(child);
        pop.agents[idx].current.model = std::move(child);
    };
    // four subpopulations, processed top-down; each step sees the updates of
    // the previous ones
    for (std::size_t leader = 0; leader < 4; ++leader) {
        const auto [s1, s2, s3] = Population::children(leader);
        set_current(leader, recombine(pop.agents[leader], pop.agents[s1], rng));
        set_current(s3, recombine(pop.agents[s3], pop.agents[leader], rng));
        set_current(s1, recombine(pop.agents[s1], pop.agents[s2], rng));
        set_current(s2, recombine(pop.agents[s2], pop.agents[s3], rng));
    }
}

RunResult run(const Dataset& train, const Dataset& test, const MAConfig& config,
              const GenerationHooks* hooks) {
    if (train.n == 0 || test.n == 0)
        throw std::invalid_argument("run: train and test must be non-empty");
    if (train.d != test.d)
        throw std::invalid_argument("run: train and test have different widths");

    const auto t0 = std::chrono::steady_clock::now();
    Rng rng(config.seed);
    EvalBlock train_block(train);
    GuidingFunction guiding(train_block, config.delta);

    Population pop = init_population(train.d, train, config, rng);
    enforce_invariants(pop);

    ScoredModel best = pop.agents[0].pocket;
    int stall = 0;

    RunResult result;
    result.seed = config.seed;
    result.trace.reserve(static_cast<std::size_t>(std::max(config.generations, 0)));

    for (int gen = 1; gen <= config.generations; ++gen) {
        mutate_population(pop, config.mutation_rate, guiding, rng);
        if (hooks && hooks->after_mutation) hooks->after_mutation(pop);

        recombine_population(pop, guiding, rng);

        for (std::size_t i = 0; i < Population::kAgents; ++i) {
            Rng search_rng(Rng::derive(config.seed, static_cast<std::uint64_t>(gen), i));
            pop.agents[i].current =
                local_search(pop.agents[i].current.model, train, search_rng, config);
        }

        enforce_invariants(pop);

        if (stall >= config.root_reset_stagnation) {
            // the reigning best has gone stale: evict the root pocket and seed
            // a fresh random model in its place; currents stay intact, so the
            // pocket pass below routes the newcomer down the tree (it survives
            // as a pocket somewhere instead of being clobbered by the next
            // recombination) while the best child pocket takes the root
            ContinuedFraction fresh = random_fraction(train.d, config.depth, rng, config.coeff_lo,
                                                      config.coeff_hi, config.whitelist_p);
            pop.agents[0].pocket.guiding = guiding(fresh);
            pop.agents[0].pocket.model = std::move(fresh);
            propagate_pockets(pop);
            enforce_invariants(pop);
            stall = 0;
        }

        if (pop.agents[0].pocket.guiding < best.guiding) {
            best = pop.agents[0].pocket;
            stall = 0;
        } else {
            ++stall;
        }
        result.trace.push_back(best.guiding);

        if (hooks && hooks->after_generation) hooks->after_generation(pop, best, gen);
    }

    result.best = best;
    result.n_vars_used = best.model.used_variable_count();

    const Metrics on_train = compute_metrics(best.model, train, config.delta);
    result.train_mse = on_train.mse;
    result.train_nmse = on_train.nmse;
    const Metrics on_test = compute_metrics(best.model, test, config.delta);
    result.test_mse = on_test.mse;
    result.test_nmse = on_test.nmse;

    result.wall_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return result;
}

} // namespace cfr
