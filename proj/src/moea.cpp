#include "sanas/moea.hpp"

#include <algorithm>
#include <limits>
#include <map>
#include <numeric>

#include "sanas/errors.hpp"
#include "sanas/rng.hpp"

namespace sanas {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// -1: a dominates b; +1: b dominates a; 0: incomparable or equal.
int compare_dominance(const ObjectiveVector& a, const ObjectiveVector& b) {
    if (a.size() != b.size()) throw ArityMismatch(a.size(), b.size());
    bool a_less = false, b_less = false;
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i] < b[i]) a_less = true;
        else if (b[i] < a[i]) b_less = true;
    }
    if (a_less && !b_less) return -1;
    if (b_less && !a_less) return 1;
    return 0;
}

} // namespace

std::vector<std::vector<std::size_t>> nondominated_sort(const std::vector<ObjectiveVector>& points) {
    const std::size_t n = points.size();
    std::vector<std::vector<std::size_t>> fronts;
    if (n == 0) return fronts;

    std::vector<std::vector<std::uint32_t>> dominated(n);
    std::vector<std::uint32_t> dominator_count(n, 0);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            const int rel = compare_dominance(points[i], points[j]);
            if (rel < 0) {
                dominated[i].push_back(static_cast<std::uint32_t>(j));
                ++dominator_count[j];
            } else if (rel > 0) {
                dominated[j].push_back(static_cast<std::uint32_t>(i));
                ++dominator_count[i];
            }
        }
    }

    std::vector<std::size_t> current;
    for (std::size_t i = 0; i < n; ++i)
        if (dominator_count[i] == 0) current.push_back(i);
    while (!current.empty()) {
        std::vector<std::size_t> next;
        for (std::size_t i : current)
            for (std::uint32_t j : dominated[i])
                if (--dominator_count[j] == 0) next.push_back(j);
        std::sort(next.begin(), next.end());
        fronts.push_back(std::move(current));
        current = std::move(next);
    }
    return fronts;
}

std::vector<double> crowding_distance(const std::vector<ObjectiveVector>& front) {
    const std::size_t n = front.size();
    std::vector<double> dist(n, 0.0);
    if (n == 0) return dist;
    if (n <= 2) {
        std::fill(dist.begin(), dist.end(), kInf);
        return dist;
    }

    // Distance is computed over distinct objective vectors; repeats get 0.
    std::map<ObjectiveVector, std::size_t> first_seen;
    std::vector<std::size_t> uniq;
    std::vector<std::ptrdiff_t> slot(n, -1);
    for (std::size_t i = 0; i < n; ++i) {
        auto [it, inserted] = first_seen.try_emplace(front[i], uniq.size());
        if (inserted) {
            slot[i] = static_cast<std::ptrdiff_t>(uniq.size());
            uniq.push_back(i);
        }
    }

    const std::size_t u = uniq.size();
    std::vector<double> udist(u, 0.0);
    if (u <= 2) {
        std::fill(udist.begin(), udist.end(), kInf);
    } else {
        const std::size_t m = front[0].size();
        std::vector<std::size_t> order(u);
        for (std::size_t j = 0; j < m; ++j) {
            std::iota(order.begin(), order.end(), 0);
            std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
                return front[uniq[a]][j] < front[uniq[b]][j];
            });
            const double lo = front[uniq[order.front()]][j];
            const double hi = front[uniq[order.back()]][j];
            udist[order.front()] = kInf;
            udist[order.back()] = kInf;
            const double range = hi - lo;
            if (range <= 0) continue;
            for (std::size_t k = 1; k + 1 < u; ++k) {
                const double gap = front[uniq[order[k + 1]]][j] - front[uniq[order[k - 1]]][j];
                udist[order[k]] += gap / range;
            }
        }
    }
    for (std::size_t i = 0; i < n; ++i)
        if (slot[i] >= 0) dist[i] = udist[static_cast<std::size_t>(slot[i])];
    return dist;
}

namespace {

void validate_cfg(const NsgaConfig& cfg) {
    if (cfg.population < 8 || cfg.population % 2 != 0)
        throw InvalidConfig("population must be even and at least 8");
    if (cfg.generations < 0) throw InvalidConfig("generations must be non-negative");
}

Genome mutate_and_repair(const SearchSpace& space, const NsgaConfig& cfg, Genome g, RandomEngine& rng) {
    if (rng.bernoulli(cfg.mutation_prob)) g.genes[0] = rng.pick(space.resolution_indices());
    for (int b = 0; b < kBlockCount; ++b) {
        const auto& bc = space.block(b);
        if (rng.bernoulli(cfg.mutation_prob)) g.genes[depth_position(b)] = rng.pick(bc.depths);
        for (int l = 0; l < kMaxLayers; ++l) {
            if (rng.bernoulli(cfg.mutation_prob)) g.genes[kernel_position(b, l)] = rng.pick(bc.kernel_codes);
            if (rng.bernoulli(cfg.mutation_prob)) g.genes[expansion_position(b, l)] = rng.pick(bc.expansion_codes);
        }
    }
    return space.repair(g.genes);
}

void cross_over(const NsgaConfig& cfg, Genome& a, Genome& b, RandomEngine& rng) {
    if (!rng.bernoulli(cfg.crossover_prob)) return;
    for (int i = 0; i < kGeneCount; ++i)
        if (rng.bernoulli(cfg.gene_swap_prob)) std::swap(a.genes[i], b.genes[i]);
}

std::vector<ObjectiveVector> evaluate_batch(const BatchObjectiveFn& fn, const std::vector<Genome>& gs) {
    auto objs = fn(gs);
    if (objs.size() != gs.size()) throw ArityMismatch(objs.size(), gs.size());
    return objs;
}

void annotate(std::vector<Individual>& pop) {
    std::vector<ObjectiveVector> objs(pop.size());
    for (std::size_t i = 0; i < pop.size(); ++i) objs[i] = pop[i].objectives;
    const auto fronts = nondominated_sort(objs);
    for (std::size_t f = 0; f < fronts.size(); ++f) {
        std::vector<ObjectiveVector> fo(fronts[f].size());
        for (std::size_t k = 0; k < fronts[f].size(); ++k) fo[k] = objs[fronts[f][k]];
        const auto cd = crowding_distance(fo);
        for (std::size_t k = 0; k < fronts[f].size(); ++k) {
            pop[fronts[f][k]].rank = static_cast<int>(f);
            pop[fronts[f][k]].crowding = cd[k];
        }
    }
}

// (rank asc, crowding desc); exact ties keep the first argument.
bool better(const Individual& a, const Individual& b) {
    if (a.rank != b.rank) return a.rank < b.rank;
    return a.crowding > b.crowding;
}

} // namespace

std::vector<Individual> evolve(const SearchSpace& space, const NsgaConfig& cfg,
                               const BatchObjectiveFn& objective_fn, std::uint64_t seed) {
    validate_cfg(cfg);
    RandomEngine rng(derive_seed(seed, "nsga2"));
    const std::size_t pop_size = static_cast<std::size_t>(cfg.population);

    std::vector<Individual> pop(pop_size);
    {
        std::vector<Genome> gs(pop_size);
        for (auto& g : gs) g = space.sample(rng);
        auto objs = evaluate_batch(objective_fn, gs);
        for (std::size_t i = 0; i < pop_size; ++i) pop[i] = Individual{gs[i], std::move(objs[i])};
    }
    annotate(pop);

    for (int gen = 0; gen < cfg.generations; ++gen) {
        std::vector<Genome> children;
        children.reserve(pop_size);
        auto tournament = [&]() -> const Individual& {
            const Individual& a = pop[rng.below(pop_size)];
            const Individual& b = pop[rng.below(pop_size)];
            return better(b, a) ? b : a;
        };
        while (children.size() < pop_size) {
            Genome c1 = tournament().genome;
            Genome c2 = tournament().genome;
            cross_over(cfg, c1, c2, rng);
            children.push_back(mutate_and_repair(space, cfg, c1, rng));
            children.push_back(mutate_and_repair(space, cfg, c2, rng));
        }

        auto child_objs = evaluate_batch(objective_fn, children);
        std::vector<Individual> combined = std::move(pop);
        combined.reserve(2 * pop_size);
        for (std::size_t i = 0; i < children.size(); ++i)
            combined.push_back(Individual{children[i], std::move(child_objs[i])});
        annotate(combined);

        // Elitist truncation: whole fronts while they fit, then the boundary
        // front by crowding (stable, so equal crowding keeps earlier members).
        std::vector<std::size_t> order(combined.size());
        std::iota(order.begin(), order.end(), 0);
        std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
            if (combined[a].rank != combined[b].rank) return combined[a].rank < combined[b].rank;
            return combined[a].crowding > combined[b].crowding;
        });
        pop.clear();
        pop.reserve(pop_size);
        for (std::size_t k = 0; k < pop_size; ++k) pop.push_back(std::move(combined[order[k]]));
    }
    return pop;
}

std::vector<ScalarIndividual> evolve_scalar(const SearchSpace& space, const NsgaConfig& cfg,
                                            const BatchScalarFn& fitness_fn, std::uint64_t seed) {
    validate_cfg(cfg);
    RandomEngine rng(derive_seed(seed, "scalar-ga"));
    const std::size_t pop_size = static_cast<std::size_t>(cfg.population);

    auto evaluate = [&](const std::vector<Genome>& gs) {
        auto fit = fitness_fn(gs);
        if (fit.size() != gs.size()) throw ArityMismatch(fit.size(), gs.size());
        return fit;
    };

    std::vector<ScalarIndividual> pop(pop_size);
    {
        std::vector<Genome> gs(pop_size);
        for (auto& g : gs) g = space.sample(rng);
        auto fit = evaluate(gs);
        for (std::size_t i = 0; i < pop_size; ++i) pop[i] = ScalarIndividual{gs[i], fit[i]};
    }

    for (int gen = 0; gen < cfg.generations; ++gen) {
        std::vector<Genome> children;
        children.reserve(pop_size);
        auto tournament = [&]() -> const ScalarIndividual& {
            const ScalarIndividual& a = pop[rng.below(pop_size)];
            const ScalarIndividual& b = pop[rng.below(pop_size)];
            return b.fitness > a.fitness ? b : a;
        };
        while (children.size() < pop_size) {
            Genome c1 = tournament().genome;
            Genome c2 = tournament().genome;
            cross_over(cfg, c1, c2, rng);
            children.push_back(mutate_and_repair(space, cfg, c1, rng));
            children.push_back(mutate_and_repair(space, cfg, c2, rng));
        }
        auto fit = evaluate(children);
        std::vector<ScalarIndividual> combined = std::move(pop);
        combined.reserve(2 * pop_size);
        for (std::size_t i = 0; i < children.size(); ++i)
            combined.push_back(ScalarIndividual{children[i], fit[i]});
        std::stable_sort(combined.begin(), combined.end(),
                         [](const ScalarIndividual& a, const ScalarIndividual& b) { return a.fitness > b.fitness; });
        combined.resize(pop_size);
        pop = std::move(combined);
    }

    std::stable_sort(pop.begin(), pop.end(),
                     [](const ScalarIndividual& a, const ScalarIndividual& b) { return a.fitness > b.fitness; });
    return pop;
}

} // namespace sanas
