#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "sanas/genome.hpp"
#include "sanas/objectives.hpp"
#include "sanas/search_space.hpp"

namespace sanas {

struct Individual {
    Genome genome;
    ObjectiveVector objectives;
    int rank = 0;
    double crowding = 0.0;
};

// Batch evaluation: one call per generation, results positionally aligned.
using BatchObjectiveFn = std::function<std::vector<ObjectiveVector>(const std::vector<Genome>&)>;
using BatchScalarFn = std::function<std::vector<double>(const std::vector<Genome>&)>;

struct NsgaConfig {
    int population = 100;   // even, >= 8
    int generations = 100;
    double crossover_prob = 0.9;
    double gene_swap_prob = 0.5;
    double mutation_prob = 1.0 / kGeneCount;
};

// Deb's fast non-dominated sort. Fronts partition 0..n-1; front 0 is the
// Pareto set of the input.
std::vector<std::vector<std::size_t>> nondominated_sort(const std::vector<ObjectiveVector>& points);

// NSGA-II crowding: per-objective sweep over the distinct objective vectors,
// extremes +inf, interior values summed as normalized neighbor gaps
// (zero-range objectives contribute 0). Re-occurrences of an identical
// objective vector get 0.
std::vector<double> crowding_distance(const std::vector<ObjectiveVector>& front);

// Standard elitist NSGA-II over the given space: binary tournament on
// (rank, crowding), per-gene uniform crossover, per-gene reset mutation,
// children repaired into the space. generations = 0 returns the evaluated
// initial population. Deterministic per seed.
std::vector<Individual> evolve(const SearchSpace& space, const NsgaConfig& cfg,
                               const BatchObjectiveFn& objective_fn, std::uint64_t seed);

// Single-objective variant (maximization) used by the scalarized mode: same
// variation operators, tournament and elitist truncation on fitness.
struct ScalarIndividual {
    Genome genome;
    double fitness = 0.0;
};
std::vector<ScalarIndividual> evolve_scalar(const SearchSpace& space, const NsgaConfig& cfg,
                                            const BatchScalarFn& fitness_fn, std::uint64_t seed);

} // namespace sanas
