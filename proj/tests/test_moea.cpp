#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <set>

#include "oracles.hpp"
#include "sanas/complexity.hpp"
#include "sanas/evaluation.hpp"
#include "sanas/experiments.hpp"
#include "sanas/metrics.hpp"
#include "sanas/moea.hpp"
#include "sanas/rng.hpp"

using namespace sanas;

namespace {

// true bi-objective landscape on an enumerable space
BatchObjectiveFn true_objectives() {
    return [](const std::vector<Genome>& gs) {
        std::vector<ObjectiveVector> out;
        out.reserve(gs.size());
        for (const auto& g : gs)
            out.push_back({-synthetic_accuracy(g), double(complexity(g).madds)});
        return out;
    };
}

} // namespace

TEST_CASE("duplicate points share a front") {
    std::vector<ObjectiveVector> pts{{1.0, 1.0}, {1.0, 1.0}, {0.0, 2.0}, {2.0, 2.0}};
    const auto fronts = nondominated_sort(pts);
    REQUIRE(fronts.size() == 2);
    std::set<std::size_t> f0(fronts[0].begin(), fronts[0].end());
    CHECK(f0 == std::set<std::size_t>{0, 1, 2});
    CHECK(fronts[1] == std::vector<std::size_t>{3});
}

TEST_CASE("evolution is deterministic per seed") {
    SearchSpace space = reduced_space();
    NsgaConfig cfg;
    cfg.population = 24;
    cfg.generations = 6;
    const auto fn = true_objectives();
    const auto a = evolve(space, cfg, fn, 5);
    const auto b = evolve(space, cfg, fn, 5);
    REQUIRE(a.size() == b.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
        CHECK(a[i].genome == b[i].genome);
        CHECK(a[i].objectives == b[i].objectives);
        CHECK(a[i].rank == b[i].rank);
    }
    const auto c = evolve(space, cfg, fn, 6);
    bool same = a.size() == c.size();
    if (same)
        for (std::size_t i = 0; i < a.size(); ++i) same = same && a[i].genome == c[i].genome;
    CHECK_FALSE(same);
}

TEST_CASE("population invariants") {
    SearchSpace space = reduced_space();
    NsgaConfig cfg;
    cfg.population = 32;
    cfg.generations = 4;
    int calls = 0;
    const auto base = true_objectives();
    BatchObjectiveFn counting = [&](const std::vector<Genome>& gs) {
        ++calls;
        CHECK(gs.size() == 32);
        return base(gs);
    };
    const auto pop = evolve(space, cfg, counting, 7);
    CHECK(calls == 5);  // initial population plus one offspring batch per generation
    REQUIRE(pop.size() == 32);
    for (const auto& ind : pop) {
        CHECK(space.contains(ind.genome));
        CHECK(is_canonical(ind.genome));
        // returned objectives belong to the returned genome
        CHECK(ind.objectives[0] == -synthetic_accuracy(ind.genome));
        CHECK(ind.objectives[1] == double(complexity(ind.genome).madds));
        CHECK(ind.rank >= 0);
    }
    // survivors come out sorted by (rank, crowding descending)
    for (std::size_t i = 1; i < pop.size(); ++i) {
        CHECK(pop[i].rank >= pop[i - 1].rank);
        if (pop[i].rank == pop[i - 1].rank) CHECK(pop[i].crowding <= pop[i - 1].crowding);
    }
}

TEST_CASE("zero generations returns the evaluated initial population") {
    SearchSpace space = reduced_space();
    NsgaConfig cfg;
    cfg.population = 16;
    cfg.generations = 0;
    const auto pop = evolve(space, cfg, true_objectives(), 9);
    REQUIRE(pop.size() == 16);
    // matches a fresh factor-wise sample stream: distinctness is not forced,
    // membership is
    for (const auto& ind : pop) CHECK(space.contains(ind.genome));
}

TEST_CASE("rank-0 of a full run approaches the exhaustive front") {
    SearchSpace space = reduced_space();
    std::vector<ObjectiveVector> all;
    std::vector<double> lo{1e300, 1e300}, hi{-1e300, -1e300};
    space.enumerate([&](const Genome& g) {
        ObjectiveVector v{-synthetic_accuracy(g), double(complexity(g).madds)};
        for (int j = 0; j < 2; ++j) {
            lo[j] = std::min(lo[j], v[j]);
            hi[j] = std::max(hi[j], v[j]);
        }
        all.push_back(std::move(v));
    });
    const HvConfig box = HvConfig::from_bounds(lo, hi, 1.1);
    const double exhaustive = hypervolume(all, box, 0);

    NsgaConfig cfg;  // population 100, generations 100
    const auto pop = evolve(space, cfg, true_objectives(), 1);
    std::vector<ObjectiveVector> rank0;
    for (const auto& ind : pop)
        if (ind.rank == 0) rank0.push_back(ind.objectives);
    REQUIRE(!rank0.empty());
    CHECK(hypervolume(rank0, box, 0) >= 0.90 * exhaustive);
}

TEST_CASE("scalar evolution maximizes fitness") {
    SearchSpace space = reduced_space();
    BatchScalarFn fitness = [](const std::vector<Genome>& gs) {
        std::vector<double> out;
        for (const auto& g : gs) out.push_back(synthetic_accuracy(g));
        return out;
    };
    NsgaConfig cfg;
    cfg.population = 60;
    cfg.generations = 40;
    const auto pop = evolve_scalar(space, cfg, fitness, 3);
    REQUIRE(pop.size() == 60);
    double best_true = 0.0;
    space.enumerate([&](const Genome& g) { best_true = std::max(best_true, synthetic_accuracy(g)); });
    for (const auto& ind : pop) {
        CHECK(space.contains(ind.genome));
        CHECK(ind.fitness == synthetic_accuracy(ind.genome));
    }
    // sorted best-first and the optimum of a 12,800-point space is found
    for (std::size_t i = 1; i < pop.size(); ++i) CHECK(pop[i].fitness <= pop[i - 1].fitness);
    CHECK(pop[0].fitness == doctest::Approx(best_true).epsilon(1e-12));

    const auto again = evolve_scalar(space, cfg, fitness, 3);
    for (std::size_t i = 0; i < pop.size(); ++i) CHECK(pop[i].genome == again[i].genome);
}
