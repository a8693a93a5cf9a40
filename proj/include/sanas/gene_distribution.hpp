#pragma once

#include <cstdint>
#include <vector>

#include "sanas/genome.hpp"
#include "sanas/search_space.hpp"

namespace sanas {

// Per-position categorical frequencies over a set of genomes.
// Categories by position: resolution index 0..16; depth {2,3,4}; layer slot
// {absent, code 1, code 2, code 3} (index 0 is the absent/padding category).
struct GeneDistribution {
    std::vector<std::vector<double>> raw;       // empirical, rows sum to 1
    std::vector<std::vector<double>> smoothed;  // Laplace alpha=1, rows sum to 1

    static std::size_t categories(int position);
};

GeneDistribution mine_frequencies(const std::vector<Genome>& genomes);

// Position-wise sampling from the smoothed rows: depth first, then the codes
// of the active slots (the absent category is masked out). When a space is
// given, rows are masked to its choice sets and renormalized (uniform
// fallback when a row's allowed mass is zero). Duplicates are resampled up
// to 100 times, then accepted.
std::vector<Genome> transfer_init(const GeneDistribution& dist, int n, std::uint64_t seed,
                                  const SearchSpace* space = nullptr);

} // namespace sanas
