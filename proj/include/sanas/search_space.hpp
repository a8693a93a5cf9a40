#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "sanas/genome.hpp"
#include "sanas/rng.hpp"

namespace sanas {

// Allowed choices for one block. Singleton sets pin the block.
struct BlockChoices {
    std::vector<int> depths;           // subset of {2,3,4}
    std::vector<int> kernel_codes;     // subset of {1,2,3}
    std::vector<int> expansion_codes;  // subset of {1,2,3}
};

// A restriction of the full encoding: per-block choice sets plus a set of
// admissible resolution indices. Sampling, repair, and enumeration all stay
// inside the restriction.
class SearchSpace {
public:
    SearchSpace(std::vector<int> resolution_indices, std::array<BlockChoices, kBlockCount> blocks);

    static SearchSpace full();

    const std::vector<int>& resolution_indices() const { return resolutions_; }
    const BlockChoices& block(int b) const { return blocks_[b]; }

    bool contains(const Genome& g) const;

    // Factor-wise uniform: resolution, each depth, and each active-layer
    // code drawn uniformly over its choice set.
    Genome sample(RandomEngine& rng) const;

    // canonicalize() followed by snapping every gene to the nearest allowed
    // choice (ties toward the smaller value). Result is always a member.
    Genome repair(const GeneArray& raw) const;

    double log10_cardinality() const;

    // Exact member count; throws SpaceTooLarge when the count exceeds cap.
    std::uint64_t exact_cardinality(std::uint64_t cap = 1000000) const;

    // Visits every member once in deterministic lexicographic gene order.
    // Throws SpaceTooLarge when the count exceeds cap.
    void enumerate(const std::function<void(const Genome&)>& fn, std::uint64_t cap = 1000000) const;

private:
    std::vector<int> resolutions_;
    std::array<BlockChoices, kBlockCount> blocks_;
};

} // namespace sanas
