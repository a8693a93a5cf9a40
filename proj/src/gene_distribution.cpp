#include "sanas/gene_distribution.hpp"

#include <algorithm>
#include <unordered_set>

#include "sanas/errors.hpp"
#include "sanas/rng.hpp"

namespace sanas {

std::size_t GeneDistribution::categories(int position) {
    if (position == 0) return kResolutionLevels;
    const int offset = (position - 1) % (1 + 2 * kMaxLayers);
    return offset == 0 ? 3 : 4;  // depth {2,3,4}; slot {absent,1,2,3}
}

namespace {

// Category index of a gene value at a position.
std::size_t category_of(int position, int value) {
    if (position == 0) return static_cast<std::size_t>(value);
    const int offset = (position - 1) % (1 + 2 * kMaxLayers);
    return offset == 0 ? static_cast<std::size_t>(value - kMinDepth) : static_cast<std::size_t>(value);
}

} // namespace

GeneDistribution mine_frequencies(const std::vector<Genome>& genomes) {
    if (genomes.empty()) throw InvalidConfig("cannot mine frequencies from an empty set");
    GeneDistribution dist;
    dist.raw.resize(kGeneCount);
    dist.smoothed.resize(kGeneCount);
    for (int pos = 0; pos < kGeneCount; ++pos) {
        const std::size_t cats = GeneDistribution::categories(pos);
        std::vector<double> counts(cats, 0.0);
        for (const auto& g : genomes) counts[category_of(pos, g.genes[pos])] += 1.0;
        const double n = static_cast<double>(genomes.size());
        dist.raw[pos].resize(cats);
        dist.smoothed[pos].resize(cats);
        for (std::size_t c = 0; c < cats; ++c) {
            dist.raw[pos][c] = counts[c] / n;
            dist.smoothed[pos][c] = (counts[c] + 1.0) / (n + static_cast<double>(cats));
        }
    }
    return dist;
}

namespace {

// Draw a category from the smoothed row restricted to `allowed` category
// indices; uniform over `allowed` when the restricted mass vanishes.
std::size_t draw_masked(const std::vector<double>& row, const std::vector<std::size_t>& allowed,
                        RandomEngine& rng) {
    double total = 0.0;
    for (std::size_t c : allowed) total += row[c];
    if (total <= 0.0) return allowed[rng.below(allowed.size())];
    double u = rng.real01() * total;
    for (std::size_t c : allowed) {
        u -= row[c];
        if (u < 0.0) return c;
    }
    return allowed.back();
}

std::vector<std::size_t> value_categories(int position, const std::vector<int>& values) {
    std::vector<std::size_t> cats;
    cats.reserve(values.size());
    for (int v : values) cats.push_back(category_of(position, v));
    return cats;
}

} // namespace

std::vector<Genome> transfer_init(const GeneDistribution& dist, int n, std::uint64_t seed,
                                  const SearchSpace* space) {
    if (dist.smoothed.size() != static_cast<std::size_t>(kGeneCount))
        throw InvalidConfig("distribution must cover all gene positions");
    RandomEngine rng(derive_seed(seed, "transfer-init"));

    // Allowed category indices per position (space restriction or full sets).
    std::vector<std::size_t> res_cats;
    if (space) {
        res_cats = value_categories(0, space->resolution_indices());
    } else {
        for (int r = 0; r < kResolutionLevels; ++r) res_cats.push_back(static_cast<std::size_t>(r));
    }

    auto sample_one = [&]() {
        Genome g{};
        g.genes[0] = static_cast<int>(draw_masked(dist.smoothed[0], res_cats, rng));
        for (int b = 0; b < kBlockCount; ++b) {
            std::vector<std::size_t> depth_cats, kernel_cats, expansion_cats;
            if (space) {
                depth_cats = value_categories(depth_position(b), space->block(b).depths);
                kernel_cats = value_categories(kernel_position(b, 0), space->block(b).kernel_codes);
                expansion_cats = value_categories(expansion_position(b, 0), space->block(b).expansion_codes);
            } else {
                depth_cats = {0, 1, 2};
                kernel_cats = {1, 2, 3};  // active codes; category 0 is "absent"
                expansion_cats = {1, 2, 3};
            }
            const int dp = depth_position(b);
            const int d = static_cast<int>(draw_masked(dist.smoothed[dp], depth_cats, rng)) + kMinDepth;
            g.genes[dp] = d;
            for (int l = 0; l < d; ++l) {
                g.genes[kernel_position(b, l)] =
                    static_cast<int>(draw_masked(dist.smoothed[kernel_position(b, l)], kernel_cats, rng));
                g.genes[expansion_position(b, l)] =
                    static_cast<int>(draw_masked(dist.smoothed[expansion_position(b, l)], expansion_cats, rng));
            }
        }
        return canonicalize(g.genes);
    };

    std::vector<Genome> out;
    out.reserve(static_cast<std::size_t>(n));
    std::unordered_set<std::uint64_t> seen;
    for (int i = 0; i < n; ++i) {
        Genome g = sample_one();
        for (int attempt = 0; attempt < 100 && seen.contains(genome_hash(g)); ++attempt) g = sample_one();
        seen.insert(genome_hash(g));
        out.push_back(g);
    }
    return out;
}

} // namespace sanas
