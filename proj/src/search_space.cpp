#include "sanas/search_space.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>

#include "sanas/errors.hpp"

namespace sanas {

namespace {

std::vector<int> sorted_unique(std::vector<int> v) {
    std::sort(v.begin(), v.end());
    v.erase(std::unique(v.begin(), v.end()), v.end());
    return v;
}

void require_subset(const std::vector<int>& v, int lo, int hi, const char* what) {
    if (v.empty()) throw InvalidConfig(std::string(what) + " choice set is empty");
    for (int x : v)
        if (x < lo || x > hi) throw InvalidConfig(std::string(what) + " choice " + std::to_string(x) + " outside [" + std::to_string(lo) + "," + std::to_string(hi) + "]");
}

int snap(int value, const std::vector<int>& choices) {
    int best = choices.front();
    int best_gap = std::abs(value - best);
    for (int c : choices) {
        const int gap = std::abs(value - c);
        if (gap < best_gap) {  // ties keep the smaller choice (sorted order)
            best = c;
            best_gap = gap;
        }
    }
    return best;
}

bool in_set(int value, const std::vector<int>& choices) {
    return std::binary_search(choices.begin(), choices.end(), value);
}

} // namespace

SearchSpace::SearchSpace(std::vector<int> resolution_indices, std::array<BlockChoices, kBlockCount> blocks)
    : resolutions_(sorted_unique(std::move(resolution_indices))), blocks_(std::move(blocks)) {
    require_subset(resolutions_, 0, kResolutionLevels - 1, "resolution");
    for (auto& b : blocks_) {
        b.depths = sorted_unique(std::move(b.depths));
        b.kernel_codes = sorted_unique(std::move(b.kernel_codes));
        b.expansion_codes = sorted_unique(std::move(b.expansion_codes));
        require_subset(b.depths, kMinDepth, kMaxDepth, "depth");
        require_subset(b.kernel_codes, 1, kCodeCount, "kernel");
        require_subset(b.expansion_codes, 1, kCodeCount, "expansion");
    }
}

SearchSpace SearchSpace::full() {
    std::vector<int> res(kResolutionLevels);
    for (int i = 0; i < kResolutionLevels; ++i) res[i] = i;
    BlockChoices all{{2, 3, 4}, {1, 2, 3}, {1, 2, 3}};
    std::array<BlockChoices, kBlockCount> blocks;
    blocks.fill(all);
    return SearchSpace(std::move(res), std::move(blocks));
}

bool SearchSpace::contains(const Genome& g) const {
    if (!is_canonical(g)) return false;
    if (!in_set(g.resolution_index(), resolutions_)) return false;
    for (int b = 0; b < kBlockCount; ++b) {
        const auto& bc = blocks_[b];
        const int d = g.depth(b);
        if (!in_set(d, bc.depths)) return false;
        for (int l = 0; l < d; ++l) {
            if (!in_set(g.kernel_code(b, l), bc.kernel_codes)) return false;
            if (!in_set(g.expansion_code(b, l), bc.expansion_codes)) return false;
        }
    }
    return true;
}

Genome SearchSpace::sample(RandomEngine& rng) const {
    Genome g{};
    g.genes[0] = rng.pick(resolutions_);
    for (int b = 0; b < kBlockCount; ++b) {
        const auto& bc = blocks_[b];
        const int d = rng.pick(bc.depths);
        g.genes[depth_position(b)] = d;
        for (int l = 0; l < d; ++l) {
            g.genes[kernel_position(b, l)] = rng.pick(bc.kernel_codes);
            g.genes[expansion_position(b, l)] = rng.pick(bc.expansion_codes);
        }
    }
    return g;
}

Genome SearchSpace::repair(const GeneArray& raw) const {
    Genome g = canonicalize(raw);
    g.genes[0] = snap(g.genes[0], resolutions_);
    for (int b = 0; b < kBlockCount; ++b) {
        const auto& bc = blocks_[b];
        const int d = snap(g.genes[depth_position(b)], bc.depths);
        g.genes[depth_position(b)] = d;
        for (int l = 0; l < kMaxLayers; ++l) {
            int& k = g.genes[kernel_position(b, l)];
            int& e = g.genes[expansion_position(b, l)];
            if (l < d) {
                k = snap(k == 0 ? 1 : k, bc.kernel_codes);
                e = snap(e == 0 ? 1 : e, bc.expansion_codes);
            } else {
                k = 0;
                e = 0;
            }
        }
    }
    return g;
}

double SearchSpace::log10_cardinality() const {
    double total = std::log10(static_cast<double>(resolutions_.size()));
    for (const auto& bc : blocks_) {
        const double per_layer = static_cast<double>(bc.kernel_codes.size()) * static_cast<double>(bc.expansion_codes.size());
        double block_sum = 0.0;
        for (int d : bc.depths) block_sum += std::pow(per_layer, d);
        total += std::log10(block_sum);
    }
    return total;
}

std::uint64_t SearchSpace::exact_cardinality(std::uint64_t cap) const {
    std::uint64_t count = resolutions_.size();
    if (count > cap) throw SpaceTooLarge(log10_cardinality(), cap);
    for (const auto& bc : blocks_) {
        const std::uint64_t per_layer = bc.kernel_codes.size() * bc.expansion_codes.size();
        std::uint64_t block_sum = 0;
        for (int d : bc.depths) {
            std::uint64_t layers = 1;
            for (int i = 0; i < d; ++i) layers *= per_layer;
            block_sum += layers;
        }
        const unsigned __int128 wide = static_cast<unsigned __int128>(count) * block_sum;
        if (wide > cap) throw SpaceTooLarge(log10_cardinality(), cap);
        count = static_cast<std::uint64_t>(wide);
    }
    return count;
}

void SearchSpace::enumerate(const std::function<void(const Genome&)>& fn, std::uint64_t cap) const {
    exact_cardinality(cap);
    Genome g{};
    // Depth-first over blocks, codes in ascending order with the rightmost
    // slot advancing fastest → genomes appear in lexicographic gene order.
    auto visit_block = [&](auto&& self, int b) -> void {
        if (b == kBlockCount) {
            fn(g);
            return;
        }
        const auto& bc = blocks_[b];
        for (int d : bc.depths) {
            g.genes[depth_position(b)] = d;
            for (int l = 0; l < kMaxLayers; ++l) {
                g.genes[kernel_position(b, l)] = 0;
                g.genes[expansion_position(b, l)] = 0;
            }
            auto visit_slot = [&](auto&& inner, int l) -> void {
                if (l == d) {
                    self(self, b + 1);
                    return;
                }
                for (int k : bc.kernel_codes) {
                    g.genes[kernel_position(b, l)] = k;
                    for (int e : bc.expansion_codes) {
                        g.genes[expansion_position(b, l)] = e;
                        inner(inner, l + 1);
                    }
                }
                g.genes[kernel_position(b, l)] = 0;
                g.genes[expansion_position(b, l)] = 0;
            };
            visit_slot(visit_slot, 0);
        }
    };
    for (int r : resolutions_) {
        g.genes[0] = r;
        visit_block(visit_block, 0);
    }
}

} // namespace sanas
