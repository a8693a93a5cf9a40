#pragma once

#include <array>
#include <cstdint>
#include <string>

namespace sanas {

// Integer-string architecture encoding.
//
// gene[0]                 resolution index r in [0,16], input size 192 + 4*r
// per block b in [0,5):   depth gene d in {2,3,4}, then 4 layer slots of
//                         (kernel code, expansion code); codes 1..3 map to
//                         kernel sizes {3,5,7} and expansion ratios {3,4,6}.
// Slots at layer index >= d carry canonical zero padding.
inline constexpr int kGeneCount = 46;
inline constexpr int kBlockCount = 5;
inline constexpr int kMaxLayers = 4;
inline constexpr int kMinDepth = 2;
inline constexpr int kMaxDepth = 4;
inline constexpr int kResolutionLevels = 17;
inline constexpr int kResolutionBase = 192;
inline constexpr int kResolutionStep = 4;
inline constexpr int kCodeCount = 3;
inline constexpr std::array<int, 3> kKernelSizes{3, 5, 7};
inline constexpr std::array<int, 3> kExpansionRatios{3, 4, 6};

constexpr int block_base(int block) { return 1 + block * (1 + 2 * kMaxLayers); }
constexpr int depth_position(int block) { return block_base(block); }
constexpr int kernel_position(int block, int layer) { return block_base(block) + 1 + 2 * layer; }
constexpr int expansion_position(int block, int layer) { return kernel_position(block, layer) + 1; }

using GeneArray = std::array<int, kGeneCount>;

struct Genome {
    GeneArray genes{};

    int resolution_index() const { return genes[0]; }
    int resolution_px() const { return kResolutionBase + kResolutionStep * genes[0]; }
    int depth(int block) const { return genes[depth_position(block)]; }
    int kernel_code(int block, int layer) const { return genes[kernel_position(block, layer)]; }
    int expansion_code(int block, int layer) const { return genes[expansion_position(block, layer)]; }
    int kernel_size(int block, int layer) const { return kKernelSizes[kernel_code(block, layer) - 1]; }
    int expansion_ratio(int block, int layer) const { return kExpansionRatios[expansion_code(block, layer) - 1]; }
    int total_layers() const {
        int n = 0;
        for (int b = 0; b < kBlockCount; ++b) n += depth(b);
        return n;
    }

    friend bool operator==(const Genome&, const Genome&) = default;
};

// Validates per-position ranges and repairs padding: zeroes slots at index
// >= depth, promotes zero codes in active slots to code 1. Idempotent.
// Throws OutOfRangeGene if any gene is outside its code range.
Genome canonicalize(const GeneArray& raw);

bool is_canonical(const GeneArray& raw);
inline bool is_canonical(const Genome& g) { return is_canonical(g.genes); }

// Canonical text form: the 46 genes joined by '-'.
std::string encode_text(const Genome& g);

// Inverse of encode_text; throws ParseError on malformed input and
// OutOfRangeGene / NonCanonical on invalid gene values.
Genome decode_text(const std::string& text);

std::uint64_t genome_hash(const Genome& g);

} // namespace sanas
