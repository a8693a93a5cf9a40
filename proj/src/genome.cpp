#include "sanas/genome.hpp"

#include <charconv>
#include <cstddef>

#include "sanas/errors.hpp"
#include "sanas/rng.hpp"

namespace sanas {

namespace {

void check_ranges(const GeneArray& raw) {
    if (raw[0] < 0 || raw[0] >= kResolutionLevels) throw OutOfRangeGene(0, raw[0]);
    for (int b = 0; b < kBlockCount; ++b) {
        const int dp = depth_position(b);
        if (raw[dp] < kMinDepth || raw[dp] > kMaxDepth) throw OutOfRangeGene(dp, raw[dp]);
        for (int l = 0; l < kMaxLayers; ++l) {
            const int kp = kernel_position(b, l);
            const int ep = expansion_position(b, l);
            if (raw[kp] < 0 || raw[kp] > kCodeCount) throw OutOfRangeGene(kp, raw[kp]);
            if (raw[ep] < 0 || raw[ep] > kCodeCount) throw OutOfRangeGene(ep, raw[ep]);
        }
    }
}

} // namespace

Genome canonicalize(const GeneArray& raw) {
    check_ranges(raw);
    Genome g{raw};
    for (int b = 0; b < kBlockCount; ++b) {
        const int d = g.genes[depth_position(b)];
        for (int l = 0; l < kMaxLayers; ++l) {
            int& k = g.genes[kernel_position(b, l)];
            int& e = g.genes[expansion_position(b, l)];
            if (l < d) {
                if (k == 0) k = 1;
                if (e == 0) e = 1;
            } else {
                k = 0;
                e = 0;
            }
        }
    }
    return g;
}

bool is_canonical(const GeneArray& raw) {
    try {
        return canonicalize(raw).genes == raw;
    } catch (const OutOfRangeGene&) {
        return false;
    }
}

std::string encode_text(const Genome& g) {
    std::string out;
    out.reserve(kGeneCount * 3);
    for (int i = 0; i < kGeneCount; ++i) {
        if (i) out.push_back('-');
        out += std::to_string(g.genes[i]);
    }
    return out;
}

Genome decode_text(const std::string& text) {
    GeneArray genes{};
    std::size_t pos = 0;
    for (int i = 0; i < kGeneCount; ++i) {
        if (i > 0) {
            if (pos >= text.size() || text[pos] != '-') throw ParseError(i, "expected '-' separator");
            ++pos;
        }
        const char* begin = text.data() + pos;
        const char* end = text.data() + text.size();
        int value = 0;
        auto [next, ec] = std::from_chars(begin, end, value);
        if (ec != std::errc() || next == begin) throw ParseError(i, "expected integer");
        pos = static_cast<std::size_t>(next - text.data());
        genes[i] = value;
    }
    if (pos != text.size()) throw ParseError(kGeneCount, "trailing characters");
    Genome g = canonicalize(genes);
    if (g.genes != genes) throw NonCanonical("decoded text violates the padding invariant");
    return g;
}

std::uint64_t genome_hash(const Genome& g) {
    return fnv1a64(encode_text(g));
}

} // namespace sanas
