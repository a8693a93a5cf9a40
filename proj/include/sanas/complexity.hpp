#pragma once

#include <array>
#include <cstdint>
#include <string>

#include "sanas/genome.hpp"

namespace sanas {

// Affine latency proxy: milliseconds = per_madd * madds + per_layer * layers.
struct LatencyModel {
    double per_madd = 0.0;
    double per_layer = 0.0;
};

struct LatencyTable {
    LatencyModel cpu{3.0e-8, 0.25};
    LatencyModel gpu{6.0e-8, 0.5};
};

// Fixed skeleton the genome is instantiated on: stem conv, five
// inverted-bottleneck blocks, feature-mixing head, linear classifier.
struct BackboneSpec {
    int stem_channels = 16;
    std::array<int, kBlockCount> block_channels{24, 40, 80, 112, 160};
    std::array<bool, kBlockCount> block_stride2{true, true, true, false, true};
    int head_channels = 1280;
    int class_count = 1000;
    LatencyTable latency;

    // Throws InvalidConfig when any channel/class count is non-positive.
    void validate() const;
};

struct ComplexityVector {
    std::uint64_t madds = 0;
    std::uint64_t params = 0;
    double latency_cpu_ms = 0.0;
    double latency_gpu_ms = 0.0;
};

// Closed-form multiply-add / parameter counts for a canonical genome.
//
// Accounting (weights only, no bias/normalization terms):
//   stem    3×3 stride-2 conv 3→stem, counted at its output feature map;
//   layer   1×1 expand (input channels → input·ratio) at the layer's input
//           spatial size, k×k depthwise at its output size, 1×1 project to
//           the block width at its output size;
//   head    1×1 conv last-block→head at the final feature map;
//   classifier head→classes, spatial-free.
// Stride-2 maps use ceiling halving: out = (in + 1) / 2.
// Throws NonCanonical when the padding invariant is violated.
ComplexityVector complexity(const Genome& g, const BackboneSpec& spec = BackboneSpec());

// Named coordinate access: "madds", "params", "latency_cpu", "latency_gpu".
// Throws InvalidConfig for any other name.
double complexity_component(const ComplexityVector& v, const std::string& name);

} // namespace sanas
