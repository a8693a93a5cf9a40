#pragma once

#include <Eigen/Core>
#include <vector>

#include "sanas/genome.hpp"

namespace sanas {

// Surrogate input encoding: every gene min-max normalized to [0,1] by its
// per-position range; canonical zero padding maps to 0.
//   resolution r/16, depth (d-2)/2, layer codes c/3.
inline constexpr int kFeatureCount = kGeneCount;

inline void encode_features(const Genome& g, double* out) {
    out[0] = g.genes[0] / 16.0;
    for (int b = 0; b < kBlockCount; ++b) {
        out[depth_position(b)] = (g.genes[depth_position(b)] - kMinDepth) / 2.0;
        for (int l = 0; l < kMaxLayers; ++l) {
            out[kernel_position(b, l)] = g.genes[kernel_position(b, l)] / 3.0;
            out[expansion_position(b, l)] = g.genes[expansion_position(b, l)] / 3.0;
        }
    }
}

// One row per genome.
inline Eigen::MatrixXd feature_matrix(const std::vector<Genome>& gs) {
    Eigen::MatrixXd x(static_cast<Eigen::Index>(gs.size()), kFeatureCount);
    std::vector<double> row(kFeatureCount);
    for (std::size_t i = 0; i < gs.size(); ++i) {
        encode_features(gs[i], row.data());
        for (int j = 0; j < kFeatureCount; ++j) x(static_cast<Eigen::Index>(i), j) = row[j];
    }
    return x;
}

} // namespace sanas
