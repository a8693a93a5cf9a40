#pragma once

#include <cstdint>
#include <vector>

#include "sanas/objectives.hpp"

namespace sanas {

// Hypervolume is computed in normalized coordinates: each objective is mapped
// through (v - lower) / (upper - lower) (denominator 1 when the range is
// degenerate) and measured against the equally normalized reference point.
// The reference must be the worst corner: no admissible point may exceed it
// in any coordinate; points that do are clipped out and contribute nothing.
struct HvConfig {
    std::vector<double> lower;
    std::vector<double> upper;
    ObjectiveVector reference;  // raw units

    // reference = lower + margin * (upper - lower), the usual worst corner
    // with a safety margin.
    static HvConfig from_bounds(std::vector<double> lower, std::vector<double> upper,
                                double margin = 1.1);
};

struct HvResult {
    double value = 0.0;
    double standard_error = 0.0;  // 0 for exact computations
    bool exact = true;
};

// Exact sweep for m=2, exact slicing recursion for m=3, seeded Monte Carlo
// with 10^6 samples for m>3. Empty input (or all points clipped) -> 0.
HvResult hypervolume_detail(const std::vector<ObjectiveVector>& points, const HvConfig& cfg,
                            std::uint64_t mc_seed = 0);
double hypervolume(const std::vector<ObjectiveVector>& points, const HvConfig& cfg,
                   std::uint64_t mc_seed = 0);

// The Monte Carlo estimator on its own, for cross-checking the exact paths.
HvResult hypervolume_monte_carlo(const std::vector<ObjectiveVector>& points, const HvConfig& cfg,
                                 std::uint64_t samples, std::uint64_t seed);

// Tie-corrected Kendall tau-b via the merge-sort inversion count, O(n log n).
// Throws ArityMismatch on length mismatch, AllTied when either input has no
// variation (undefined correlation), including n < 2.
double kendall_tau(const std::vector<double>& x, const std::vector<double>& y);

// Pearson correlation of fractional (average-tie) ranks. Errors as kendall_tau.
double spearman(const std::vector<double>& x, const std::vector<double>& y);

// Fractional ranks in [1, n] with tied values sharing the average rank.
std::vector<double> fractional_ranks(const std::vector<double>& v);

// Root mean squared error. Throws ArityMismatch on length mismatch or empty.
double rmse(const std::vector<double>& pred, const std::vector<double>& truth);

} // namespace sanas
