#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "sanas/driver.hpp"

namespace sanas {

// The 12,800-genome benchmark restriction used by the bundled studies: two
// resolutions and two searched blocks, the remaining blocks pinned to their
// smallest settings. Small enough to enumerate, rich enough to have a
// non-trivial accuracy/complexity trade-off.
SearchSpace reduced_space();

struct SurrogateStudyRow {
    std::string model;  // mlp | cart | rbf | gp | adaptive
    int train_size = 0;
    double mean_tau = 0.0, sd_tau = 0.0;
    double mean_spearman = 0.0, sd_spearman = 0.0;
};

// Rank-fidelity sweep on a synthetic landscape: one pool of pool_size unique
// genomes scored once; per (train_size, trial) a fresh shuffle supplies the
// training prefix and a disjoint holdout_size tail for scoring. Rows come out
// per size in fixed model order, "adaptive" last. Trials where a fit fails
// are excluded from that model's mean/sd.
std::vector<SurrogateStudyRow> surrogate_study(const SearchSpace& space, const SyntheticConfig& synth,
                                               const std::vector<int>& train_sizes, int trials,
                                               int pool_size, int holdout_size, std::uint64_t seed);

struct HvCurvePoint {
    std::string method;  // surrogate | random
    std::uint64_t seed = 0;
    int evaluations = 0;
    double hypervolume = 0.0;
};

struct HvSummaryRow {
    std::string method;
    int evaluations = 0;
    double mean_hv = 0.0, sd_hv = 0.0;
};

struct EfficiencyStudy {
    std::vector<HvCurvePoint> curves;
    std::vector<HvSummaryRow> summary;
    HvConfig hv;               // shared normalization box over the whole space
    double exhaustive_hv = 0;  // hypervolume of the space's true front
};

// Paired surrogate-vs-uniform-random comparison at equal evaluation budgets
// across `seeds` repetitions. Needs an enumerable space: the shared
// hypervolume box and the exhaustive reference front come from enumerating
// it, so curves are comparable across methods, seeds, and runs.
EfficiencyStudy efficiency_study(const RunConfig& base, int seeds);

struct AnalyzeReport {
    std::vector<std::string> objective_names;           // accuracy + complexities
    std::vector<Genome> genomes;                        // all archived designs
    std::vector<std::vector<double>> objective_values;  // aligned with names
    std::vector<std::size_t> front_rows;                // indices of the front
    GeneDistribution front_frequencies;
    // Spearman rank correlations between objective columns; unit diagonal,
    // NaN where a column is constant.
    std::vector<std::vector<double>> correlations;
};

// Post-hoc digest of a finished run directory (reads archive.csv). Throws
// MissingRunArtifacts when the archive is absent.
AnalyzeReport analyze_run(const std::string& run_dir);

} // namespace sanas
