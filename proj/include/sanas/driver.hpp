#pragma once

#include <cstdint>
#include <functional>
#include <limits>
#include <memory>
#include <nlohmann/json_fwd.hpp>
#include <optional>
#include <string>
#include <vector>

#include "sanas/archive.hpp"
#include "sanas/complexity.hpp"
#include "sanas/evaluation.hpp"
#include "sanas/gene_distribution.hpp"
#include "sanas/metrics.hpp"
#include "sanas/moea.hpp"
#include "sanas/search_space.hpp"
#include "sanas/surrogates.hpp"

namespace sanas {

struct EvaluatorConfig {
    std::string kind = "synthetic";  // synthetic | tabular | external
    SyntheticConfig synthetic;
    std::string table_path;  // tabular
    std::string command;     // external, run via /bin/sh -c
    double timeout_s = 86400.0;
    int max_retries = 3;
};

std::unique_ptr<Evaluator> make_evaluator(const EvaluatorConfig& cfg);

// Single-objective collapse: maximize accuracy * (value/target)^exponent.
struct ScalarConfig {
    double target = 0.0;  // must be positive in scalar mode
    double exponent = -0.07;
    std::string objective = "madds";
};

struct RunConfig {
    int n_init = 100;     // initial design size, >= 20
    int iterations = 30;  // surrogate iterations; 0 = initial design only
    int batch = 8;        // true evaluations per iteration
    std::uint64_t seed = 0;
    // First entry is always "accuracy"; the rest name analytic complexity
    // coordinates ("madds", "params", "latency_cpu", "latency_gpu").
    std::vector<std::string> objectives{"accuracy", "madds"};
    SearchSpace space = SearchSpace::full();
    BackboneSpec backbone;
    EvaluatorConfig evaluator;
    NsgaConfig inner;
    double hv_margin = 1.1;  // normalization box slack, > 1
    ScalarConfig scalar;
    std::string checkpoint_path;  // empty = no on-disk state
    std::string transfer_from;    // provenance of init_distribution, if any
    // Biased initial design mined from a previous run; uniform when absent.
    // Not serialized: rebuild it from transfer_from when loading configs.
    std::optional<GeneDistribution> init_distribution;

    void validate(bool scalarized = false) const;
    std::vector<std::string> complexity_names() const;  // objectives[1..]
};

struct MetricsRow {
    int iteration = 0;  // 0 = after the initial design
    int evaluations = 0;
    double hypervolume = 0.0;
    std::string model;  // empty on row 0 and stalled iterations keep the winner
    double cv_tau = std::numeric_limits<double>::quiet_NaN();
    // Rank fidelity of the surrogate on the freshly evaluated batch; NaN when
    // the iteration produced no batch or the ranking is degenerate.
    double batch_spearman = std::numeric_limits<double>::quiet_NaN();
    double batch_rmse = std::numeric_limits<double>::quiet_NaN();
    double best_scalar = std::numeric_limits<double>::quiet_NaN();  // scalar mode only
};

struct RunResult {
    Archive archive;
    HvConfig hv;  // frozen normalization box from the initial design
    std::vector<MetricsRow> metrics;
    std::vector<std::size_t> front0;  // archive indices of the final front
    std::optional<FittedPredictor> last_model;
    // Scalar mode extras: running best true scalar value per evaluation (in
    // archive insertion order) and the overall winner.
    std::vector<double> trajectory;
    std::size_t best_index = 0;
    double best_value = std::numeric_limits<double>::quiet_NaN();
};

struct RunHooks {
    // Called after each completed iteration, checkpoint already on disk.
    // Return false to stop the run early (the result stays valid).
    std::function<bool(int iteration, const Archive& archive)> continue_after;
};

RunResult run_search(const RunConfig& cfg, const RunHooks& hooks = {});
RunResult run_scalarized(const RunConfig& cfg, const RunHooks& hooks = {});

// Continue an interrupted run from its checkpoint. The supplied config must
// hash-match the one the checkpoint was written under (CorruptCheckpoint
// otherwise); all randomness is re-derived per iteration, so a resumed run
// reproduces the uninterrupted one exactly.
RunResult resume_search(const RunConfig& cfg, const std::string& checkpoint_path,
                        const RunHooks& hooks = {});
RunResult resume_scalarized(const RunConfig& cfg, const std::string& checkpoint_path,
                            const RunHooks& hooks = {});

// Greedy batch pick over surrogate-screened candidates: highest predicted
// accuracy first, then repeatedly the candidate whose minimum normalized
// Euclidean distance (complexity coordinates, divided per-coordinate by
// normalization_ranges) to everything already chosen plus the current
// archive front is largest. Ties break toward the lower candidate index.
// Throws EmptyAfterDedup when there are no candidates.
std::vector<std::size_t> subset_select(const std::vector<double>& predicted_accuracy,
                                       const std::vector<std::vector<double>>& candidate_complexities,
                                       const std::vector<std::vector<double>>& front_complexities,
                                       const std::vector<double>& normalization_ranges,
                                       int batch);

// Checkpoint file = {"payload": ..., "hash": fnv1a64(payload.dump()) hex}.
// read verifies the hash and throws CorruptCheckpoint on any damage.
void write_checkpoint_file(const std::string& path, const nlohmann::json& payload);
nlohmann::json read_checkpoint_file(const std::string& path);

} // namespace sanas
