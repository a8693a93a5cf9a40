#pragma once

#include <Eigen/Core>
#include <cstdint>
#include <nlohmann/json_fwd.hpp>
#include <string>
#include <variant>
#include <vector>

#include "sanas/genome.hpp"

namespace sanas {

enum class ModelId { MLP, CART, RBF, GP };

const char* to_string(ModelId id);
ModelId model_id_from_string(const std::string& s);

struct TrainingSet {
    std::vector<Genome> genomes;
    std::vector<double> targets;  // accuracies in [0,1]

    // Structural checks: matching lengths, at least min_size points, targets
    // finite in [0,1], genomes pairwise distinct. Throws InvalidTrainingSet.
    void validate(std::size_t min_size = 20) const;
    std::uint64_t fingerprint() const;
};

// -- learned parameter blocks -------------------------------------------------

// 46 -> 64 -> 64 -> 1 rectifier net with a logistic output, trained
// full-batch by Adam (step 0.01, 300 epochs) on MSE. Single precision: the
// fit is rank-fitting, not numerics-critical, and f32 matmuls are twice as
// wide on SIMD units.
struct MlpParams {
    Eigen::MatrixXf w1, w2;
    Eigen::VectorXf b1, b2, w3;
    float b3 = 0.0f;
    bool degenerate = false;  // all targets equal; predicts the constant below
    float constant = 0.0f;
};

// Binary regression tree, variance-reduction splits.
struct CartNode {
    int feature = -1;      // -1 marks a leaf
    double threshold = 0;  // go left when x[feature] <= threshold
    int left = -1, right = -1;
    double value = 0;  // leaf mean
};
struct CartParams {
    std::vector<CartNode> nodes;  // node 0 is the root
};

// Multiquadric interpolant sqrt(r^2 + c^2), c = median pairwise distance.
struct RbfParams {
    Eigen::MatrixXd centers;  // one row per training point (feature space)
    Eigen::VectorXd weights;
    double c2 = 0;  // c squared
};

// Zero-mean GP on centered targets, squared-exponential kernel.
struct GpParams {
    Eigen::MatrixXd centers;
    Eigen::VectorXd alpha;
    double length_scale = 1.0;
    double noise = 1e-4;
    double target_mean = 0.0;
    double log_marginal = 0.0;
};

struct FittedPredictor {
    ModelId id = ModelId::MLP;
    std::uint64_t training_fingerprint = 0;
    std::variant<MlpParams, CartParams, RbfParams, GpParams> params;

    // Deterministic; outputs clamped to [0,1].
    std::vector<double> predict(const std::vector<Genome>& genomes) const;
    double predict_one(const Genome& g) const;

    nlohmann::json to_json() const;
    static FittedPredictor from_json(const nlohmann::json& j);
};

FittedPredictor fit_mlp(const TrainingSet& ts, std::uint64_t seed);
FittedPredictor fit_cart(const TrainingSet& ts);
// Throws SingularSystem when the jittered kernel solve fails.
FittedPredictor fit_rbf(const TrainingSet& ts);
// Grid-searches length-scale {0.5,1,2,4}*sqrt(46) x noise {1e-4,1e-2} by log
// marginal likelihood. Throws SingularSystem after jitter escalation fails.
FittedPredictor fit_gp(const TrainingSet& ts);

FittedPredictor fit_model(ModelId id, const TrainingSet& ts, std::uint64_t seed);

struct CvScore {
    ModelId id = ModelId::MLP;
    double mean_tau = 0.0;
    double mean_rmse = 0.0;
    bool available = false;  // false when any fold fit failed
};

struct SwitchResult {
    FittedPredictor model;          // winner, refit on the full set
    std::vector<CvScore> scores;    // all four models, fixed MLP,CART,RBF,GP order
};

// 10-fold cross-validated model selection: winner = max mean Kendall-Tau,
// ties by min RMSE, then fixed order MLP < CART < RBF < GP. A fold whose
// held-out ranking is degenerate scores tau 0. Models whose fit throws are
// excluded; AllModelsFailed when none remain.
SwitchResult adaptive_switch(const TrainingSet& ts, std::uint64_t seed, int folds = 10);

} // namespace sanas
