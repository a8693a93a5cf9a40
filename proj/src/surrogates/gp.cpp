#include <Eigen/Dense>
#include <array>
#include <cmath>

#include "sanas/errors.hpp"
#include "sanas/features.hpp"
#include "sanas/surrogates.hpp"

namespace sanas {

namespace {

constexpr std::array<double, 4> kLengthFactors{0.5, 1.0, 2.0, 4.0};
constexpr std::array<double, 2> kNoiseGrid{1e-4, 1e-2};
constexpr std::array<double, 3> kJitterLadder{1e-8, 1e-6, 1e-4};

Eigen::MatrixXd squared_distances(const Eigen::MatrixXd& x) {
    const Eigen::VectorXd sq = x.rowwise().squaredNorm();
    Eigen::MatrixXd d2 = sq.replicate(1, x.rows()) + sq.transpose().replicate(x.rows(), 1) -
                         2.0 * (x * x.transpose());
    return d2.cwiseMax(0.0);
}

} // namespace

namespace surrogate_detail {

double predict_gp_one(const GpParams& p, const double* features) {
    Eigen::Map<const Eigen::RowVectorXd> x(features, kFeatureCount);
    const double inv = 1.0 / (2.0 * p.length_scale * p.length_scale);
    double acc = 0.0;
    for (Eigen::Index i = 0; i < p.centers.rows(); ++i) {
        const double d2 = (p.centers.row(i) - x).squaredNorm();
        acc += p.alpha(i) * std::exp(-d2 * inv);
    }
    return acc + p.target_mean;
}

} // namespace surrogate_detail

FittedPredictor fit_gp(const TrainingSet& ts) {
    ts.validate(2);
    const Eigen::Index n = static_cast<Eigen::Index>(ts.genomes.size());
    Eigen::MatrixXd x = feature_matrix(ts.genomes);
    Eigen::VectorXd y(n);
    for (Eigen::Index i = 0; i < n; ++i) y(i) = ts.targets[static_cast<std::size_t>(i)];
    const double y_mean = y.mean();
    const Eigen::VectorXd yc = y.array() - y_mean;

    const Eigen::MatrixXd d2 = squared_distances(x);  // shared across the grid

    bool have_best = false;
    GpParams best;
    for (double factor : kLengthFactors) {
        const double ls = factor * std::sqrt(static_cast<double>(kFeatureCount));
        const Eigen::MatrixXd k = (-d2.array() / (2.0 * ls * ls)).exp().matrix();
        for (double noise : kNoiseGrid) {
            Eigen::LLT<Eigen::MatrixXd> llt;
            bool factored = false;
            for (double jitter : kJitterLadder) {
                Eigen::MatrixXd kn = k;
                kn.diagonal().array() += noise + jitter;
                llt.compute(kn);
                if (llt.info() == Eigen::Success) {
                    factored = true;
                    break;
                }
            }
            if (!factored) continue;

            const Eigen::VectorXd alpha = llt.solve(yc);
            double log_det = 0.0;
            const auto& l = llt.matrixLLT();
            for (Eigen::Index i = 0; i < n; ++i) log_det += std::log(l(i, i));
            const double lml = -0.5 * yc.dot(alpha) - log_det -
                               0.5 * static_cast<double>(n) * std::log(2.0 * M_PI);
            if (!std::isfinite(lml)) continue;

            if (!have_best || lml > best.log_marginal) {
                have_best = true;
                best.alpha = alpha;
                best.length_scale = ls;
                best.noise = noise;
                best.target_mean = y_mean;
                best.log_marginal = lml;
            }
        }
    }
    if (!have_best) throw SingularSystem("no kernel grid point factorized");
    best.centers = std::move(x);

    FittedPredictor out;
    out.id = ModelId::GP;
    out.training_fingerprint = ts.fingerprint();
    out.params = std::move(best);
    return out;
}

} // namespace sanas
