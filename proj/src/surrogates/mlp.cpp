#include <Eigen/Core>
#include <cmath>

#include "sanas/features.hpp"
#include "sanas/rng.hpp"
#include "sanas/surrogates.hpp"

namespace sanas {

namespace {

constexpr int kHidden = 64;
constexpr int kEpochs = 300;
constexpr float kStep = 0.01f;
constexpr float kBeta1 = 0.9f, kBeta2 = 0.999f, kAdamEps = 1e-8f;

// One Adam-managed parameter block.
template <typename M>
struct AdamVar {
    M value, m, v;

    explicit AdamVar(M init) : value(std::move(init)) {
        m = M::Zero(value.rows(), value.cols());
        v = M::Zero(value.rows(), value.cols());
    }

    void step(const M& grad, float corr1, float corr2) {
        m = kBeta1 * m + (1.0f - kBeta1) * grad;
        v = kBeta2 * v + (1.0f - kBeta2) * grad.cwiseProduct(grad);
        value.array() -= kStep * (m.array() / corr1) / ((v.array() / corr2).sqrt() + kAdamEps);
    }
};

Eigen::MatrixXf he_uniform(Eigen::Index rows, Eigen::Index cols, RandomEngine& rng) {
    const float limit = std::sqrt(6.0f / static_cast<float>(cols));
    Eigen::MatrixXf w(rows, cols);
    for (Eigen::Index r = 0; r < rows; ++r)
        for (Eigen::Index c = 0; c < cols; ++c)
            w(r, c) = (2.0f * static_cast<float>(rng.real01()) - 1.0f) * limit;
    return w;
}

} // namespace

namespace surrogate_detail {

double predict_mlp_one(const MlpParams& p, const double* features) {
    if (p.degenerate) return p.constant;
    Eigen::VectorXf x(kFeatureCount);
    for (int i = 0; i < kFeatureCount; ++i) x(i) = static_cast<float>(features[i]);
    Eigen::VectorXf h1 = (p.w1 * x + p.b1).cwiseMax(0.0f);
    Eigen::VectorXf h2 = (p.w2 * h1 + p.b2).cwiseMax(0.0f);
    const float z = p.w3.dot(h2) + p.b3;
    return 1.0 / (1.0 + std::exp(-static_cast<double>(z)));
}

} // namespace surrogate_detail

FittedPredictor fit_mlp(const TrainingSet& ts, std::uint64_t seed) {
    ts.validate(2);
    const Eigen::Index n = static_cast<Eigen::Index>(ts.genomes.size());

    FittedPredictor out;
    out.id = ModelId::MLP;
    out.training_fingerprint = ts.fingerprint();

    bool constant_targets = true;
    for (double t : ts.targets)
        if (t != ts.targets[0]) { constant_targets = false; break; }
    if (constant_targets) {
        MlpParams p;
        p.w1 = Eigen::MatrixXf::Zero(kHidden, kFeatureCount);
        p.w2 = Eigen::MatrixXf::Zero(kHidden, kHidden);
        p.b1 = Eigen::VectorXf::Zero(kHidden);
        p.b2 = Eigen::VectorXf::Zero(kHidden);
        p.w3 = Eigen::VectorXf::Zero(kHidden);
        p.degenerate = true;
        p.constant = static_cast<float>(ts.targets[0]);
        out.params = std::move(p);
        return out;
    }

    Eigen::MatrixXf x(kFeatureCount, n);  // one column per sample
    Eigen::RowVectorXf y(n);
    {
        double row[kFeatureCount];
        for (Eigen::Index i = 0; i < n; ++i) {
            encode_features(ts.genomes[static_cast<std::size_t>(i)], row);
            for (int j = 0; j < kFeatureCount; ++j) x(j, i) = static_cast<float>(row[j]);
            y(i) = static_cast<float>(ts.targets[static_cast<std::size_t>(i)]);
        }
    }

    RandomEngine rng(derive_seed(seed, "mlp-init"));
    AdamVar<Eigen::MatrixXf> w1(he_uniform(kHidden, kFeatureCount, rng));
    AdamVar<Eigen::MatrixXf> w2(he_uniform(kHidden, kHidden, rng));
    AdamVar<Eigen::MatrixXf> w3(he_uniform(1, kHidden, rng));
    AdamVar<Eigen::VectorXf> b1(Eigen::VectorXf::Zero(kHidden));
    AdamVar<Eigen::VectorXf> b2(Eigen::VectorXf::Zero(kHidden));
    float b3 = 0.0f, b3_m = 0.0f, b3_v = 0.0f;

    const float inv_n = 1.0f / static_cast<float>(n);
    for (int epoch = 1; epoch <= kEpochs; ++epoch) {
        const Eigen::MatrixXf z1 = (w1.value * x).colwise() + b1.value;
        const Eigen::MatrixXf a1 = z1.cwiseMax(0.0f);
        const Eigen::MatrixXf z2 = (w2.value * a1).colwise() + b2.value;
        const Eigen::MatrixXf a2 = z2.cwiseMax(0.0f);
        const Eigen::RowVectorXf z3 = ((w3.value * a2).array() + b3).matrix();
        const Eigen::RowVectorXf p = (1.0f + (-z3.array()).exp()).inverse().matrix();

        // dMSE/dz3 through the logistic output
        const Eigen::RowVectorXf dz3 =
            ((2.0f * inv_n) * (p - y).array() * p.array() * (1.0f - p.array())).matrix();
        const Eigen::MatrixXf g_w3 = dz3 * a2.transpose();
        const float g_b3 = dz3.sum();
        const Eigen::MatrixXf da2 = w3.value.transpose() * dz3;
        const Eigen::MatrixXf dz2 = da2.cwiseProduct((z2.array() > 0.0f).cast<float>().matrix());
        const Eigen::MatrixXf g_w2 = dz2 * a1.transpose();
        const Eigen::VectorXf g_b2 = dz2.rowwise().sum();
        const Eigen::MatrixXf da1 = w2.value.transpose() * dz2;
        const Eigen::MatrixXf dz1 = da1.cwiseProduct((z1.array() > 0.0f).cast<float>().matrix());
        const Eigen::MatrixXf g_w1 = dz1 * x.transpose();
        const Eigen::VectorXf g_b1 = dz1.rowwise().sum();

        const float corr1 = 1.0f - std::pow(kBeta1, static_cast<float>(epoch));
        const float corr2 = 1.0f - std::pow(kBeta2, static_cast<float>(epoch));
        w1.step(g_w1, corr1, corr2);
        w2.step(g_w2, corr1, corr2);
        w3.step(g_w3, corr1, corr2);
        b1.step(g_b1, corr1, corr2);
        b2.step(g_b2, corr1, corr2);
        b3_m = kBeta1 * b3_m + (1.0f - kBeta1) * g_b3;
        b3_v = kBeta2 * b3_v + (1.0f - kBeta2) * g_b3 * g_b3;
        b3 -= kStep * (b3_m / corr1) / (std::sqrt(b3_v / corr2) + kAdamEps);
    }

    MlpParams p;
    p.w1 = std::move(w1.value);
    p.w2 = std::move(w2.value);
    p.w3 = w3.value.transpose();
    p.b1 = std::move(b1.value);
    p.b2 = std::move(b2.value);
    p.b3 = b3;
    out.params = std::move(p);
    return out;
}

} // namespace sanas
