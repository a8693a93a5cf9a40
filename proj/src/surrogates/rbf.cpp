#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <vector>

#include "sanas/errors.hpp"
#include "sanas/features.hpp"
#include "sanas/surrogates.hpp"

namespace sanas {

namespace {

constexpr double kRidge = 1e-8;

Eigen::MatrixXd squared_distances(const Eigen::MatrixXd& x) {
    const Eigen::VectorXd sq = x.rowwise().squaredNorm();
    Eigen::MatrixXd d2 = sq.replicate(1, x.rows()) + sq.transpose().replicate(x.rows(), 1) -
                         2.0 * (x * x.transpose());
    return d2.cwiseMax(0.0);
}

double median_distance(const Eigen::MatrixXd& d2) {
    std::vector<double> d;
    d.reserve(static_cast<std::size_t>(d2.rows()) * (d2.rows() - 1) / 2);
    for (Eigen::Index i = 0; i < d2.rows(); ++i)
        for (Eigen::Index j = i + 1; j < d2.rows(); ++j) d.push_back(std::sqrt(d2(i, j)));
    const std::size_t n = d.size();
    auto mid = d.begin() + static_cast<std::ptrdiff_t>(n / 2);
    std::nth_element(d.begin(), mid, d.end());
    if (n % 2 == 1) return *mid;
    const double hi = *mid;
    const double lo = *std::max_element(d.begin(), mid);
    return 0.5 * (lo + hi);
}

} // namespace

namespace surrogate_detail {

double predict_rbf_one(const RbfParams& p, const double* features) {
    Eigen::Map<const Eigen::RowVectorXd> x(features, kFeatureCount);
    double acc = 0.0;
    for (Eigen::Index i = 0; i < p.centers.rows(); ++i) {
        const double d2 = (p.centers.row(i) - x).squaredNorm();
        acc += p.weights(i) * std::sqrt(d2 + p.c2);
    }
    return acc;
}

} // namespace surrogate_detail

FittedPredictor fit_rbf(const TrainingSet& ts) {
    ts.validate(2);
    const Eigen::Index n = static_cast<Eigen::Index>(ts.genomes.size());
    Eigen::MatrixXd x = feature_matrix(ts.genomes);
    Eigen::VectorXd y(n);
    for (Eigen::Index i = 0; i < n; ++i) y(i) = ts.targets[static_cast<std::size_t>(i)];

    const Eigen::MatrixXd d2 = squared_distances(x);
    const double c = median_distance(d2);
    const double c2 = c * c;

    Eigen::MatrixXd a = (d2.array() + c2).sqrt().matrix();
    a.diagonal().array() += kRidge;

    const Eigen::PartialPivLU<Eigen::MatrixXd> lu(a);
    const Eigen::VectorXd w = lu.solve(y);
    const double residual = (a * w - y).cwiseAbs().maxCoeff();
    const double scale = a.cwiseAbs().maxCoeff() * w.cwiseAbs().maxCoeff() + y.cwiseAbs().maxCoeff();
    if (!w.allFinite() || residual > 1e-8 * std::max(1.0, scale))
        throw SingularSystem("multiquadric kernel solve failed");

    RbfParams p;
    p.centers = std::move(x);
    p.weights = w;
    p.c2 = c2;

    FittedPredictor out;
    out.id = ModelId::RBF;
    out.training_fingerprint = ts.fingerprint();
    out.params = std::move(p);
    return out;
}

} // namespace sanas
