#include <algorithm>
#include <bit>
#include <cmath>
#include <nlohmann/json.hpp>
#include <unordered_set>

#include "sanas/errors.hpp"
#include "sanas/features.hpp"
#include "sanas/rng.hpp"
#include "sanas/surrogates.hpp"

namespace sanas {

using nlohmann::json;

const char* to_string(ModelId id) {
    switch (id) {
        case ModelId::MLP: return "MLP";
        case ModelId::CART: return "CART";
        case ModelId::RBF: return "RBF";
        case ModelId::GP: return "GP";
    }
    return "MLP";
}

ModelId model_id_from_string(const std::string& s) {
    if (s == "MLP") return ModelId::MLP;
    if (s == "CART") return ModelId::CART;
    if (s == "RBF") return ModelId::RBF;
    if (s == "GP") return ModelId::GP;
    throw InvalidConfig("unknown model id: " + s);
}

void TrainingSet::validate(std::size_t min_size) const {
    if (genomes.size() != targets.size())
        throw InvalidTrainingSet("inputs and targets differ in length");
    if (genomes.size() < min_size)
        throw InvalidTrainingSet("need at least " + std::to_string(min_size) + " points, have " +
                                 std::to_string(genomes.size()));
    for (double t : targets)
        if (!std::isfinite(t) || t < 0.0 || t > 1.0)
            throw InvalidTrainingSet("target outside [0,1]");
    std::unordered_set<std::uint64_t> seen;
    seen.reserve(genomes.size() * 2);
    for (const auto& g : genomes)
        if (!seen.insert(genome_hash(g)).second)
            throw InvalidTrainingSet("duplicate genome: " + encode_text(g));
}

std::uint64_t TrainingSet::fingerprint() const {
    std::string blob;
    blob.reserve(genomes.size() * 110);
    for (std::size_t i = 0; i < genomes.size(); ++i) {
        blob += encode_text(genomes[i]);
        blob.push_back('=');
        const auto bits = std::bit_cast<std::uint64_t>(targets[i]);
        for (int b = 0; b < 8; ++b) blob.push_back(static_cast<char>((bits >> (8 * b)) & 0xff));
        blob.push_back('\n');
    }
    return fnv1a64(blob);
}

namespace surrogate_detail {

double predict_mlp_one(const MlpParams& p, const double* features);
double predict_cart_one(const CartParams& p, const Genome& g);
double predict_rbf_one(const RbfParams& p, const double* features);
double predict_gp_one(const GpParams& p, const double* features);

} // namespace surrogate_detail

double FittedPredictor::predict_one(const Genome& g) const {
    double x[kFeatureCount];
    encode_features(g, x);
    double v = 0.0;
    switch (id) {
        case ModelId::MLP: v = surrogate_detail::predict_mlp_one(std::get<MlpParams>(params), x); break;
        case ModelId::CART: v = surrogate_detail::predict_cart_one(std::get<CartParams>(params), g); break;
        case ModelId::RBF: v = surrogate_detail::predict_rbf_one(std::get<RbfParams>(params), x); break;
        case ModelId::GP: v = surrogate_detail::predict_gp_one(std::get<GpParams>(params), x); break;
    }
    return std::clamp(v, 0.0, 1.0);
}

std::vector<double> FittedPredictor::predict(const std::vector<Genome>& genomes) const {
    std::vector<double> out(genomes.size());
    for (std::size_t i = 0; i < genomes.size(); ++i) out[i] = predict_one(genomes[i]);
    return out;
}

FittedPredictor fit_model(ModelId id, const TrainingSet& ts, std::uint64_t seed) {
    switch (id) {
        case ModelId::MLP: return fit_mlp(ts, seed);
        case ModelId::CART: return fit_cart(ts);
        case ModelId::RBF: return fit_rbf(ts);
        case ModelId::GP: return fit_gp(ts);
    }
    throw InvalidConfig("unknown model id");
}

namespace {

json matrix_to_json(const Eigen::MatrixXd& m) {
    json rows = json::array();
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        json row = json::array();
        for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back(m(i, j));
        rows.push_back(std::move(row));
    }
    return rows;
}

Eigen::MatrixXd matrix_from_json(const json& j) {
    const Eigen::Index rows = static_cast<Eigen::Index>(j.size());
    const Eigen::Index cols = rows > 0 ? static_cast<Eigen::Index>(j[0].size()) : 0;
    Eigen::MatrixXd m(rows, cols);
    for (Eigen::Index i = 0; i < rows; ++i)
        for (Eigen::Index c = 0; c < cols; ++c) m(i, c) = j[static_cast<std::size_t>(i)][static_cast<std::size_t>(c)].get<double>();
    return m;
}

json vector_to_json(const Eigen::VectorXd& v) {
    json out = json::array();
    for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back(v(i));
    return out;
}

Eigen::VectorXd vector_from_json(const json& j) {
    Eigen::VectorXd v(static_cast<Eigen::Index>(j.size()));
    for (std::size_t i = 0; i < j.size(); ++i) v(static_cast<Eigen::Index>(i)) = j[i].get<double>();
    return v;
}

json matrixf_to_json(const Eigen::MatrixXf& m) { return matrix_to_json(m.cast<double>()); }
Eigen::MatrixXf matrixf_from_json(const json& j) { return matrix_from_json(j).cast<float>(); }
json vectorf_to_json(const Eigen::VectorXf& v) { return vector_to_json(v.cast<double>()); }
Eigen::VectorXf vectorf_from_json(const json& j) { return vector_from_json(j).cast<float>(); }

} // namespace

json FittedPredictor::to_json() const {
    json j;
    j["model"] = to_string(id);
    j["fingerprint"] = training_fingerprint;
    json p;
    switch (id) {
        case ModelId::MLP: {
            const auto& m = std::get<MlpParams>(params);
            p["w1"] = matrixf_to_json(m.w1);
            p["w2"] = matrixf_to_json(m.w2);
            p["b1"] = vectorf_to_json(m.b1);
            p["b2"] = vectorf_to_json(m.b2);
            p["w3"] = vectorf_to_json(m.w3);
            p["b3"] = m.b3;
            p["degenerate"] = m.degenerate;
            p["constant"] = m.constant;
            break;
        }
        case ModelId::CART: {
            const auto& m = std::get<CartParams>(params);
            json nodes = json::array();
            for (const auto& n : m.nodes)
                nodes.push_back(json::array({n.feature, n.threshold, n.left, n.right, n.value}));
            p["nodes"] = std::move(nodes);
            break;
        }
        case ModelId::RBF: {
            const auto& m = std::get<RbfParams>(params);
            p["centers"] = matrix_to_json(m.centers);
            p["weights"] = vector_to_json(m.weights);
            p["c2"] = m.c2;
            break;
        }
        case ModelId::GP: {
            const auto& m = std::get<GpParams>(params);
            p["centers"] = matrix_to_json(m.centers);
            p["alpha"] = vector_to_json(m.alpha);
            p["length_scale"] = m.length_scale;
            p["noise"] = m.noise;
            p["target_mean"] = m.target_mean;
            p["log_marginal"] = m.log_marginal;
            break;
        }
    }
    j["params"] = std::move(p);
    return j;
}

FittedPredictor FittedPredictor::from_json(const json& j) {
    FittedPredictor out;
    out.id = model_id_from_string(j.at("model").get<std::string>());
    out.training_fingerprint = j.at("fingerprint").get<std::uint64_t>();
    const json& p = j.at("params");
    switch (out.id) {
        case ModelId::MLP: {
            MlpParams m;
            m.w1 = matrixf_from_json(p.at("w1"));
            m.w2 = matrixf_from_json(p.at("w2"));
            m.b1 = vectorf_from_json(p.at("b1"));
            m.b2 = vectorf_from_json(p.at("b2"));
            m.w3 = vectorf_from_json(p.at("w3"));
            m.b3 = p.at("b3").get<float>();
            m.degenerate = p.at("degenerate").get<bool>();
            m.constant = p.at("constant").get<float>();
            out.params = std::move(m);
            break;
        }
        case ModelId::CART: {
            CartParams m;
            for (const auto& n : p.at("nodes")) {
                CartNode node;
                node.feature = n[0].get<int>();
                node.threshold = n[1].get<double>();
                node.left = n[2].get<int>();
                node.right = n[3].get<int>();
                node.value = n[4].get<double>();
                m.nodes.push_back(node);
            }
            out.params = std::move(m);
            break;
        }
        case ModelId::RBF: {
            RbfParams m;
            m.centers = matrix_from_json(p.at("centers"));
            m.weights = vector_from_json(p.at("weights"));
            m.c2 = p.at("c2").get<double>();
            out.params = std::move(m);
            break;
        }
        case ModelId::GP: {
            GpParams m;
            m.centers = matrix_from_json(p.at("centers"));
            m.alpha = vector_from_json(p.at("alpha"));
            m.length_scale = p.at("length_scale").get<double>();
            m.noise = p.at("noise").get<double>();
            m.target_mean = p.at("target_mean").get<double>();
            m.log_marginal = p.at("log_marginal").get<double>();
            out.params = std::move(m);
            break;
        }
    }
    return out;
}

} // namespace sanas
