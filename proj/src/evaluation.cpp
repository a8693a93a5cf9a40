#include "sanas/evaluation.hpp"

#include <algorithm>
#include <array>
#include <chrono>
#include <cmath>
#include <fstream>
#include <sstream>

#include "sanas/csv.hpp"
#include "sanas/errors.hpp"
#include "sanas/features.hpp"
#include "sanas/rng.hpp"

namespace sanas {

namespace {

// kernel size {3,5,7} and expansion ratio {3,4,6} scores by code 1..3
constexpr std::array<double, 3> kKernelScore{0.20, 0.50, 0.60};
constexpr std::array<double, 3> kExpansionScore{0.30, 0.55, 0.80};
constexpr std::array<double, kBlockCount> kBlockWeight{1.0, 1.1, 1.2, 1.3, 1.4};
constexpr double kLayerDiscount = 0.9;
constexpr double kDeceptivePenalty = 0.05;
constexpr double kRuggedAmplitude = 0.03;
constexpr std::uint64_t kRuggedTableSeed = 0x52554747u;  // fixed landscape constant

double smooth_score(const Genome& g) {
    double z = 0.5 * (g.resolution_px() - 192) / 64.0;
    for (int b = 0; b < kBlockCount; ++b) {
        double discount = 1.0;
        for (int l = 0; l < g.depth(b); ++l) {
            z += kBlockWeight[b] * discount *
                 (kKernelScore[g.kernel_code(b, l) - 1] + kExpansionScore[g.expansion_code(b, l) - 1]);
            discount *= kLayerDiscount;
        }
    }
    return z;
}

double max_smooth_score() {
    GeneArray genes{};
    genes[0] = kResolutionLevels - 1;
    for (int b = 0; b < kBlockCount; ++b) {
        genes[depth_position(b)] = kMaxDepth;
        for (int l = 0; l < kMaxLayers; ++l) {
            genes[kernel_position(b, l)] = kCodeCount;
            genes[expansion_position(b, l)] = kCodeCount;
        }
    }
    static const double z = smooth_score(canonicalize(genes));
    return z;
}

// Upper-triangular sign table, generated once from a fixed seed.
const std::vector<double>& rugged_table() {
    static const std::vector<double> table = [] {
        RandomEngine rng(derive_seed(kRuggedTableSeed, "rugged-table"));
        std::vector<double> t(static_cast<std::size_t>(kFeatureCount) * kFeatureCount, 0.0);
        for (int i = 0; i < kFeatureCount; ++i)
            for (int j = i + 1; j < kFeatureCount; ++j)
                t[static_cast<std::size_t>(i) * kFeatureCount + j] =
                    rng.bernoulli(0.5) ? kRuggedAmplitude : -kRuggedAmplitude;
        return t;
    }();
    return table;
}

double rugged_term(const Genome& g) {
    std::array<double, kFeatureCount> x;
    encode_features(g, x.data());
    const auto& t = rugged_table();
    double q = 0.0;
    for (int i = 0; i < kFeatureCount; ++i) {
        if (x[i] == 0.0) continue;
        for (int j = i + 1; j < kFeatureCount; ++j)
            q += t[static_cast<std::size_t>(i) * kFeatureCount + j] * x[i] * x[j];
    }
    return q;
}

int deceptive_blocks(const Genome& g) {
    int count = 0;
    for (int b = 0; b < kBlockCount; ++b) {
        bool all_max = true;
        for (int l = 0; l < g.depth(b) && all_max; ++l)
            all_max = g.kernel_code(b, l) == kCodeCount && g.expansion_code(b, l) == kCodeCount;
        if (all_max) ++count;
    }
    return count;
}

} // namespace

const char* to_string(SyntheticVariant v) {
    switch (v) {
        case SyntheticVariant::Smooth: return "smooth";
        case SyntheticVariant::Rugged: return "rugged";
        case SyntheticVariant::Deceptive: return "deceptive";
    }
    return "smooth";
}

SyntheticVariant synthetic_variant_from_string(const std::string& s) {
    if (s == "smooth") return SyntheticVariant::Smooth;
    if (s == "rugged") return SyntheticVariant::Rugged;
    if (s == "deceptive") return SyntheticVariant::Deceptive;
    throw InvalidConfig("unknown landscape variant: " + s);
}

double synthetic_accuracy(const Genome& g, const SyntheticConfig& cfg) {
    double z = smooth_score(g);
    if (cfg.variant == SyntheticVariant::Rugged) z += rugged_term(g);
    double acc = z / max_smooth_score();
    if (cfg.variant == SyntheticVariant::Deceptive) acc -= kDeceptivePenalty * deceptive_blocks(g);
    if (cfg.sigma > 0.0) {
        RandomEngine rng(derive_seed(cfg.noise_seed, "synthetic-noise", genome_hash(g)));
        acc += cfg.sigma * rng.normal();
    }
    return std::clamp(acc, 0.0, 1.0);
}

double scalarize(double accuracy, double complexity_value, double target, double exponent) {
    if (complexity_value <= 0.0) throw NonPositiveInput("complexity value must be positive");
    if (target <= 0.0) throw NonPositiveInput("scalarization target must be positive");
    return accuracy * std::pow(complexity_value / target, exponent);
}

std::string SyntheticEvaluator::id() const {
    return std::string("synthetic-") + to_string(cfg_.variant);
}

std::vector<EvalResult> SyntheticEvaluator::evaluate(const std::vector<EvalRequest>& batch) {
    std::vector<EvalResult> out;
    out.reserve(batch.size());
    for (const auto& req : batch) {
        const auto start = std::chrono::steady_clock::now();
        EvalResult r;
        r.id = req.id;
        r.accuracy = synthetic_accuracy(decode_text(req.genome_text), cfg_);
        r.evaluator_id = id();
        r.wall_time_s = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        out.push_back(std::move(r));
    }
    return out;
}

TabularEvaluator TabularEvaluator::load(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InvalidConfig("cannot open table file: " + path);
    std::string line;
    std::size_t line_no = 0;
    std::vector<std::string> header;
    TabularEvaluator table;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty() || line[0] == '#') continue;
        auto fields = csv_split(line);
        if (header.empty()) {
            header = std::move(fields);
            if (header.size() < 2 || header[0] != "genome" || header[1] != "accuracy")
                throw ParseError(0, "table header must start with genome,accuracy");
            continue;
        }
        if (fields.size() != header.size())
            throw ParseError(line_no, "row width does not match header");
        Row row;
        try {
            row.accuracy = std::stod(fields[1]);
            for (std::size_t c = 2; c < fields.size(); ++c) row.extras[header[c]] = std::stod(fields[c]);
        } catch (const std::exception&) {
            throw ParseError(line_no, "non-numeric objective value");
        }
        const std::string key = encode_text(decode_text(fields[0]));
        if (!table.rows_.emplace(key, std::move(row)).second) throw DuplicateKey(key);
    }
    if (header.empty()) throw ParseError(0, "empty table file");
    return table;
}

std::string TabularEvaluator::id() const { return "tabular"; }

std::vector<EvalResult> TabularEvaluator::evaluate(const std::vector<EvalRequest>& batch) {
    std::vector<EvalResult> out;
    out.reserve(batch.size());
    for (const auto& req : batch) {
        auto it = rows_.find(req.genome_text);
        if (it == rows_.end()) throw MissingEntry(req.genome_text);
        EvalResult r;
        r.id = req.id;
        r.accuracy = it->second.accuracy;
        r.extras = it->second.extras;
        r.evaluator_id = id();
        out.push_back(std::move(r));
    }
    return out;
}

} // namespace sanas
