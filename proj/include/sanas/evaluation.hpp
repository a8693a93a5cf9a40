#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "sanas/genome.hpp"

namespace sanas {

enum class SyntheticVariant { Smooth, Rugged, Deceptive };

const char* to_string(SyntheticVariant v);
SyntheticVariant synthetic_variant_from_string(const std::string& s);

struct SyntheticConfig {
    SyntheticVariant variant = SyntheticVariant::Smooth;
    double sigma = 0.0;           // additive Gaussian noise, 0 = none
    std::uint64_t noise_seed = 0;
};

// Closed-form training-free accuracy stand-in on [0,1]. The smooth variant is
// a discounted sum of per-layer kernel/expansion scores plus a resolution
// bonus, normalized so the maximal genome scores exactly 1. Rugged adds a
// fixed seeded pairwise-interaction perturbation; deceptive penalizes blocks
// that commit entirely to the largest kernel and expansion. Noise, when
// enabled, depends only on (noise_seed, genome), so evaluation order is
// irrelevant.
double synthetic_accuracy(const Genome& g, const SyntheticConfig& cfg = {});

// acc * (complexity / target)^exponent, the single-objective collapse.
// Throws NonPositiveInput unless complexity > 0 and target > 0.
double scalarize(double accuracy, double complexity_value, double target, double exponent = -0.07);

struct EvalRequest {
    std::uint64_t id = 0;
    std::string genome_text;
    int resolution_px = 0;
    std::vector<std::string> objectives;
};

struct EvalResult {
    std::uint64_t id = 0;
    double accuracy = 0.0;
    std::map<std::string, double> extras;
    std::string evaluator_id;
    double wall_time_s = 0.0;
};

// Order-insensitive batch contract: results carry the request id; callers
// match by id, never by position.
class Evaluator {
public:
    virtual ~Evaluator() = default;
    virtual std::string id() const = 0;
    virtual std::vector<EvalResult> evaluate(const std::vector<EvalRequest>& batch) = 0;
};

class SyntheticEvaluator final : public Evaluator {
public:
    explicit SyntheticEvaluator(SyntheticConfig cfg = {}) : cfg_(cfg) {}
    std::string id() const override;
    std::vector<EvalResult> evaluate(const std::vector<EvalRequest>& batch) override;

private:
    SyntheticConfig cfg_;
};

// Exact-match accuracy/objective table keyed by canonical genome text.
class TabularEvaluator final : public Evaluator {
public:
    // File format: header "genome,accuracy[,extra...]" then one row per
    // genome. Throws DuplicateKey on repeated genomes, ParseError on
    // malformed rows.
    static TabularEvaluator load(const std::string& path);

    std::string id() const override;
    // Throws MissingEntry for genomes absent from the table.
    std::vector<EvalResult> evaluate(const std::vector<EvalRequest>& batch) override;

    std::size_t size() const { return rows_.size(); }

private:
    struct Row {
        double accuracy;
        std::map<std::string, double> extras;
    };
    std::map<std::string, Row> rows_;
};

} // namespace sanas
