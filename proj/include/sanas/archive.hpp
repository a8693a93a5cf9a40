#pragma once

#include <string>
#include <unordered_map>
#include <vector>

#include "sanas/genome.hpp"
#include "sanas/objectives.hpp"

namespace sanas {

struct EvaluatedArch {
    Genome genome;
    double accuracy = 0.0;                 // measured, [0,1]
    std::vector<double> complexities;      // aligned with the run's complexity objective names
    int iteration = 0;                     // 0 = initialization
    std::string evaluator_id;

    // Minimization form: negated accuracy followed by the complexities.
    ObjectiveVector min_objectives() const;
};

// Insertion-ordered, deduplicated by canonical genome text.
class Archive {
public:
    // Throws DuplicateKey when the genome is already present.
    void insert(EvaluatedArch arch);

    bool contains(const Genome& g) const;
    std::size_t size() const { return entries_.size(); }
    const EvaluatedArch& at(std::size_t i) const { return entries_[i]; }
    const std::vector<EvaluatedArch>& entries() const { return entries_; }

    std::vector<ObjectiveVector> min_objectives() const;
    // Indices of the non-dominated entries, in insertion order.
    std::vector<std::size_t> front_indices() const;

private:
    std::vector<EvaluatedArch> entries_;
    std::unordered_map<std::string, std::size_t> by_text_;
};

} // namespace sanas
