#include "sanas/archive.hpp"

#include "sanas/errors.hpp"
#include "sanas/moea.hpp"

namespace sanas {

ObjectiveVector EvaluatedArch::min_objectives() const {
    ObjectiveVector v;
    v.reserve(1 + complexities.size());
    v.push_back(-accuracy);
    v.insert(v.end(), complexities.begin(), complexities.end());
    return v;
}

void Archive::insert(EvaluatedArch arch) {
    std::string key = encode_text(arch.genome);
    if (by_text_.contains(key)) throw DuplicateKey(key);
    by_text_.emplace(std::move(key), entries_.size());
    entries_.push_back(std::move(arch));
}

bool Archive::contains(const Genome& g) const { return by_text_.contains(encode_text(g)); }

std::vector<ObjectiveVector> Archive::min_objectives() const {
    std::vector<ObjectiveVector> out;
    out.reserve(entries_.size());
    for (const auto& e : entries_) out.push_back(e.min_objectives());
    return out;
}

std::vector<std::size_t> Archive::front_indices() const {
    if (entries_.empty()) return {};
    return nondominated_sort(min_objectives()).front();
}

} // namespace sanas
