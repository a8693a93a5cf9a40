#pragma once

#include <cstddef>
#include <vector>

namespace sanas {

// Minimization convention throughout: smaller is better in every component.
// Accuracy-like quantities are stored negated wherever they enter an
// ObjectiveVector.
using ObjectiveVector = std::vector<double>;

// Pareto dominance: componentwise <= and < somewhere. Throws ArityMismatch.
bool dominates(const ObjectiveVector& a, const ObjectiveVector& b);

// Indices of the non-dominated subset, in input order.
std::vector<std::size_t> pareto_front_indices(const std::vector<ObjectiveVector>& points);

} // namespace sanas
