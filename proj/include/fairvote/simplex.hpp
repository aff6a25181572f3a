#pragma once

#include <span>
#include <vector>

namespace fairvote {

// Euclidean projection of v onto {w >= 0, sum w = total} by sorting and
// water-filling.
std::vector<double> project_onto_simplex(std::span<const double> v, double total = 1.0);

}  // namespace fairvote
