#include "fairvote/simplex.hpp"

#include <algorithm>
#include <functional>
#include <stdexcept>

namespace fairvote {

std::vector<double> project_onto_simplex(std::span<const double> v, double total) {
  if (v.empty()) throw std::invalid_argument("projection of an empty vector");
  if (total < 0.0) throw std::invalid_argument("negative simplex total");
  std::vector<double> out(v.size(), 0.0);
  if (total == 0.0) return out;

  std::vector<double> sorted(v.begin(), v.end());
  std::sort(sorted.begin(), sorted.end(), std::greater<>());
  double running = 0.0;
  double tau = 0.0;
  for (std::size_t j = 0; j < sorted.size(); ++j) {
    running += sorted[j];
    const double candidate = (running - total) / static_cast<double>(j + 1);
    if (sorted[j] - candidate > 0.0) tau = candidate;
  }
  for (std::size_t a = 0; a < v.size(); ++a) out[a] = std::max(v[a] - tau, 0.0);
  return out;
}

}  // namespace fairvote
