#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "fairvote/distribution.hpp"
#include "fairvote/profile.hpp"
#include "fairvote/utility.hpp"

namespace fairvote {

struct Witness {
  std::string name;
  UtilityProfile utilities;
  Distribution deviation;
};

struct FixtureBundle {
  std::string family;
  PreferenceProfile profile;
  std::vector<Witness> witnesses;
  double claimed_bound = 0.0;
  std::string bound_formula;
};

// n = s^2 agents, m = n + s alternatives. Agent i (1-based) ranks a_i first
// and a_{n + ceil(i/s)} second; the rest follow cyclically. One witness per
// group r: group r approves its top two, everyone else only their top.
FixtureBundle gen_sqrt_lb(std::int64_t n);

// The witness for a given x: the group whose second choice x funds least.
std::size_t sqrt_lb_witness_index(const FixtureBundle& bundle, const Distribution& x);

// n = 2^(k-1) agents over m = 2^k - 1 alternatives in k rank layers.
// Witness l approves each agent's top l, deviating to the uniform
// distribution over the layer-l alternatives.
FixtureBundle gen_nash_lb(std::size_t k);

enum class CyclicWitness { Approval, UnitSum };

// n = m - 1 agents; a_1 sits at rank r in every ballot and the other
// alternatives rotate through the remaining positions. The witness values
// each agent's top `width` alternatives (1 each, or 1/width each), deviating
// to a_1.
FixtureBundle gen_cyclic_special(std::size_t m, std::size_t r, std::size_t width,
                                 CyclicWitness kind = CyclicWitness::Approval);

// Parameters rounded to the nearest positive integer.
std::size_t cyclic_unit_sum_rank(std::size_t m);  // sqrt(m / (2 H_m))
std::size_t cyclic_pf_rank(std::size_t m);        // sqrt(m / H_m)

// Cyclic instance whose unit-sum witness forces harmonic_rule above
// min(m/2, sqrt(m H_m / 8)).
FixtureBundle gen_harmonic_unit_sum_lb(std::size_t m);
// Cyclic instance whose approval witness forces PF(harmonic_rule) above
// sqrt(m H_m) / 2.
FixtureBundle gen_harmonic_pf_lb(std::size_t m);

}  // namespace fairvote
