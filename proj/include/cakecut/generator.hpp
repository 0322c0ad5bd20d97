#pragma once

#include <cstdint>
#include <vector>

#include "cakecut/oracle.hpp"

namespace cakecut {

/// Deterministic random instance on the unit-interval cake: positive integer
/// demands summing to D (a random composition), one piecewise-constant
/// measure per player with at most max_cells cells and exact total D.
Instance gen_random_instance(std::uint64_t seed, int n, const BigInt& D,
                             int max_cells);

/// Deterministic random instance over the field with sqrt(2) adjoined:
/// demands a + b*sqrt(2) > 0 summing to 4n (at least one irrational),
/// strictly positive piecewise densities with exact totals.
Instance gen_quad_instance(std::uint64_t seed, int n, int max_cells);

/// Scaffold for the lower-bound experiment on the cake [0, D): c1*n humble
/// seats sharing demand c2*n and (1-c1)*n greedy seats sharing D - c2*n,
/// both split as evenly as integers allow, all on one uniform measure.
struct HumbleGreedySetup {
  Instance instance;
  std::vector<std::size_t> humble;  // players to back with adversaries
};
HumbleGreedySetup gen_humble_greedy(int n, const Rational& c1,
                                    const Rational& c2, const BigInt& D);

}  // namespace cakecut
