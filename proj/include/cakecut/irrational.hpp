#pragma once

#include "cakecut/protocols.hpp"

namespace cakecut {

/// Rounds every irrational demand up to a decimal fraction ceil(d*10^t)/10^t,
/// leaving rational demands untouched, at the smallest t >= 1 for which the
/// rounded sum stays strictly below capacity.  Requires the input sum to be
/// strictly below capacity already; domain error otherwise.
std::vector<Rational> round_up_demands(const std::vector<Scalar>& demands,
                                       const Scalar& capacity);

/// One node of the decomposition that ends up solved as a rational problem.
struct SubInstanceSpec {
  enum class Tag { root, I1, I2a, I2b_rationalized };
  Tag tag = Tag::root;
  Piece cake_piece;
  std::vector<std::size_t> players;
  std::vector<Scalar> demands;         // exact demands entering the node
  std::vector<Rational> rationalized;  // demands handed to the batch protocol
  std::vector<Scalar> rescale;         // accumulated measure factor per player
  Scalar common_value;                 // scaled value of the piece, any player
};

struct IrrationalRun {
  Division division;
  std::vector<SubInstanceSpec> rationalized;  // at most n-1 entries
  int levels = 0;  // probe-and-split rounds executed
};

/// Proportional division for demands in Q(sqrt m): repeatedly the smallest
/// claimant marks off her share, everyone appraises it, and the instance
/// splits into an exactly-solved side and a side whose demands round up to
/// rationals, which the batch protocol finishes.
IrrationalRun irrational_divide(Oracle& oracle, KnifeKind kind);

}  // namespace cakecut
