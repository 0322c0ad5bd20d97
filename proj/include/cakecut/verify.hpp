#pragma once

#include <string>
#include <vector>

#include "cakecut/oracle.hpp"
#include "cakecut/protocols.hpp"

namespace cakecut {

struct PlayerCheck {
  Scalar value;   // true value of the assigned piece
  Scalar demand;
  Scalar margin;  // value - demand
};

struct VerifyReport {
  bool partition_ok = false;   // pieces disjoint, inside the cake, covering it
  bool proportional = false;   // every margin >= 0
  std::vector<PlayerCheck> players;
  std::vector<std::string> errors;  // human-readable findings, empty when ok()

  bool ok() const { return partition_ok && proportional; }
};

/// Exact check of a division against the instance's true measures.
VerifyReport verify_division(const Instance& inst, const Division& div);

}  // namespace cakecut
