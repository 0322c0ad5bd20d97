#include "cakecut/verify.hpp"

namespace cakecut {

VerifyReport verify_division(const Instance& inst, const Division& div) {
  VerifyReport rep;
  if (div.pieces.size() != inst.n()) {
    rep.errors.push_back("division has " + std::to_string(div.pieces.size()) +
                         " pieces for " + std::to_string(inst.n()) + " players");
    return rep;
  }

  rep.partition_ok = true;
  for (std::size_t p = 0; p < inst.n(); ++p) {
    if (!inst.cake.contains(div.pieces[p])) {
      rep.errors.push_back("player " + std::to_string(p) + " piece leaves the cake: " +
                           div.pieces[p].to_string());
      rep.partition_ok = false;
    }
  }
  Piece covered;
  for (std::size_t p = 0; p < inst.n() && rep.partition_ok; ++p) {
    const Piece clash = piece_intersect(covered, div.pieces[p]);
    if (!clash.empty()) {
      rep.errors.push_back("player " + std::to_string(p) +
                           " piece overlaps earlier pieces on " + clash.to_string());
      rep.partition_ok = false;
    }
    covered = piece_union(covered, div.pieces[p]);
  }
  if (rep.partition_ok) {
    const Piece gap = piece_subtract(inst.cake.full(), covered);
    if (!gap.empty()) {
      rep.errors.push_back("cake not fully assigned, left over: " + gap.to_string());
      rep.partition_ok = false;
    }
  }

  rep.proportional = true;
  for (std::size_t p = 0; p < inst.n(); ++p) {
    PlayerCheck pc;
    pc.demand = inst.players[p].demand;
    pc.value = inst.cake.contains(div.pieces[p])
                   ? measure_eval(inst.measure_of(p), div.pieces[p])
                   : Scalar(0);
    pc.margin = pc.value - pc.demand;
    if (pc.margin.sign() < 0) {
      rep.errors.push_back("player " + std::to_string(p) + " gets " +
                           pc.value.to_string() + " but demands " +
                           pc.demand.to_string());
      rep.proportional = false;
    }
    rep.players.push_back(std::move(pc));
  }
  return rep;
}

}  // namespace cakecut
