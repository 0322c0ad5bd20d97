#pragma once

#include <vector>

#include "cakecut/oracle.hpp"

namespace cakecut {

/// A division: one piece per player, indexed by player id.  Valid divisions
/// partition the cake; see verify_division.
struct Division {
  explicit Division(std::size_t n = 0) : pieces(n) {}
  std::vector<Piece> pieces;
};

/// Demand as a positive integer; domain error otherwise.
BigInt integer_demand(const Scalar& d);

/// Near-half batch protocol: every round each active player marks the current
/// piece in ratio floor(D'/2) : ceil(D'/2), the piece splits at the mark of
/// the pivotal player, and both sides recurse.  Demands must be positive
/// integers.  Uses at most 2(n-1)ceil(log2 D) proportional cuts.
Division batch_near_half(Oracle& oracle, KnifeKind kind);

/// Same protocol on a sub-collection of players dividing `piece` with the
/// given integer demands; allocated parts are unioned into `out` (a player
/// may gather pieces across several calls).
void batch_near_half_on(Oracle& oracle, const std::vector<std::size_t>& players,
                        const std::vector<BigInt>& demands, const Piece& piece,
                        KnifeKind kind, Division& out);

/// Two players with integer demands: the player with the smaller outstanding
/// claim marks near-halves, the other takes whichever side she values more
/// relative to its claim share, until one claim empties.  At most
/// 2*ceil(log2(d1+d2)) queries.
Division cut_near_halves_2p(Oracle& oracle, KnifeKind kind);

/// One exchange between holder pa (claim da) and challenger pb (claim db)
/// over `piece`; allocated parts are unioned into `out`.
void cut_near_halves_on(Oracle& oracle, std::size_t pa, std::size_t pb,
                        const BigInt& da, const BigInt& db, const Piece& piece,
                        KnifeKind kind, Division& out);

/// n-player generalization: players enter one by one, each newcomer running
/// the two-player exchange against every current holder's piece.  At most
/// n(n-1)ceil(log2 D) queries.
Division recursive_cut_near_halves(Oracle& oracle, KnifeKind kind);

/// Unit-demand reduction: replace each player by demand-many clones sharing
/// her measure.  owner[k] is the original player of clone k.
Instance clone_instance(const Instance& inst, std::vector<std::size_t>& owner);

/// Run the batch protocol on the clone instance and merge each player's
/// clone pieces back.
struct CloneRun {
  Division division;                    // per original player
  std::vector<QueryCounts> counts;      // per original player (clones folded)
  QueryCounts totals;
  std::vector<TranscriptEntry> transcript;  // clone queries, original ids
  BigInt D;                             // number of clones
};
CloneRun clone_transform(const Instance& inst, KnifeKind kind, bool record_transcript);

}  // namespace cakecut
