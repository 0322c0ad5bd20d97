#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "cakecut/cake.hpp"
#include "cakecut/knife.hpp"
#include "cakecut/measure.hpp"
#include "cakecut/oracle.hpp"
#include "cakecut/protocols.hpp"

namespace cakecut {

struct Crumble {
  Piece region;
  Scalar volume;  // lambda(region)
  Scalar value;   // worst-case value committed so far
};

/// Lazily constructed worst-case valuation.  The cake is partitioned into
/// value-carrying crumbles; every query refines the partition and commits
/// value to the larger fragments, so no positive-value crumble ever shrinks
/// below a third of its parent.  After q queries the smallest positive
/// crumble still has volume >= total/3^q.
class CrumbleSet {
 public:
  explicit CrumbleSet(const Cake& cake);

  const Cake& cake() const { return cake_; }
  const std::vector<Crumble>& crumbles() const { return crumbles_; }
  long long queries() const { return q_; }
  const Scalar& total_value() const { return total_; }

  Scalar eval(const Piece& I);
  /// Leftmost-halving answer; nullopt when I cannot yield value alpha
  /// (the refusal still counts as a query and commits the round-1 splits).
  std::optional<Scalar> cut(const Knife& f, const Scalar& alpha);
  /// Ratio cut a:b, resolved as a single query; always answerable.
  Scalar proportional_cut(const Knife& f, const BigInt& a, const BigInt& b);

  /// Smallest volume among crumbles with positive value.
  Scalar min_positive_volume() const;
  /// Total value of crumbles wholly contained in Z: the valuation the
  /// adversary commits to once a piece is allocated.
  Scalar value_within(const Piece& Z) const;
  /// Witness measure: each crumble's value spread uniformly over its region.
  Measure materialize() const;

 private:
  struct Intermediate {
    Piece region;
    Scalar volume;
    Scalar value;
  };

  /// Splits every crumble by I; outside fragments are committed into
  /// `crumbles_`, inside fragments are returned in prior crumble order.
  /// `third_rule`: value moves inside only at >= 2/3 of the parent (cut
  /// queries); otherwise at >= 1/2 (eval queries).
  std::vector<Intermediate> split_round(const Piece& I, bool third_rule);
  Scalar finish_cut(const Knife& f, const Scalar& alpha,
                    std::vector<Intermediate> inter);

  Cake cake_;
  Scalar total_;
  std::vector<Crumble> crumbles_;
  long long q_ = 0;
};

/// Structural audit: regions partition the cake, volumes are correct and
/// positive, values are non-negative and sum to the total, and the crumble
/// count respects the 3^q cap.  Empty result = sound.
std::vector<std::string> audit_crumbles(const CrumbleSet& s);

/// Oracle backend driven by a CrumbleSet.  Refuses to disclose values out of
/// band: reference_value throws.
class AdversaryValuation : public Valuation {
 public:
  explicit AdversaryValuation(const Cake& cake) : state_(cake) {}

  CrumbleSet& state() { return state_; }
  const CrumbleSet& state() const { return state_; }

  Scalar eval(const Piece& I) override { return state_.eval(I); }
  std::optional<Scalar> cut(const Knife& f, const Scalar& alpha) override {
    return state_.cut(f, alpha);
  }
  Scalar proportional_cut(const Knife& f, const BigInt& a, const BigInt& b) override {
    return state_.proportional_cut(f, a, b);
  }
  Scalar reference_value(const Piece&) override;

 private:
  CrumbleSet state_;
};

/// Query lower bound for mixed demand profiles, in log-base-3 units:
/// coefficient * log3(argument) with coefficient = c1*n and
/// argument = D*c1/c2.
struct LowerBound {
  Rational coefficient;
  Rational argument;
  std::string decimal;  // rendered value
};

/// Requires 0 < c1, c2 < 1 and integral c1*n.
LowerBound lower_bound_value(int n, const Rational& c1, const Rational& c2,
                             const BigInt& D);

/// Exact test of q >= coefficient * log3(argument).
bool meets_lower_bound(long long q, const LowerBound& bound);

using ProtocolFn = std::function<Division(Oracle&)>;

struct ExperimentPlayer {
  std::size_t player = 0;
  bool humble = false;
  Scalar demand;
  QueryCounts queries;     // oracle ledger
  long long refinements = 0;  // CrumbleSet query counter (humble only)
  Scalar witness_value;    // allocated piece under the witness measure
  Scalar committed_value;  // value_within of the allocated piece (humble only)
  Rational volume_floor;   // D/3^q (humble only)
};

struct ExperimentReport {
  int n = 0;
  BigInt D;
  Rational c1, c2;
  std::uint64_t seed = 0;
  Division division;
  std::vector<ExperimentPlayer> players;
  long long humble_queries = 0;  // sum of refinements over humble players
  LowerBound bound;
  long long batch_upper = 0;  // 2(n-1)ceil(log2 D)
  std::string slack_decimal;  // humble_queries - bound, rendered
  std::vector<std::string> violations;
  Instance witness;  // humble measures materialized, greedy uniform
  std::vector<TranscriptEntry> transcript;

  bool ok() const { return violations.empty(); }
};

/// Runs `protocol` against c1*n adversary-backed humble players (demand
/// c2/c1 each) and (1-c1)*n uniform greedy players sharing demand D - c2*n,
/// on the cake [0, D).  Certifies the division under the materialized
/// witness measures, under the committed crumble values, and against the
/// volume floor D/3^q per humble player; checks
/// lower bound <= humble_queries <= batch upper bound.  seed permutes which
/// seats are humble.
ExperimentReport humble_greedy_experiment(const ProtocolFn& protocol, int n,
                                          const Rational& c1, const Rational& c2,
                                          const BigInt& D, std::uint64_t seed);

}  // namespace cakecut
