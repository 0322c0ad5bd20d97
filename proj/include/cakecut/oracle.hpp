#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "cakecut/cake.hpp"
#include "cakecut/knife.hpp"
#include "cakecut/measure.hpp"
#include "cakecut/piece.hpp"

namespace cakecut {

struct Player {
  Scalar demand;
  std::size_t measure_index = 0;  // into Instance::measures (clones may share)
};

/// A division problem: cake, players with demands, one measure per player
/// (possibly shared).  Normalization: every measure's total over the cake
/// equals the sum of all demands.
struct Instance {
  Cake cake = Cake::interval(Scalar(1));
  std::vector<Player> players;
  std::vector<Measure> measures;
  std::int64_t field_m = 0;  // 0: rational scalars; else sqrt(m) adjoined

  std::size_t n() const { return players.size(); }
  Scalar total_demand() const;
  const Measure& measure_of(std::size_t player) const;
  /// Structural checks; throws invalid_argument with a specific message.
  void validate() const;
};

struct QueryCounts {
  long long evals = 0;
  long long cuts = 0;
  long long pcuts = 0;

  /// One query per proportional cut (the accounting used by the bounds).
  long long highlevel_total() const { return evals + cuts + pcuts; }
  /// Basic-query equivalent: a proportional cut costs five.
  long long ws_equivalent() const { return evals + cuts + 5 * pcuts; }

  QueryCounts& operator+=(const QueryCounts& o) {
    evals += o.evals;
    cuts += o.cuts;
    pcuts += o.pcuts;
    return *this;
  }
};

enum class QueryKind { eval, cut, pcut };

struct TranscriptEntry {
  int player = 0;
  QueryKind kind = QueryKind::eval;
  Piece I;
  std::string knife_spec;        // cut / pcut
  Scalar alpha;                  // cut
  BigInt a, b;                   // pcut ratio, recorded as asked
  std::optional<Scalar> answer;  // nullopt: no-solution

  /// `player=<id> kind=<eval|cut|pcut> args=<...> ans=<scalar|none>`
  std::string to_line() const;
  static TranscriptEntry parse_line(const std::string& line);

  friend bool operator==(const TranscriptEntry& x, const TranscriptEntry& y);
};

/// Answer source for one player's queries.  The standard backend reads a
/// Measure; the adversarial backend constructs answers lazily.
class Valuation {
 public:
  virtual ~Valuation() = default;
  virtual Scalar eval(const Piece& I) = 0;
  virtual std::optional<Scalar> cut(const Knife& f, const Scalar& alpha) = 0;
  /// Ratio cut a:b over the knife's domain; always has an answer.
  virtual Scalar proportional_cut(const Knife& f, const BigInt& a, const BigInt& b) = 0;
  /// Exact value of I for free protocol bookkeeping (piece reindexing).
  /// Backends that refuse to disclose values throw logic_error.
  virtual Scalar reference_value(const Piece& I) = 0;
};

class MeasureValuation : public Valuation {
 public:
  explicit MeasureValuation(Measure mu) : mu_(std::move(mu)) {}
  Scalar eval(const Piece& I) override { return measure_eval(mu_, I); }
  std::optional<Scalar> cut(const Knife& f, const Scalar& alpha) override {
    return measure_cut(mu_, f, alpha);
  }
  Scalar proportional_cut(const Knife& f, const BigInt& a, const BigInt& b) override;
  Scalar reference_value(const Piece& I) override { return measure_eval(mu_, I); }

 private:
  Measure mu_;
};

struct OracleOptions {
  bool record_transcript = true;  // disable for large benchmark runs
};

/// Query gateway: answers eval / cut / proportional-cut against each player's
/// backend while keeping the per-player ledger and the transcript.
class Oracle {
 public:
  explicit Oracle(Instance inst, OracleOptions opts = {});

  const Instance& instance() const { return inst_; }
  const Cake& cake() const { return inst_.cake; }
  std::size_t n_players() const { return inst_.n(); }
  const Scalar& demand(std::size_t player) const { return inst_.players.at(player).demand; }

  /// Swap in a non-standard backend (adversarial player).
  void set_backend(std::size_t player, std::unique_ptr<Valuation> v);

  Scalar eval(std::size_t player, const Piece& I);
  std::optional<Scalar> cut(std::size_t player, const Knife& f, const Scalar& alpha);
  Scalar proportional_cut(std::size_t player, const Knife& f, const BigInt& a, const BigInt& b);
  /// Free of charge; not part of the transcript.
  Scalar reference_value(std::size_t player, const Piece& I);

  const QueryCounts& counts(std::size_t player) const { return counts_.at(player); }
  QueryCounts totals() const;
  bool recording() const { return opts_.record_transcript; }
  const std::vector<TranscriptEntry>& transcript() const { return log_; }

 private:
  Valuation& backend(std::size_t player);

  Instance inst_;
  OracleOptions opts_;
  std::vector<std::unique_ptr<Valuation>> backends_;
  std::vector<QueryCounts> counts_;
  std::vector<TranscriptEntry> log_;
};

/// Re-answers every logged query from the instance's measures and reports
/// mismatches ("player 3 line 7: ans ..., expected ...").  Empty = faithful.
std::vector<std::string> replay_transcript(const Instance& inst,
                                           const std::vector<TranscriptEntry>& log);

/// Weaker check than replay: verifies each logged answer is exactly true
/// under the instance's measures (cut answers carve exactly alpha, refusals
/// exceed the available value, ratio answers split a : b) without demanding
/// the leftmost solution.  The contract a lazily constructed valuation must
/// meet once its witness measure is materialized.
std::vector<std::string> witness_mismatches(const Instance& inst,
                                            const std::vector<TranscriptEntry>& log);

std::string transcript_to_text(const std::vector<TranscriptEntry>& log);
std::vector<TranscriptEntry> transcript_from_text(const std::string& text);

}  // namespace cakecut
