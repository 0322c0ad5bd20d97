#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "cakecut/irrational.hpp"
#include "cakecut/verify.hpp"
#include "testutil.hpp"

using namespace cakecut;
using testutil::Rng;

namespace {

Scalar q(long long num, long long den = 1) { return Scalar(Rational(num, den)); }
Scalar rt2(long long an, long long ad, long long bn, long long bd) {
  return Scalar::quadratic(Rational(an, ad), Rational(bn, bd), 2);
}

const Scalar kSqrt2 = rt2(0, 1, 1, 1);

}  // namespace

TEST_CASE("demand rounding: pinned values") {
  {
    const auto r = round_up_demands({kSqrt2}, q(3, 2));
    REQUIRE(r.size() == 1);
    CHECK(r[0] == Rational(71, 50));  // one digit is not enough: 15/10 hits the cap
  }
  {
    const auto r = round_up_demands({q(1, 3), q(2, 5)}, q(1));
    CHECK(r[0] == Rational(1, 3));
    CHECK(r[1] == Rational(2, 5));
  }
  {
    // sqrt2 + (2 - sqrt2 + 1/10) is exactly the capacity: no room to round.
    const Scalar second = rt2(21, 10, -1, 1);
    CHECK_THROWS_AS(round_up_demands({kSqrt2, second}, q(21, 10)), std::domain_error);
    const auto r = round_up_demands({kSqrt2, second}, q(11, 5));
    CHECK(r[0] == Rational(71, 50));
    CHECK(r[1] == Rational(69, 100));
  }
}

TEST_CASE("demand rounding: dominated, rational, and within capacity") {
  Rng rng(8601);
  for (int rep = 0; rep < 200; ++rep) {
    std::vector<Scalar> d;
    Scalar sum;
    const int n = 1 + static_cast<int>(rng.range(0, 4));
    for (int i = 0; i < n; ++i) {
      Scalar v;
      if (rng.range(0, 1)) {
        v = q(rng.range(1, 40), rng.range(1, 10));
      } else {
        v = rt2(rng.range(1, 8), 1, 1, rng.range(2, 5));
      }
      d.push_back(v);
      sum += v;
    }
    const Scalar cap = sum + q(1, rng.range(1, 50));
    const auto r = round_up_demands(d, cap);
    Rational rsum = 0;
    for (std::size_t i = 0; i < d.size(); ++i) {
      CHECK(Scalar(r[i]) >= d[i]);
      if (d[i].is_rational()) CHECK(r[i] == d[i].as_rational());
      rsum += r[i];
    }
    CHECK(Scalar(rsum) < cap);
  }
}

TEST_CASE("probe settles exactly: smallest claimant takes her mark") {
  Instance inst;
  inst.cake = Cake::interval(q(1));
  inst.field_m = 2;
  inst.players.push_back({kSqrt2, 0});
  inst.players.push_back({q(4) - kSqrt2, 0});
  inst.measures.push_back(Measure({q(0), q(1)}, {q(4)}));
  Oracle oracle(inst);

  const IrrationalRun run = irrational_divide(oracle, KnifeKind::prefix);
  CHECK(run.division.pieces[0] == Piece(q(0), rt2(0, 1, 1, 4)));
  CHECK(run.division.pieces[1] == Piece(rt2(0, 1, 1, 4), q(1)));
  CHECK(run.rationalized.empty());
  CHECK(run.levels == 1);
  CHECK(oracle.totals().cuts == 1);
  CHECK(oracle.totals().evals == 2);
  CHECK(oracle.totals().pcuts == 0);
  CHECK(verify_division(inst, run.division).ok());
  CHECK(replay_transcript(inst, oracle.transcript()).empty());
}

TEST_CASE("contested probe: exact split demands, then rational finish") {
  Instance inst;
  inst.cake = Cake::interval(q(1));
  inst.field_m = 2;
  inst.players.push_back({kSqrt2, 0});
  inst.players.push_back({q(4) - kSqrt2, 1});
  inst.measures.push_back(Measure({q(0), q(1)}, {q(4)}));
  inst.measures.push_back(Measure({q(0), q(1, 2), q(1)}, {q(6), q(2)}));
  Oracle oracle(inst);

  const IrrationalRun run = irrational_divide(oracle, KnifeKind::prefix);

  REQUIRE(run.levels == 1);
  REQUIRE(run.rationalized.size() == 1);
  const SubInstanceSpec& node = run.rationalized[0];
  CHECK(node.tag == SubInstanceSpec::Tag::I2b_rationalized);
  CHECK(node.cake_piece == Piece(rt2(0, 1, 1, 4), q(1)));
  CHECK(node.players == std::vector<std::size_t>{0, 1});
  REQUIRE(node.demands.size() == 2);
  CHECK(node.demands[0] == rt2(4, 7, 8, 7));            // claim grows by its own tail share
  CHECK(node.demands[1] == rt2(68, 23, -32, 23));
  CHECK(node.rationalized == std::vector<Rational>{Rational(11, 5), Rational(1)});
  CHECK(node.common_value == q(4));

  // The probed piece went to the player who outvalued it.
  CHECK(piece_contains(run.division.pieces[1], Piece(q(0), rt2(0, 1, 1, 4))));
  const VerifyReport vr = verify_division(inst, run.division);
  CHECK(vr.ok());
  CHECK(oracle.totals().cuts == 1);
  CHECK(oracle.totals().evals == 2);
  CHECK(oracle.totals().pcuts <= 2 * ceil_log2(BigInt(16)));
  CHECK(replay_transcript(inst, oracle.transcript()).empty());
}

TEST_CASE("uniform appraisals settle every level without rational nodes") {
  Instance inst;
  inst.cake = Cake::interval(q(1));
  inst.field_m = 2;
  inst.players.push_back({rt2(4, 1, -2, 1), 0});  // 4 - 2*sqrt2, the smallest
  inst.players.push_back({kSqrt2, 0});
  inst.players.push_back({kSqrt2, 0});
  inst.measures.push_back(Measure({q(0), q(1)}, {q(4)}));
  Oracle oracle(inst);

  const IrrationalRun run = irrational_divide(oracle, KnifeKind::prefix);
  CHECK(run.levels == 2);
  CHECK(run.rationalized.empty());
  CHECK(run.division.pieces[0] == Piece(q(0), rt2(1, 1, -1, 2)));
  CHECK(run.division.pieces[1] == Piece(rt2(1, 1, -1, 2), rt2(1, 1, -1, 4)));
  CHECK(run.division.pieces[2] == Piece(rt2(1, 1, -1, 4), q(1)));
  CHECK(oracle.totals().cuts == 2);
  CHECK(oracle.totals().evals == 5);
  const VerifyReport vr = verify_division(inst, run.division);
  CHECK(vr.ok());
  for (const PlayerCheck& pc : vr.players) CHECK(pc.margin.is_zero());
}

TEST_CASE("all-rational demands fall through to one batch node") {
  Instance inst;
  inst.cake = Cake::interval(q(1));
  inst.players.push_back({q(1, 2), 0});
  inst.players.push_back({q(3, 2), 0});
  inst.measures.push_back(Measure({q(0), q(1)}, {q(2)}));
  Oracle oracle(inst);
  const IrrationalRun run = irrational_divide(oracle, KnifeKind::prefix);
  CHECK(run.levels == 0);
  REQUIRE(run.rationalized.size() == 1);
  CHECK(run.rationalized[0].tag == SubInstanceSpec::Tag::root);
  CHECK(run.rationalized[0].rationalized ==
        std::vector<Rational>{Rational(1, 2), Rational(3, 2)});
  CHECK(verify_division(inst, run.division).ok());
}

TEST_CASE("random mixed instances stay proportional with few rational nodes") {
  Rng rng(8602);
  const KnifeKind kinds[] = {KnifeKind::prefix, KnifeKind::centered,
                             KnifeKind::translated, KnifeKind::sweep};
  for (int rep = 0; rep < 40; ++rep) {
    const int n = 2 + static_cast<int>(rng.range(0, 3));
    Instance inst;
    inst.cake = Cake::interval(q(1));
    inst.field_m = 2;
    const Scalar T = q(16);
    Scalar sum;
    for (int i = 0; i + 1 < n; ++i) {
      const Scalar d = i == 0 ? rt2(rng.range(1, 2), 1, 1, 4)
                              : (rng.range(0, 1) ? q(rng.range(1, 2))
                                                 : rt2(1, 1, rng.range(-1, 1), 4));
      inst.players.push_back({d, static_cast<std::size_t>(i)});
      sum += d;
    }
    inst.players.push_back({T - sum, static_cast<std::size_t>(n - 1)});
    for (int i = 0; i < n; ++i)
      inst.measures.push_back(testutil::step_measure_with_total(rng, inst.cake, 4, T));

    const KnifeKind kind = kinds[rng.range(0, 3)];
    Oracle oracle(inst);
    const IrrationalRun run = irrational_divide(oracle, kind);

    const VerifyReport vr = verify_division(inst, run.division);
    const std::string why = vr.errors.empty() ? "" : vr.errors[0];
    INFO(why);
    CHECK(vr.ok());
    CHECK(run.rationalized.size() <= static_cast<std::size_t>(n - 1));
    CHECK(run.levels <= n - 1);
    for (const SubInstanceSpec& spec : run.rationalized) {
      Scalar rsum;
      for (const Rational& r : spec.rationalized) rsum += Scalar(r);
      CHECK(rsum <= spec.common_value);
    }
    CHECK(replay_transcript(inst, oracle.transcript()).empty());

    Oracle again(inst);
    irrational_divide(again, kind);
    CHECK(transcript_to_text(again.transcript()) ==
          transcript_to_text(oracle.transcript()));
  }
}
