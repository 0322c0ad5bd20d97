#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>

#include "cakecut/adversary.hpp"
#include "cakecut/generator.hpp"
#include "cakecut/verify.hpp"
#include "testutil.hpp"

using namespace cakecut;
using testutil::Rng;

namespace {

Scalar q(long long num, long long den = 1) { return Scalar(Rational(num, den)); }

Piece seg(long long lo_n, long long lo_d, long long hi_n, long long hi_d) {
  return Piece(q(lo_n, lo_d), q(hi_n, hi_d));
}

void check_audit(const CrumbleSet& s) {
  const auto bad = audit_crumbles(s);
  const std::string why = bad.empty() ? "" : bad[0];
  INFO(why);
  CHECK(bad.empty());
}

Piece random_piece(Rng& rng, long long D) {
  const long long G = 16;
  const int parts = 1 + static_cast<int>(rng.range(0, 1));
  std::set<long long> ends;
  while (ends.size() < 2 * static_cast<std::size_t>(parts))
    ends.insert(rng.range(0, G));
  std::vector<long long> e(ends.begin(), ends.end());
  std::vector<Interval> ivs;
  for (int p = 0; p < parts; ++p)
    ivs.push_back({q(D * e[2 * p], G), q(D * e[2 * p + 1], G)});
  return Piece::from_intervals(ivs);
}

}  // namespace

TEST_CASE("fresh state: one crumble carrying everything") {
  CrumbleSet s(Cake::interval(q(3)));
  CHECK(s.crumbles().size() == 1);
  CHECK(s.queries() == 0);
  CHECK(s.total_value() == q(3));
  CHECK(s.min_positive_volume() == q(3));
  CHECK(s.value_within(s.cake().full()) == q(3));
  CHECK(s.value_within(seg(1, 4, 5, 4)) == q(0));
  const Measure m = s.materialize();
  CHECK(measure_eval(m, s.cake().full()) == q(3));
  CHECK(measure_eval(m, seg(0, 1, 1, 1)) == q(1));
  check_audit(s);
}

TEST_CASE("eval branch: the bigger half keeps the value, ties inside") {
  {
    CrumbleSet s(Cake::interval(q(3)));
    CHECK(s.eval(seg(0, 1, 2, 1)) == q(3));  // 2 >= 3/2
    CHECK(s.queries() == 1);
    check_audit(s);
    const Measure m = s.materialize();
    CHECK(measure_eval(m, seg(0, 1, 1, 1)) == q(3, 2));
    CHECK(measure_eval(m, seg(2, 1, 3, 1)) == q(0));
  }
  {
    CrumbleSet s(Cake::interval(q(3)));
    CHECK(s.eval(seg(0, 1, 1, 1)) == q(0));  // 1 < 3/2
    check_audit(s);
  }
  {
    CrumbleSet s(Cake::interval(q(3)));
    CHECK(s.eval(s.cake().full()) == q(3));
    check_audit(s);
  }
  {
    CrumbleSet s(Cake::interval(q(2)));
    CHECK(s.eval(seg(0, 1, 1, 1)) == q(2));  // exact half: inside wins
    check_audit(s);
  }
}

TEST_CASE("cut branch: single-crumble trace and refusals") {
  const Cake cake = Cake::interval(q(3));
  {
    CrumbleSet s(cake);
    const Knife f = Knife::prefix(cake, cake.full());
    const auto x = s.cut(f, q(3, 2));
    REQUIRE(x.has_value());
    CHECK(*x == q(3, 2));
    REQUIRE(s.crumbles().size() == 2);
    CHECK(s.crumbles()[0].region == seg(0, 1, 3, 2));
    CHECK(s.crumbles()[0].value == q(3, 2));
    CHECK(s.crumbles()[1].value == q(3, 2));
    CHECK(s.min_positive_volume() == q(3, 2));
    CHECK(s.queries() == 1);
    check_audit(s);
  }
  {
    CrumbleSet s(cake);
    const Knife f = Knife::prefix(cake, cake.full());
    CHECK_FALSE(s.cut(f, q(4)).has_value());  // more than everything
    CHECK(s.queries() == 1);
    CHECK(s.crumbles().size() == 1);
    check_audit(s);
  }
  {
    CrumbleSet s(cake);
    const Piece I = seg(0, 1, 1, 1);  // 1 < (2/3)*3: round 1 moves value out
    const Knife f = Knife::prefix(cake, I);
    CHECK_FALSE(s.cut(f, q(1, 2)).has_value());
    CHECK(s.queries() == 1);
    const Measure m = s.materialize();
    CHECK(measure_eval(m, I) == q(0));
    check_audit(s);
  }
}

TEST_CASE("cut keeps value inside at exactly two thirds") {
  const Cake cake = Cake::interval(q(3));
  CrumbleSet s(cake);
  const Piece I = seg(0, 1, 2, 1);
  const auto x = s.cut(Knife::prefix(cake, I), q(3));
  REQUIRE(x.has_value());
  CHECK(*x == q(1));  // halves [0,2); the whole value lands on [0,1)
  CHECK(s.value_within(seg(0, 1, 1, 1)) == q(3));
  CHECK(s.min_positive_volume() == q(1));  // exactly 3/3^1
  check_audit(s);
}

TEST_CASE("cut across two positive crumbles: pivot takes the partial value") {
  const Cake cake = Cake::interval(q(4));
  CrumbleSet s(cake);
  const Knife f = Knife::prefix(cake, cake.full());
  REQUIRE(s.cut(f, q(2)) == q(2));  // halves: [0,2) and [2,4) worth 2 each
  const auto x = s.cut(f, q(3));
  REQUIRE(x.has_value());
  CHECK(*x == q(3));  // pivot is the second crumble, halved at 3
  REQUIRE(s.crumbles().size() == 3);
  CHECK(s.crumbles()[0].region == seg(0, 1, 2, 1));
  CHECK(s.crumbles()[0].value == q(2));
  CHECK(s.crumbles()[1].region == seg(2, 1, 3, 1));
  CHECK(s.crumbles()[1].value == q(1));
  CHECK(s.crumbles()[2].region == seg(3, 1, 4, 1));
  CHECK(s.crumbles()[2].value == q(1));
  CHECK(s.queries() == 2);
  CHECK(s.min_positive_volume() == q(1));
  check_audit(s);
}

TEST_CASE("cut with a centered knife: zero-value crumbles join the ordering") {
  const Cake cake = Cake::interval(q(4));
  CrumbleSet s(cake);
  CHECK(s.eval(seg(2, 1, 4, 1)) == q(4));  // value concentrates on [2,4)
  const Knife f = Knife::centered(cake, cake.full(), q(2));
  const auto x = s.cut(f, q(2));
  REQUIRE(x.has_value());
  CHECK(*x == q(2));  // both halving positions tie at 2; stable order holds
  CHECK(s.value_within(seg(2, 1, 3, 1)) == q(2));
  CHECK(s.value_within(seg(3, 1, 4, 1)) == q(2));
  CHECK(s.value_within(seg(0, 1, 2, 1)) == q(0));
  check_audit(s);
}

TEST_CASE("random query storms: lemma floor, crumble cap, conservation") {
  Rng rng(9301);
  const KnifeKind kinds[] = {KnifeKind::prefix, KnifeKind::centered,
                             KnifeKind::translated, KnifeKind::sweep};
  for (int rep = 0; rep < 250; ++rep) {
    const long long D = 1 + static_cast<long long>(rng.range(0, 9999));
    const Cake cake = Cake::interval(q(D));
    CrumbleSet s(cake);
    BigInt pow3 = 1;
    const int steps = 1 + static_cast<int>(rng.range(0, 19));
    for (int t = 0; t < steps; ++t) {
      const Piece I = random_piece(rng, D);
      const int what = static_cast<int>(rng.range(0, 2));
      if (what == 0 || I.empty()) {
        if (!I.empty()) s.eval(I);
        else s.eval(cake.full());
      } else {
        const Knife f = Knife::make(kinds[rng.range(0, 3)], cake, I);
        if (what == 1) {
          const Scalar alpha = q(static_cast<long long>(rng.range(0, D + D / 2)));
          s.cut(f, alpha);
        } else {
          s.proportional_cut(f, BigInt(rng.range(0, 7)), BigInt(1 + rng.range(0, 6)));
        }
      }
      pow3 *= 3;
      const auto bad = audit_crumbles(s);
      const std::string why = bad.empty() ? "" : bad[0];
      INFO(why);
      REQUIRE(bad.empty());
      CHECK(s.min_positive_volume() >= Scalar(Rational(D) / Rational(pow3)));
    }
  }
}

TEST_CASE("materialized witness agrees with every transcript answer") {
  Rng rng(9302);
  const KnifeKind kinds[] = {KnifeKind::prefix, KnifeKind::centered,
                             KnifeKind::translated, KnifeKind::sweep};
  for (int rep = 0; rep < 120; ++rep) {
    const long long D = 1 + static_cast<long long>(rng.range(0, 400));
    Instance inst;
    inst.cake = Cake::interval(q(D));
    inst.players.push_back({q(D), 0});
    inst.measures.push_back(uniform_on(inst.cake, inst.cake.full()));
    Oracle oracle(inst);
    auto backend = std::make_unique<AdversaryValuation>(inst.cake);
    AdversaryValuation* adv = backend.get();
    oracle.set_backend(0, std::move(backend));

    for (int t = 0; t < 15; ++t) {
      const Piece I = random_piece(rng, D);
      const Piece target = I.empty() ? inst.cake.full() : I;
      const int what = static_cast<int>(rng.range(0, 2));
      if (what == 0) {
        oracle.eval(0, target);
      } else {
        const Knife f = Knife::make(kinds[rng.range(0, 3)], inst.cake, target);
        if (what == 1)
          oracle.cut(0, f, q(static_cast<long long>(rng.range(0, D + 2))));
        else
          oracle.proportional_cut(0, f, BigInt(rng.range(0, 7)),
                                  BigInt(1 + rng.range(0, 6)));
      }
    }
    CHECK(adv->state().queries() == 15);
    CHECK(oracle.counts(0).highlevel_total() == 15);

    Instance witness = inst;
    witness.measures[0] = adv->state().materialize();
    CHECK(measure_eval(witness.measures[0], inst.cake.full()) == q(D));
    const auto gaps = witness_mismatches(witness, oracle.transcript());
    const std::string why = gaps.empty() ? "" : gaps[0];
    INFO(why);
    CHECK(gaps.empty());

    // Committed value never exceeds the witness value.
    for (int probe = 0; probe < 5; ++probe) {
      const Piece Z = random_piece(rng, D);
      if (Z.empty()) continue;
      CHECK(adv->state().value_within(Z) <= measure_eval(witness.measures[0], Z));
    }
  }
}

TEST_CASE("lower bound formula: exact pairs and decimal rendering") {
  {
    const LowerBound b = lower_bound_value(4, Rational(3, 4), Rational(3, 4), 81);
    CHECK(b.coefficient == Rational(3));
    CHECK(b.argument == Rational(81));
    CHECK(b.decimal == "12.000000");
    CHECK(meets_lower_bound(12, b));
    CHECK_FALSE(meets_lower_bound(11, b));
  }
  {
    const LowerBound b = lower_bound_value(4, Rational(1, 2), Rational(1, 4), 1);
    CHECK(b.coefficient == Rational(2));
    CHECK(b.argument == Rational(2));
    CHECK(meets_lower_bound(2, b));
    CHECK_FALSE(meets_lower_bound(1, b));
  }
  CHECK(lower_bound_value(8, Rational(1, 2), Rational(1, 2), 729).decimal ==
        "24.000000");
  CHECK_THROWS_AS(lower_bound_value(4, Rational(1), Rational(1, 2), 81),
                  std::domain_error);
  CHECK_THROWS_AS(lower_bound_value(3, Rational(1, 2), Rational(1, 2), 81),
                  std::domain_error);
}

TEST_CASE("experiment scaffold: seats, demands, feasibility") {
  const HumbleGreedySetup s = gen_humble_greedy(4, Rational(3, 4), Rational(3, 4), 81);
  REQUIRE(s.instance.n() == 4);
  CHECK(s.humble == std::vector<std::size_t>{0, 1, 2});
  CHECK(s.instance.players[0].demand == q(1));
  CHECK(s.instance.players[3].demand == q(78));
  CHECK(s.instance.cake.volume(s.instance.cake.full()) == q(81));
  CHECK_THROWS_AS(gen_humble_greedy(4, Rational(1, 2), Rational(1, 2), 3),
                  std::domain_error);
  CHECK_THROWS_AS(gen_humble_greedy(3, Rational(1, 2), Rational(1, 2), 81),
                  std::domain_error);
}

TEST_CASE("adversarial backend refuses out-of-band value disclosure") {
  AdversaryValuation v(Cake::interval(q(3)));
  CHECK_THROWS_AS(v.reference_value(seg(0, 1, 1, 1)), std::logic_error);
}

TEST_CASE("lower-bound experiment brackets the batch protocol") {
  const ProtocolFn batch = [](Oracle& o) {
    return batch_near_half(o, KnifeKind::prefix);
  };
  for (const int n : {4, 8}) {
    for (const long long D : {81, 729}) {
      const Rational c((n - 1), n);
      const ExperimentReport rep =
          humble_greedy_experiment(batch, n, c, c, D, 7);
      const std::string why = rep.violations.empty() ? "" : rep.violations[0];
      INFO(why);
      CHECK(rep.ok());
      CHECK(rep.bound.coefficient == Rational(n - 1));
      CHECK(rep.bound.argument == Rational(D));
      CHECK(meets_lower_bound(rep.humble_queries, rep.bound));
      CHECK(rep.humble_queries <= rep.batch_upper);
      CHECK(verify_division(rep.witness, rep.division).ok());
      long long humble_seen = 0;
      for (const ExperimentPlayer& p : rep.players)
        if (p.humble) {
          ++humble_seen;
          CHECK(p.committed_value >= p.demand);
          CHECK(p.refinements == p.queries.highlevel_total());
        }
      CHECK(humble_seen == n - 1);
    }
  }
}

TEST_CASE("degenerate two-player experiment satisfies the bound trivially") {
  const ProtocolFn batch = [](Oracle& o) {
    return batch_near_half(o, KnifeKind::prefix);
  };
  const ExperimentReport rep =
      humble_greedy_experiment(batch, 2, Rational(1, 2), Rational(1, 2), 2, 1);
  CHECK(rep.ok());
  CHECK(rep.humble_queries >= 1);
}

TEST_CASE("experiment is deterministic per seed") {
  const ProtocolFn batch = [](Oracle& o) {
    return batch_near_half(o, KnifeKind::prefix);
  };
  const ExperimentReport a =
      humble_greedy_experiment(batch, 4, Rational(3, 4), Rational(3, 4), 81, 5);
  const ExperimentReport b =
      humble_greedy_experiment(batch, 4, Rational(3, 4), Rational(3, 4), 81, 5);
  CHECK(transcript_to_text(a.transcript) == transcript_to_text(b.transcript));
  for (int j = 0; j < 4; ++j)
    CHECK(a.division.pieces[j] == b.division.pieces[j]);
}

TEST_CASE("allocating without querying humble players draws a certificate") {
  const ProtocolFn stub = [](Oracle& o) {
    Division div(o.n_players());
    Scalar at;
    for (std::size_t j = 0; j < o.n_players(); ++j) {
      const Scalar w = o.demand(j);  // cake volume equals total demand
      div.pieces[j] = Piece(at, at + w);
      at += w;
    }
    return div;
  };
  const ExperimentReport rep =
      humble_greedy_experiment(stub, 4, Rational(3, 4), Rational(3, 4), 81, 3);
  CHECK_FALSE(rep.ok());
  CHECK(rep.humble_queries == 0);
  const bool certified =
      std::any_of(rep.violations.begin(), rep.violations.end(),
                  [](const std::string& v) {
                    return v.find("committed value") != std::string::npos;
                  });
  CHECK(certified);
}
