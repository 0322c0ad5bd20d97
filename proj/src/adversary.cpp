#include "cakecut/adversary.hpp"

#include <algorithm>
#include <numeric>
#include <random>
#include <stdexcept>

#include "cakecut/generator.hpp"
#include "cakecut/verify.hpp"

namespace cakecut {

namespace mp = boost::multiprecision;

CrumbleSet::CrumbleSet(const Cake& cake)
    : cake_(cake), total_(cake.volume(cake.full())) {
  crumbles_.push_back({cake_.full(), total_, total_});
}

std::vector<CrumbleSet::Intermediate> CrumbleSet::split_round(const Piece& I,
                                                              bool third_rule) {
  std::vector<Crumble> committed;
  std::vector<Intermediate> inter;
  for (const Crumble& c : crumbles_) {
    const Piece in = piece_intersect(c.region, I);
    if (in.empty()) {
      committed.push_back(c);
      continue;
    }
    const Scalar vin = cake_.volume(in);
    const bool inside_wins = third_rule ? vin * Scalar(3) >= c.volume * Scalar(2)
                                        : vin * Scalar(2) >= c.volume;
    const Piece out = piece_subtract(c.region, I);
    if (!out.empty())
      committed.push_back({out, c.volume - vin, inside_wins ? Scalar() : c.value});
    inter.push_back({in, vin, inside_wins ? c.value : Scalar()});
  }
  crumbles_ = std::move(committed);
  return inter;
}

Scalar CrumbleSet::eval(const Piece& I) {
  if (!cake_.contains(I)) throw std::invalid_argument("eval piece outside the cake");
  Scalar ans;
  for (const Intermediate& it : split_round(I, false)) {
    ans += it.value;
    crumbles_.push_back({it.region, it.volume, it.value});
  }
  ++q_;
  return ans;
}

std::optional<Scalar> CrumbleSet::cut(const Knife& f, const Scalar& alpha) {
  if (alpha.sign() < 0) throw std::domain_error("cut target must be non-negative");
  std::vector<Intermediate> inter = split_round(f.domain(), true);
  Scalar avail;
  for (const Intermediate& it : inter) avail += it.value;
  ++q_;
  if (avail < alpha) {
    for (Intermediate& it : inter)
      crumbles_.push_back({std::move(it.region), it.volume, it.value});
    return std::nullopt;
  }
  return finish_cut(f, alpha, std::move(inter));
}

Scalar CrumbleSet::proportional_cut(const Knife& f, const BigInt& a, const BigInt& b) {
  if (a < 0 || b < 0 || a + b == 0)
    throw std::domain_error("ratio parts must be non-negative and not both zero");
  std::vector<Intermediate> inter = split_round(f.domain(), true);
  Scalar avail;
  for (const Intermediate& it : inter) avail += it.value;
  ++q_;
  return finish_cut(f, Scalar(Rational(a, a + b)) * avail, std::move(inter));
}

Scalar CrumbleSet::finish_cut(const Knife& f, const Scalar& alpha,
                              std::vector<Intermediate> inter) {
  if (alpha.is_zero()) {
    // Empty window: the round-1 refinement stands, nothing moves.
    for (Intermediate& it : inter)
      crumbles_.push_back({std::move(it.region), it.volume, it.value});
    return Scalar(0);
  }

  const std::size_t m = inter.size();
  std::vector<Scalar> x(m);
  for (std::size_t i = 0; i < m; ++i) {
    const auto xi = measure_cut(uniform_on(cake_, inter[i].region), f,
                                inter[i].volume / Scalar(2));
    if (!xi) throw std::logic_error("halving position not found");
    x[i] = *xi;
  }
  std::vector<std::size_t> ord(m);
  std::iota(ord.begin(), ord.end(), std::size_t{0});
  std::stable_sort(ord.begin(), ord.end(),
                   [&](std::size_t l, std::size_t r) { return x[l] < x[r]; });

  std::size_t k = m;
  Scalar prefix;
  for (std::size_t j = 0; j < m; ++j) {
    if (prefix + inter[ord[j]].value >= alpha) {
      k = j;
      break;
    }
    prefix += inter[ord[j]].value;
  }
  if (k == m) throw std::logic_error("cut target exceeds the available value");

  const Scalar xk = x[ord[k]];
  const Piece win = f.piece(xk);
  for (std::size_t j = 0; j < m; ++j) {
    const Intermediate& it = inter[ord[j]];
    const Piece in = piece_intersect(it.region, win);
    const Scalar vin = cake_.volume(in);
    const Piece out = piece_subtract(it.region, win);
    Scalar val_in, val_out;
    if (j < k)
      val_in = it.value;
    else if (j > k)
      val_out = it.value;
    else {
      val_in = alpha - prefix;
      val_out = it.value - val_in;
    }
    if (!in.empty()) crumbles_.push_back({in, vin, val_in});
    if (!out.empty()) crumbles_.push_back({out, it.volume - vin, val_out});
  }
  return xk;
}

Scalar CrumbleSet::min_positive_volume() const {
  std::optional<Scalar> best;
  for (const Crumble& c : crumbles_)
    if (c.value.sign() > 0 && (!best || c.volume < *best)) best = c.volume;
  return best ? *best : Scalar(0);
}

Scalar CrumbleSet::value_within(const Piece& Z) const {
  Scalar v;
  for (const Crumble& c : crumbles_)
    if (piece_contains(Z, c.region)) v += c.value;
  return v;
}

Measure CrumbleSet::materialize() const {
  std::vector<Scalar> grid;
  for (const Crumble& c : crumbles_)
    for (const Interval& iv : c.region.intervals()) {
      grid.push_back(iv.lo);
      grid.push_back(iv.hi);
    }
  std::sort(grid.begin(), grid.end());
  grid.erase(std::unique(grid.begin(), grid.end()), grid.end());

  std::vector<Scalar> dens;
  for (std::size_t j = 0; j + 1 < grid.size(); ++j) {
    const Scalar mid = (grid[j] + grid[j + 1]) / Scalar(2);
    Scalar d;
    for (const Crumble& c : crumbles_) {
      bool owns = false;
      for (const Interval& iv : c.region.intervals())
        if (iv.lo <= mid && mid < iv.hi) owns = true;
      if (owns) {
        d = c.value * cake_.height() / c.volume;
        break;
      }
    }
    dens.push_back(d);
  }
  return Measure(grid, dens);
}

std::vector<std::string> audit_crumbles(const CrumbleSet& s) {
  std::vector<std::string> bad;
  Piece all;
  Scalar vol_sum, val_sum;
  for (std::size_t i = 0; i < s.crumbles().size(); ++i) {
    const Crumble& c = s.crumbles()[i];
    if (c.volume.sign() <= 0)
      bad.push_back("crumble " + std::to_string(i) + ": non-positive volume");
    if (c.volume != s.cake().volume(c.region))
      bad.push_back("crumble " + std::to_string(i) + ": stored volume mismatch");
    if (c.value.sign() < 0)
      bad.push_back("crumble " + std::to_string(i) + ": negative value");
    all = piece_union(all, c.region);
    vol_sum += c.volume;
    val_sum += c.value;
  }
  if (!(all == s.cake().full())) bad.push_back("regions do not cover the cake");
  if (vol_sum != s.cake().volume(s.cake().full()))
    bad.push_back("regions overlap: volumes sum past the cake");
  if (val_sum != s.total_value()) bad.push_back("value not conserved");
  if (s.queries() < 40 &&
      BigInt(s.crumbles().size()) >
          mp::pow(BigInt(3), static_cast<unsigned>(s.queries())))
    bad.push_back("more crumbles than 3^q");
  return bad;
}

Scalar AdversaryValuation::reference_value(const Piece&) {
  throw std::logic_error("adversarial backend does not disclose reference values");
}

LowerBound lower_bound_value(int n, const Rational& c1, const Rational& c2,
                             const BigInt& D) {
  if (n < 1 || D < 1) throw std::domain_error("need n >= 1 and D >= 1");
  if (!(c1 > 0 && c1 < 1 && c2 > 0 && c2 < 1))
    throw std::domain_error("demand fractions must lie strictly between 0 and 1");
  const Rational cn = c1 * n;
  if (mp::denominator(cn) != 1)
    throw std::domain_error("c1*n must be an integer");
  LowerBound b;
  b.coefficient = cn;
  b.argument = Rational(D) * c1 / c2;
  b.decimal = decimal_log3(b.coefficient, b.argument, 6);
  return b;
}

bool meets_lower_bound(long long q, const LowerBound& bound) {
  if (q < 0) return false;
  const BigInt p = mp::numerator(bound.coefficient);
  const BigInt r = mp::denominator(bound.coefficient);
  const BigInt u = mp::numerator(bound.argument);
  const BigInt v = mp::denominator(bound.argument);
  const unsigned pe = p.convert_to<unsigned>();
  const unsigned e = (r * q).convert_to<unsigned>();
  return mp::pow(BigInt(3), e) * mp::pow(v, pe) >= mp::pow(u, pe);
}

ExperimentReport humble_greedy_experiment(const ProtocolFn& protocol, int n,
                                          const Rational& c1, const Rational& c2,
                                          const BigInt& D, std::uint64_t seed) {
  const HumbleGreedySetup setup = gen_humble_greedy(n, c1, c2, D);

  // Seat permutation: which positions the adversaries sit in.
  std::mt19937_64 rng(seed);
  std::vector<std::size_t> seat(n);
  std::iota(seat.begin(), seat.end(), std::size_t{0});
  for (std::size_t i = seat.size() - 1; i > 0; --i)
    std::swap(seat[i], seat[rng() % (i + 1)]);

  Instance inst;
  inst.cake = setup.instance.cake;
  inst.measures = setup.instance.measures;
  for (int j = 0; j < n; ++j)
    inst.players.push_back({setup.instance.players[seat[j]].demand, 0});

  ExperimentReport rep;
  rep.n = n;
  rep.D = D;
  rep.c1 = c1;
  rep.c2 = c2;
  rep.seed = seed;
  rep.bound = lower_bound_value(n, c1, c2, D);
  rep.batch_upper = 2 * (n - 1) * ceil_log2(D);

  Oracle oracle(inst);
  std::vector<AdversaryValuation*> adv(n, nullptr);
  const std::size_t humble_count = setup.humble.size();
  for (int j = 0; j < n; ++j) {
    if (seat[j] >= humble_count) continue;
    auto backend = std::make_unique<AdversaryValuation>(inst.cake);
    adv[j] = backend.get();
    oracle.set_backend(j, std::move(backend));
  }

  try {
    rep.division = protocol(oracle);
  } catch (const std::exception& ex) {
    rep.violations.push_back(std::string("protocol aborted: ") + ex.what());
  }
  rep.transcript = oracle.transcript();

  // Witness instance: materialized humble measures, uniform greedy ones.
  rep.witness.cake = inst.cake;
  rep.witness.field_m = inst.field_m;
  for (int j = 0; j < n; ++j) {
    rep.witness.players.push_back({inst.players[j].demand, static_cast<std::size_t>(j)});
    rep.witness.measures.push_back(adv[j] ? adv[j]->state().materialize()
                                          : inst.measures[0]);
  }

  if (rep.division.pieces.size() != static_cast<std::size_t>(n)) {
    if (rep.violations.empty())
      rep.violations.push_back("protocol returned a division of the wrong size");
  } else {
    const VerifyReport vr = verify_division(rep.witness, rep.division);
    for (const std::string& e : vr.errors) rep.violations.push_back(e);
    for (std::size_t j = 0; j < vr.players.size(); ++j)
      if (vr.players[j].margin.sign() < 0)
        rep.violations.push_back("player " + std::to_string(j) +
                                 ": witness value below demand by " +
                                 (-vr.players[j].margin).to_string());
    for (const std::string& e : witness_mismatches(rep.witness, rep.transcript))
      rep.violations.push_back("witness inconsistency, " + e);
  }

  Scalar humble_volume, floor_sum;
  for (int j = 0; j < n; ++j) {
    ExperimentPlayer p;
    p.player = static_cast<std::size_t>(j);
    p.humble = adv[j] != nullptr;
    p.demand = inst.players[j].demand;
    p.queries = oracle.counts(static_cast<std::size_t>(j));
    if (rep.division.pieces.size() == static_cast<std::size_t>(n) &&
        j < static_cast<int>(rep.witness.measures.size()))
      p.witness_value = measure_eval(rep.witness.measures[j], rep.division.pieces[j]);
    if (adv[j]) {
      const CrumbleSet& st = adv[j]->state();
      p.refinements = st.queries();
      rep.humble_queries += p.refinements;
      p.volume_floor = Rational(st.total_value().as_rational()) /
                       Rational(mp::pow(BigInt(3), static_cast<unsigned>(st.queries())));
      if (p.refinements != p.queries.highlevel_total())
        rep.violations.push_back("player " + std::to_string(j) +
                                 ": adversary and ledger query counts disagree");
      if (rep.division.pieces.size() == static_cast<std::size_t>(n)) {
        p.committed_value = st.value_within(rep.division.pieces[j]);
        if (p.committed_value < p.demand)
          rep.violations.push_back(
              "humble player " + std::to_string(j) + ": allocated piece carries " +
              p.committed_value.to_string() + " of committed value, below demand " +
              p.demand.to_string());
        const Scalar vol = inst.cake.volume(rep.division.pieces[j]);
        humble_volume += vol;
        floor_sum += Scalar(p.volume_floor);
        if (p.committed_value.sign() > 0 && vol < Scalar(p.volume_floor))
          rep.violations.push_back("humble player " + std::to_string(j) +
                                   ": piece thinner than the crumble floor");
      }
    }
    rep.players.push_back(std::move(p));
  }
  if (floor_sum > humble_volume)
    rep.violations.push_back("crumble floors exceed the total humble volume");

  if (!meets_lower_bound(rep.humble_queries, rep.bound))
    rep.violations.push_back(
        "humble players answered " + std::to_string(rep.humble_queries) +
        " queries, below the required " + rep.bound.decimal);
  rep.slack_decimal = decimal_string(
      Rational(rep.humble_queries) -
          rep.bound.coefficient * log3_fixed(rep.bound.argument, 6),
      6);
  return rep;
}

}  // namespace cakecut
