#include "cakecut/protocols.hpp"

#include <algorithm>
#include <stdexcept>

namespace cakecut {

BigInt integer_demand(const Scalar& d) {
  if (!d.is_rational()) throw std::domain_error("demand must be a positive integer");
  const Rational r = d.as_rational();
  if (r <= 0 || boost::multiprecision::denominator(r) != 1)
    throw std::domain_error("demand must be a positive integer");
  return boost::multiprecision::numerator(r);
}

namespace {

std::vector<BigInt> integer_demands(const Oracle& o) {
  std::vector<BigInt> d;
  d.reserve(o.n_players());
  for (std::size_t p = 0; p < o.n_players(); ++p) d.push_back(integer_demand(o.demand(p)));
  return d;
}

void give(Division& out, std::size_t player, const Piece& part) {
  out.pieces.at(player) = piece_union(out.pieces.at(player), part);
}

void batch_rec(Oracle& o, const std::vector<std::size_t>& players,
               const std::vector<BigInt>& demands, const Piece& piece, KnifeKind kind,
               Division& out) {
  if (players.size() == 1) {
    give(out, players[0], piece);
    return;
  }
  if (piece.empty()) return;

  BigInt total = 0;
  for (const BigInt& d : demands) total += d;
  const BigInt fl = total / 2;
  const BigInt ce = total - fl;

  const Knife f = Knife::make(kind, o.cake(), piece);
  std::vector<std::pair<Scalar, std::size_t>> marks;  // (position, local index)
  marks.reserve(players.size());
  for (std::size_t i = 0; i < players.size(); ++i)
    marks.emplace_back(o.proportional_cut(players[i], f, fl, ce), i);
  std::sort(marks.begin(), marks.end(), [&](const auto& l, const auto& r) {
    if (l.first != r.first) return l.first < r.first;
    return players[l.second] < players[r.second];
  });

  // Pivot: first position (in mark order) whose demand prefix covers the
  // floor half.
  BigInt acc = 0;
  std::size_t j = 0;
  while (true) {
    acc += demands[marks[j].second];
    if (acc >= fl) break;
    ++j;
  }

  const Piece left = f.piece(marks[j].first);
  const Piece right = piece_subtract(piece, left);

  std::vector<std::size_t> lp, rp;
  std::vector<BigInt> ld, rd;
  for (std::size_t t = 0; t < j; ++t) {
    lp.push_back(players[marks[t].second]);
    ld.push_back(demands[marks[t].second]);
  }
  lp.push_back(players[marks[j].second]);
  ld.push_back(demands[marks[j].second] - acc + fl);  // positive by pivot minimality
  if (acc - fl > 0) {
    rp.push_back(players[marks[j].second]);
    rd.push_back(acc - fl);
  }
  for (std::size_t t = j + 1; t < marks.size(); ++t) {
    rp.push_back(players[marks[t].second]);
    rd.push_back(demands[marks[t].second]);
  }

  batch_rec(o, lp, ld, left, kind, out);
  if (!rp.empty()) batch_rec(o, rp, rd, right, kind, out);
}

}  // namespace

void batch_near_half_on(Oracle& oracle, const std::vector<std::size_t>& players,
                        const std::vector<BigInt>& demands, const Piece& piece,
                        KnifeKind kind, Division& out) {
  if (players.empty() || players.size() != demands.size())
    throw std::invalid_argument("player and demand lists must match and be nonempty");
  BigInt total = 0;
  for (const BigInt& d : demands) {
    if (d <= 0) throw std::domain_error("demand must be a positive integer");
    total += d;
  }
  const long long before = oracle.totals().highlevel_total();
  batch_rec(oracle, players, demands, piece, kind, out);
  const long long used = oracle.totals().highlevel_total() - before;
  const long long cap =
      2 * (static_cast<long long>(players.size()) - 1) * ceil_log2(total);
  if (used > cap)
    throw std::logic_error("query bound exceeded: " + std::to_string(used) + " > " +
                           std::to_string(cap));
}

Division batch_near_half(Oracle& oracle, KnifeKind kind) {
  Division out(oracle.n_players());
  std::vector<std::size_t> players(oracle.n_players());
  for (std::size_t p = 0; p < players.size(); ++p) players[p] = p;
  batch_near_half_on(oracle, players, integer_demands(oracle), oracle.cake().full(),
                     kind, out);
  return out;
}

void cut_near_halves_on(Oracle& oracle, std::size_t pa, std::size_t pb,
                        const BigInt& da, const BigInt& db, const Piece& piece,
                        KnifeKind kind, Division& out) {
  if (da <= 0 || db <= 0) throw std::domain_error("claims must be positive integers");
  const long long before = oracle.totals().highlevel_total();
  BigInt claim[2] = {da, db};
  const std::size_t id[2] = {pa, pb};
  Piece R = piece;
  Scalar value[2] = {oracle.reference_value(pa, R), oracle.reference_value(pb, R)};

  while (true) {
    if (R.empty()) break;
    if (claim[0] == 0) {
      give(out, id[1], R);
      break;
    }
    if (claim[1] == 0) {
      give(out, id[0], R);
      break;
    }

    const BigInt total = claim[0] + claim[1];
    const BigInt fl = total / 2;
    const BigInt ce = total - fl;
    const int c = (claim[0] < claim[1] || (claim[0] == claim[1] && id[0] < id[1])) ? 0 : 1;
    const int k = 1 - c;

    const Knife f = Knife::make(kind, oracle.cake(), R);
    const Scalar x = oracle.proportional_cut(id[c], f, fl, ce);
    const Piece left = f.piece(x);
    const Piece rest = piece_subtract(R, left);
    const Scalar vleft = oracle.eval(id[k], left);
    const Scalar vrest = value[k] - vleft;

    // Take the side worth more relative to its claim share; on a tie take
    // the complement of f(x).
    if ((vleft * Scalar(ce) - vrest * Scalar(fl)).sign() > 0) {
      give(out, id[k], left);
      claim[k] -= fl;
      R = rest;
      value[k] = vrest;
      value[c] = value[c] * Scalar(ce) / Scalar(total);
    } else {
      give(out, id[k], rest);
      claim[k] -= ce;
      R = left;
      value[k] = vleft;
      value[c] = value[c] * Scalar(fl) / Scalar(total);
    }
  }

  const long long used = oracle.totals().highlevel_total() - before;
  const long long cap = 2 * ceil_log2(da + db);
  if (used > cap)
    throw std::logic_error("query bound exceeded: " + std::to_string(used) + " > " +
                           std::to_string(cap));
}

Division cut_near_halves_2p(Oracle& oracle, KnifeKind kind) {
  if (oracle.n_players() != 2)
    throw std::domain_error("the two-player exchange needs exactly two players");
  Division out(2);
  const auto d = integer_demands(oracle);
  cut_near_halves_on(oracle, 0, 1, d[0], d[1], oracle.cake().full(), kind, out);
  return out;
}

Division recursive_cut_near_halves(Oracle& oracle, KnifeKind kind) {
  const std::size_t n = oracle.n_players();
  Division out(n);
  const auto d = integer_demands(oracle);
  if (n == 1) {
    out.pieces[0] = oracle.cake().full();
    return out;
  }
  const long long before = oracle.totals().highlevel_total();
  cut_near_halves_on(oracle, 0, 1, d[0], d[1], oracle.cake().full(), kind, out);
  BigInt held = d[0] + d[1];
  long long cap = 2 * ceil_log2(held);
  for (std::size_t k = 2; k < n; ++k) {
    for (std::size_t i = 0; i < k; ++i) {
      const Piece challenged = out.pieces[i];
      if (challenged.empty()) continue;
      out.pieces[i] = Piece();
      cut_near_halves_on(oracle, i, k, held, d[k], challenged, kind, out);
    }
    cap += 2 * static_cast<long long>(k) * ceil_log2(held + d[k]);
    held += d[k];
  }
  const long long used = oracle.totals().highlevel_total() - before;
  if (used > cap)
    throw std::logic_error("query bound exceeded: " + std::to_string(used) + " > " +
                           std::to_string(cap));
  return out;
}

Instance clone_instance(const Instance& inst, std::vector<std::size_t>& owner) {
  inst.validate();
  BigInt D = 0;
  std::vector<BigInt> d;
  for (const Player& p : inst.players) {
    d.push_back(integer_demand(p.demand));
    D += d.back();
  }
  if (D > 10'000'000) throw std::domain_error("clone reduction: total demand too large");

  Instance clones;
  clones.cake = inst.cake;
  clones.measures = inst.measures;
  clones.field_m = inst.field_m;
  owner.clear();
  for (std::size_t i = 0; i < inst.n(); ++i)
    for (BigInt c = 0; c < d[i]; ++c) {
      clones.players.push_back({Scalar(1), inst.players[i].measure_index});
      owner.push_back(i);
    }
  return clones;
}

CloneRun clone_transform(const Instance& inst, KnifeKind kind, bool record_transcript) {
  const std::size_t n = inst.n();
  std::vector<std::size_t> owner;
  Instance clones = clone_instance(inst, owner);
  const BigInt D = clones.players.size();

  Oracle co(std::move(clones), OracleOptions{record_transcript});
  const Division cdiv = batch_near_half(co, kind);

  CloneRun run;
  run.D = D;
  run.division = Division(n);
  run.counts.resize(n);
  for (std::size_t c = 0; c < owner.size(); ++c) {
    give(run.division, owner[c], cdiv.pieces[c]);
    run.counts[owner[c]] += co.counts(c);
  }
  for (const QueryCounts& qc : run.counts) run.totals += qc;
  run.transcript = co.transcript();
  for (TranscriptEntry& e : run.transcript)
    e.player = static_cast<int>(owner[static_cast<std::size_t>(e.player)]);
  return run;
}

}  // namespace cakecut
