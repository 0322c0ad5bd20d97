#include "cakecut/irrational.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace cakecut {

std::vector<Rational> round_up_demands(const std::vector<Scalar>& demands,
                                       const Scalar& capacity) {
  Scalar sum;
  for (const Scalar& d : demands) sum += d;
  if (!(sum < capacity))
    throw std::domain_error("rounding up needs strict slack below the capacity");

  for (int t = 1;; ++t) {
    std::vector<Rational> rounded;
    Rational rsum = 0;
    for (const Scalar& d : demands) {
      Rational r;
      if (d.is_rational())
        r = d.as_rational();
      else
        r = Rational((d * Scalar(pow10(t))).ceil(), pow10(t));
      rounded.push_back(r);
      rsum += r;
    }
    if (Scalar(rsum) < capacity) return rounded;
  }
}

namespace {

struct Node {
  SubInstanceSpec::Tag tag = SubInstanceSpec::Tag::root;
  Piece piece;
  std::vector<std::size_t> players;
  std::vector<Scalar> demands;
  std::vector<Scalar> scale;   // true measure * scale = node measure
  Scalar common;               // node value of `piece` for every player
};

void give(Division& out, std::size_t player, const Piece& part) {
  out.pieces.at(player) = piece_union(out.pieces.at(player), part);
}

bool all_rational(const std::vector<Scalar>& ds) {
  return std::all_of(ds.begin(), ds.end(), [](const Scalar& d) { return d.is_rational(); });
}

// Demands are rational here: scale them to integers and let the batch
// protocol finish the node.  Ratio queries are normalization-free, so no
// measure object is rescaled.
void dispatch_batch(Oracle& oracle, Node&& node, const std::vector<Rational>& rho,
                    KnifeKind kind, IrrationalRun& run) {
  BigInt L = 1;
  for (const Rational& r : rho)
    L = boost::multiprecision::lcm(L, BigInt(boost::multiprecision::denominator(r)));
  std::vector<BigInt> e;
  for (const Rational& r : rho)
    e.push_back(BigInt(boost::multiprecision::numerator(r)) *
                (L / BigInt(boost::multiprecision::denominator(r))));
  batch_near_half_on(oracle, node.players, e, node.piece, kind, run.division);

  SubInstanceSpec spec;
  spec.tag = node.tag;
  spec.cake_piece = node.piece;
  spec.players = node.players;
  spec.demands = std::move(node.demands);
  spec.rationalized = rho;
  spec.rescale = std::move(node.scale);
  spec.common_value = node.common;
  run.rationalized.push_back(std::move(spec));
}

void solve(Oracle& oracle, Node&& node, KnifeKind kind, IrrationalRun& run) {
  if (node.players.empty()) return;
  if (node.players.size() == 1) {
    give(run.division, node.players[0], node.piece);
    return;
  }
  if (all_rational(node.demands)) {
    std::vector<Rational> rho;
    for (const Scalar& d : node.demands) rho.push_back(d.as_rational());
    dispatch_batch(oracle, std::move(node), rho, kind, run);
    return;
  }

  run.levels += 1;
  const std::size_t n = node.players.size();
  std::vector<std::size_t> ord(n);
  std::iota(ord.begin(), ord.end(), std::size_t{0});
  std::sort(ord.begin(), ord.end(), [&](std::size_t l, std::size_t r) {
    if (node.demands[l] != node.demands[r]) return node.demands[l] < node.demands[r];
    return node.players[l] < node.players[r];
  });
  std::vector<std::size_t> players;
  std::vector<Scalar> demands, scale;
  for (std::size_t t : ord) {
    players.push_back(node.players[t]);
    demands.push_back(node.demands[t]);
    scale.push_back(node.scale[t]);
  }

  const Scalar& C = node.common;
  const Scalar& d1 = demands[0];

  // The smallest claimant marks off a piece she values exactly at her claim.
  const Knife f = Knife::make(kind, oracle.cake(), node.piece);
  const auto x = oracle.cut(players[0], f, d1 / scale[0]);
  if (!x) throw std::logic_error("claim mark not placeable: value invariant broken");
  const Piece A = f.piece(*x);
  const Piece rest = piece_subtract(node.piece, A);

  // Everyone appraises it.
  std::vector<Scalar> a;
  for (std::size_t i = 0; i < n; ++i)
    a.push_back(scale[i] * oracle.eval(players[i], A));

  std::size_t j = 0;
  for (std::size_t i = 1; i < n; ++i)
    if (a[i] > a[j] || (a[i] == a[j] && players[i] < players[j])) j = i;
  const Scalar eps = a[j] - d1;

  if (eps.is_zero()) {
    // Nobody values the mark above its nominal claim: it settles the
    // smallest claimant, the rest continue on what is left.
    give(run.division, players[0], A);
    Node next;
    next.tag = SubInstanceSpec::Tag::I1;
    next.piece = rest;
    next.common = C - d1;
    for (std::size_t i = 1; i < n; ++i) {
      next.players.push_back(players[i]);
      next.demands.push_back(demands[i]);
      next.scale.push_back(scale[i] * (C - d1) / (C - a[i]));
    }
    solve(oracle, std::move(next), kind, run);
    return;
  }

  // The mark is contested: split into the mark itself (without the marker,
  // the top appraiser absorbing her claim) and the remainder (with demands
  // adjusted so the exact guarantees telescope).
  Node inside;
  inside.tag = SubInstanceSpec::Tag::I2a;
  inside.piece = A;
  inside.common = C;
  for (std::size_t i = 1; i < n; ++i) {
    if (a[i].sign() <= 0) continue;
    inside.players.push_back(players[i]);
    inside.demands.push_back(i == j ? demands[i] + d1 : demands[i]);
    inside.scale.push_back(scale[i] * C / a[i]);
  }

  Node outside;
  outside.tag = SubInstanceSpec::Tag::I2b_rationalized;
  outside.piece = rest;
  outside.common = C;
  outside.players.push_back(players[0]);
  outside.demands.push_back(d1 + d1 * d1 / (C - d1));
  outside.scale.push_back(scale[0] * C / (C - d1));
  for (std::size_t i = 1; i < n; ++i) {
    if (a[i] == C) continue;  // nothing left outside for this player
    const Scalar di =
        i == j ? demands[i] - d1 * (d1 + eps) / (C - (d1 + eps)) : demands[i];
    if (di.sign() <= 0) continue;  // the inside share already covers the claim
    outside.players.push_back(players[i]);
    outside.demands.push_back(di);
    outside.scale.push_back(scale[i] * C / (C - a[i]));
  }

  solve(oracle, std::move(inside), kind, run);

  if (outside.players.size() == 1) {
    give(run.division, outside.players[0], outside.piece);
    return;
  }
  const auto rho = round_up_demands(outside.demands, C);
  dispatch_batch(oracle, std::move(outside), rho, kind, run);
}

}  // namespace

IrrationalRun irrational_divide(Oracle& oracle, KnifeKind kind) {
  IrrationalRun run;
  run.division = Division(oracle.n_players());

  Node root;
  root.tag = SubInstanceSpec::Tag::root;
  root.piece = oracle.cake().full();
  root.common = oracle.instance().total_demand();
  for (std::size_t p = 0; p < oracle.n_players(); ++p) {
    root.players.push_back(p);
    root.demands.push_back(oracle.demand(p));
    root.scale.push_back(Scalar(1));
  }
  solve(oracle, std::move(root), kind, run);

  if (run.rationalized.size() + 1 > oracle.n_players())
    throw std::logic_error("decomposition produced too many rational nodes");
  return run;
}

}  // namespace cakecut
