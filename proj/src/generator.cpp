#include "cakecut/generator.hpp"

#include <random>
#include <set>
#include <stdexcept>

namespace cakecut {

namespace {

// Breakpoint grid 0, g_1/G, ..., 1 with cells-1 random interior knots, then
// weights rescaled so the total comes out exact.
Measure random_measure(std::mt19937_64& rng, int max_cells, const Scalar& total,
                       bool strictly_positive, bool allow_quad) {
  const int cells = 1 + static_cast<int>(rng() % max_cells);
  const int G = 4 * max_cells;
  std::set<int> knots;
  while (knots.size() + 1 < static_cast<std::size_t>(cells))
    knots.insert(1 + static_cast<int>(rng() % (G - 1)));

  std::vector<Scalar> breaks;
  breaks.push_back(Scalar(0));
  for (int g : knots) breaks.push_back(Scalar(Rational(g, G)));
  breaks.push_back(Scalar(1));

  std::vector<Scalar> weights;
  Scalar weighted;
  for (std::size_t j = 0; j + 1 < breaks.size(); ++j) {
    Scalar w;
    if (allow_quad && rng() % 4 == 0)
      w = Scalar::quadratic(Rational(1 + static_cast<int>(rng() % 3)),
                            Rational(1, 2), 2);
    else
      w = Scalar(static_cast<long long>(strictly_positive ? 1 + rng() % 9
                                                          : rng() % 10));
    weights.push_back(w);
    weighted += w * (breaks[j + 1] - breaks[j]);
  }
  if (weighted.is_zero()) {
    weights[0] = Scalar(1);
    weighted = breaks[1] - breaks[0];
  }

  const Scalar s = total / weighted;
  std::vector<Scalar> dens;
  for (const Scalar& w : weights) dens.push_back(s * w);
  return Measure(breaks, dens);
}

}  // namespace

Instance gen_random_instance(std::uint64_t seed, int n, const BigInt& D,
                             int max_cells) {
  if (n < 1) throw std::domain_error("need at least one player");
  if (max_cells < 1) throw std::domain_error("need at least one measure cell");
  if (D < n)
    throw std::domain_error(
        "demand total below player count: positive integer demands impossible");

  std::mt19937_64 rng(seed);
  const unsigned long long Du = D.convert_to<unsigned long long>();

  Instance inst;
  inst.cake = Cake::interval(Scalar(1));

  std::set<unsigned long long> cuts;
  while (cuts.size() + 1 < static_cast<std::size_t>(n))
    cuts.insert(1 + rng() % (Du - 1));
  BigInt prev = 0;
  for (unsigned long long c : cuts) {
    inst.players.push_back({Scalar(BigInt(c) - prev), inst.players.size()});
    prev = c;
  }
  inst.players.push_back({Scalar(D - prev), inst.players.size()});

  for (int i = 0; i < n; ++i)
    inst.measures.push_back(random_measure(rng, max_cells, Scalar(D), false, false));
  inst.validate();
  return inst;
}

Instance gen_quad_instance(std::uint64_t seed, int n, int max_cells) {
  if (n < 1) throw std::domain_error("need at least one player");
  if (max_cells < 1) throw std::domain_error("need at least one measure cell");

  std::mt19937_64 rng(seed);
  Instance inst;
  inst.cake = Cake::interval(Scalar(1));
  inst.field_m = 2;

  const Scalar total(4 * n);
  Scalar acc;
  for (int i = 0; i + 1 < n; ++i) {
    const long long u = 1 + static_cast<long long>(rng() % 3);
    const long long v = i == 0 ? 1 : static_cast<long long>(rng() % 4) - 1;
    const Scalar d = Scalar::quadratic(Rational(u), Rational(v, 4), 2);
    inst.players.push_back({d, inst.players.size()});
    acc += d;
  }
  inst.players.push_back({total - acc, inst.players.size()});

  for (int i = 0; i < n; ++i)
    inst.measures.push_back(random_measure(rng, max_cells, total, true, true));
  inst.validate();
  return inst;
}

HumbleGreedySetup gen_humble_greedy(int n, const Rational& c1,
                                    const Rational& c2, const BigInt& D) {
  if (n < 2) throw std::domain_error("the experiment needs at least two players");
  if (!(c1 > 0 && c1 < 1 && c2 > 0 && c2 < 1))
    throw std::domain_error("demand fractions must lie strictly between 0 and 1");
  const Rational hn = c1 * n, dn = c2 * n;
  if (boost::multiprecision::denominator(hn) != 1 ||
      boost::multiprecision::denominator(dn) != 1)
    throw std::domain_error("c1*n and c2*n must be integers");
  const BigInt h = boost::multiprecision::numerator(hn);
  const BigInt hd = boost::multiprecision::numerator(dn);
  if (h < 1) throw std::domain_error("need at least one humble player");
  if (hd < h) throw std::domain_error("humble demands must be positive integers");
  const BigInt g = n - h;
  const BigInt gd = D - hd;
  if (gd < g)
    throw std::domain_error("greedy demands must be positive: D too small");

  HumbleGreedySetup setup;
  Instance& inst = setup.instance;
  inst.cake = Cake::interval(Scalar(D));
  inst.measures.push_back(uniform_on(inst.cake, inst.cake.full()));
  const auto seat = [&](const BigInt& count, const BigInt& share) {
    const BigInt base = share / count, rem = share % count;
    for (BigInt i = 0; i < count; ++i)
      inst.players.push_back({Scalar(base + (i < rem ? 1 : 0)), 0});
  };
  seat(h, hd);
  for (std::size_t i = 0; i < inst.players.size(); ++i) setup.humble.push_back(i);
  seat(g, gd);
  inst.validate();
  return setup;
}

}  // namespace cakecut
