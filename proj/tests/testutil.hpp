#pragma once

// Shared helpers for the unit-test binaries: a deterministic RNG wrapper
// (mt19937_64 with plain modulo mapping, so sequences are identical on every
// platform) and random generators for exact scalars.

#include <cstdint>
#include <random>
#include <set>

#include "cakecut/oracle.hpp"
#include "cakecut/scalar.hpp"

namespace testutil {

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : eng_(seed) {}

  std::uint64_t next() { return eng_(); }

  // Uniform-ish integer in [lo, hi]; modulo bias is irrelevant for tests.
  long long range(long long lo, long long hi) {
    return lo + static_cast<long long>(next() % static_cast<std::uint64_t>(hi - lo + 1));
  }

 private:
  std::mt19937_64 eng_;
};

inline cakecut::Rational rand_rational(Rng& rng, long long mag) {
  return cakecut::Rational(rng.range(-mag, mag), rng.range(1, mag));
}

inline cakecut::Scalar rand_quad(Rng& rng, long long mag, std::int64_t m = 2) {
  return cakecut::Scalar::quadratic(rand_rational(rng, mag), rand_rational(rng, mag), m);
}

// Step measure over the cake's extent with the given exact total.
inline cakecut::Measure step_measure_with_total(Rng& rng, const cakecut::Cake& cake,
                                                int cells, const cakecut::Scalar& total) {
  using cakecut::Rational;
  using cakecut::Scalar;
  std::vector<Scalar> breaks{Scalar(0)};
  std::set<long long> grid;
  while (static_cast<int>(grid.size()) < cells - 1) grid.insert(rng.range(1, 16 * cells - 1));
  for (long long g : grid)
    breaks.push_back(cake.extent() * Scalar(Rational(g, 16 * cells)));
  breaks.push_back(cake.extent());
  std::vector<Scalar> dens;
  Scalar sum;
  for (int i = 0; i < cells; ++i) {
    dens.push_back(Scalar(rng.range(0, 9)));
    sum += dens.back() * (breaks[i + 1] - breaks[i]);
  }
  if (sum.is_zero()) {
    dens[0] = Scalar(1);
    sum = breaks[1];
  }
  const Scalar c = total / sum;
  for (Scalar& d : dens) d *= c;
  return cakecut::Measure(std::move(breaks), std::move(dens));
}

// n players with random integer demands in [1, dmax], one random measure each.
inline cakecut::Instance random_integer_instance(Rng& rng, int n, long long dmax,
                                                 int cells, bool rect = false) {
  using cakecut::Scalar;
  cakecut::Instance inst;
  inst.cake = rect ? cakecut::Cake::rect(Scalar(2), Scalar(3))
                   : cakecut::Cake::interval(Scalar(1));
  Scalar total;
  for (int i = 0; i < n; ++i) {
    inst.players.push_back({Scalar(rng.range(1, dmax)), static_cast<std::size_t>(i)});
    total += inst.players.back().demand;
  }
  for (int i = 0; i < n; ++i)
    inst.measures.push_back(step_measure_with_total(rng, inst.cake, cells, total));
  return inst;
}

}  // namespace testutil
