#pragma once

#include <vector>

#include "cakecut/cake.hpp"
#include "cakecut/piece.hpp"
#include "cakecut/scalar.hpp"

namespace cakecut {

/// A non-negative piecewise-constant measure over [0, L): breakpoints
/// 0 = x_0 < x_1 < ... < x_B = L with one density per cell.  For rectangle
/// cakes this is the sweep marginal (height already integrated in), so the
/// same arithmetic serves both geometries.  Cumulative cell values are
/// precomputed; every evaluation is exact.
class Measure {
 public:
  Measure(std::vector<Scalar> breakpoints, std::vector<Scalar> densities);

  const std::vector<Scalar>& breakpoints() const { return breaks_; }
  const std::vector<Scalar>& densities() const { return dens_; }
  const Scalar& extent() const { return breaks_.back(); }
  const Scalar& total() const { return cum_.back(); }

  /// mu([0, x)) for 0 <= x <= L.
  Scalar cdf(const Scalar& x) const;

  /// Leftmost u with cdf(u) == target, for 0 < target <= total().
  Scalar inverse_cdf(const Scalar& target) const;

  /// Pointwise scaled copy (densities * c); c must be positive.
  Measure scaled(const Scalar& c) const;

 private:
  std::vector<Scalar> breaks_;  // size B+1
  std::vector<Scalar> dens_;    // size B
  std::vector<Scalar> cum_;     // size B+1; cum_[k] = mu([0, x_k))
};

/// mu(Z); Z must lie within the measure's extent.
Scalar measure_eval(const Measure& mu, const Piece& Z);

/// Lebesgue volume as a measure: density = cake height on the support,
/// 0 elsewhere.  Total equals cake.volume(support).
Measure uniform_on(const Cake& cake, const Piece& support);

}  // namespace cakecut
