#pragma once

#include <optional>
#include <string>
#include <vector>

#include "cakecut/cake.hpp"
#include "cakecut/measure.hpp"
#include "cakecut/piece.hpp"

namespace cakecut {

enum class KnifeKind { prefix, centered, translated, sweep };

/// A monotone family of sub-pieces f(x) of a domain piece I, parameterized by
/// Lebesgue volume: lambda(f(x)) = x for x in [0, lambda(I)], and x <= y
/// implies f(x) within f(y).  Internally every kind is a family of windows in
/// the domain's packed volume coordinate, pulled back to cake coordinates, so
/// all kinds work on arbitrary union-of-interval domains:
///   prefix / sweep   window [0, x)
///   centered(mid)    window of width x around mid, spilling over once it
///                    reaches an edge of the packed domain
///   translated(k)    k congruent segments, each contributing a prefix x/k
/// `sweep` is the vertical-sweep knife on rectangle cakes; it is the prefix
/// family in volume units.
class Knife {
 public:
  static Knife prefix(const Cake& cake, const Piece& domain);
  static Knife sweep(const Cake& cake, const Piece& domain);
  /// midpoint is a cake coordinate inside the closure of the domain.
  static Knife centered(const Cake& cake, const Piece& domain, const Scalar& midpoint);
  static Knife translated(const Cake& cake, const Piece& domain, int parts);
  /// Kind-appropriate default parameters: centered picks the volume midpoint,
  /// translated uses 2 parts.
  static Knife make(KnifeKind kind, const Cake& cake, const Piece& domain);

  KnifeKind kind() const { return kind_; }
  const Piece& domain() const { return domain_; }
  const Scalar& total_volume() const { return volume_; }
  int parts() const { return parts_; }
  const Scalar& midpoint() const { return midpoint_; }

  /// f(x); domain error outside [0, lambda(I)].
  Piece piece(const Scalar& x) const;

  /// Windows of f(x) in the packed volume coordinate.
  std::vector<Interval> windows(const Scalar& x) const;

  /// All x where the slope of x -> mu(f(x)) may change, for a measure whose
  /// density is constant between the given volume-coordinate knots.
  std::vector<Scalar> x_breakpoints(const std::vector<Scalar>& vol_knots) const;

  /// Volume coordinates of the domain's interval boundaries and of the given
  /// cake-coordinate points (those inside the domain).
  std::vector<Scalar> volume_knots(const std::vector<Scalar>& cake_points) const;

  /// "prefix", "sweep", "centered:mid=<scalar>", "translated:k=<int>".
  std::string spec_string() const;
  static Knife parse_spec(const std::string& spec, const Cake& cake, const Piece& domain);

 private:
  Knife(KnifeKind kind, const Cake& cake, Piece domain);

  Scalar volume_of(const Scalar& cake_point) const;  // packed volume coordinate
  Scalar point_at(const Scalar& volume) const;       // inverse of volume_of
  Piece pull_back(const std::vector<Interval>& vol_windows) const;

  KnifeKind kind_;
  Piece domain_;
  Scalar height_;
  Scalar volume_;               // lambda(domain)
  std::vector<Scalar> cum_;     // packed volume at each interval start, + total
  int parts_ = 1;               // translated
  Scalar midpoint_;             // centered, cake coordinate
  Scalar mid_vol_;              // centered, volume coordinate
};

/// Leftmost x with mu(f(x)) == alpha, or nullopt iff alpha exceeds mu over
/// the knife's whole domain.  alpha must be >= 0; answers are exact.
std::optional<Scalar> measure_cut(const Measure& mu, const Knife& f, const Scalar& alpha);

}  // namespace cakecut
