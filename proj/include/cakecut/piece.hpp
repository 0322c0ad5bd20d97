#pragma once

#include <string>
#include <vector>

#include "cakecut/scalar.hpp"

namespace cakecut {

/// Half-open interval [lo, hi).
struct Interval {
  Scalar lo;
  Scalar hi;
  friend bool operator==(const Interval& a, const Interval& b) {
    return a.lo == b.lo && a.hi == b.hi;
  }
};

/// A finite union of half-open intervals in canonical form: sorted, pairwise
/// disjoint, adjacent intervals merged, no empty intervals.  The empty piece
/// has no intervals.
class Piece {
 public:
  Piece() = default;
  /// Single interval; lo == hi gives the empty piece, lo > hi is an error.
  Piece(const Scalar& lo, const Scalar& hi);
  /// Canonicalizes an arbitrary interval list (overlaps allowed).
  static Piece from_intervals(std::vector<Interval> raw);

  const std::vector<Interval>& intervals() const { return parts_; }
  bool empty() const { return parts_.empty(); }
  /// Sum of interval lengths (1-D; cake height is applied by Cake::volume).
  Scalar length() const;

  friend bool operator==(const Piece& a, const Piece& b) {
    return a.parts_ == b.parts_;
  }

  /// "{}" or "[lo,hi)+[lo,hi)+..."
  std::string to_string() const;
  static Piece parse(const std::string& s);

 private:
  std::vector<Interval> parts_;
};

Piece piece_union(const Piece& a, const Piece& b);
Piece piece_intersect(const Piece& a, const Piece& b);
/// Set difference a \ b.
Piece piece_subtract(const Piece& a, const Piece& b);
/// True iff inner is a subset of outer.
bool piece_contains(const Piece& outer, const Piece& inner);

}  // namespace cakecut
