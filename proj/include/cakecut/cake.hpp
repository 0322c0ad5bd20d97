#pragma once

#include <stdexcept>

#include "cakecut/piece.hpp"
#include "cakecut/scalar.hpp"

namespace cakecut {

enum class CakeKind { interval, rect };

/// The cake geometry.  A 1-D cake is the interval [0, length).  A 2-D
/// rectangle is represented by its vertical-sweep marginal: pieces live in
/// the sweep coordinate [0, width) and Lebesgue volume carries the height
/// factor, so all computations reduce to the 1-D case.
class Cake {
 public:
  static Cake interval(const Scalar& length) {
    if (length.sign() <= 0) throw std::domain_error("cake length must be positive");
    return Cake(CakeKind::interval, length, Scalar(1));
  }
  static Cake rect(const Scalar& width, const Scalar& height) {
    if (width.sign() <= 0 || height.sign() <= 0)
      throw std::domain_error("cake sides must be positive");
    return Cake(CakeKind::rect, width, height);
  }

  CakeKind kind() const { return kind_; }
  /// Extent of the sweep coordinate (length, or width for rectangles).
  const Scalar& extent() const { return extent_; }
  const Scalar& height() const { return height_; }

  Piece full() const { return Piece(Scalar(0), extent_); }

  bool contains(const Piece& p) const {
    if (p.empty()) return true;
    return p.intervals().front().lo.sign() >= 0 &&
           p.intervals().back().hi <= extent_;
  }

  /// Lebesgue volume of a piece (area for rectangles).
  Scalar volume(const Piece& p) const { return height_ * p.length(); }

 private:
  Cake(CakeKind k, const Scalar& extent, const Scalar& height)
      : kind_(k), extent_(extent), height_(height) {}
  CakeKind kind_;
  Scalar extent_;
  Scalar height_;
};

}  // namespace cakecut
