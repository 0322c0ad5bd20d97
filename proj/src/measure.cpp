#include "cakecut/measure.hpp"

#include <stdexcept>

namespace cakecut {

Measure::Measure(std::vector<Scalar> breakpoints, std::vector<Scalar> densities)
    : breaks_(std::move(breakpoints)), dens_(std::move(densities)) {
  if (breaks_.size() < 2 || dens_.size() + 1 != breaks_.size())
    throw std::invalid_argument("measure needs B+1 breakpoints for B cells");
  if (!breaks_.front().is_zero())
    throw std::invalid_argument("measure breakpoints must start at 0");
  for (std::size_t i = 0; i + 1 < breaks_.size(); ++i)
    if (!(breaks_[i] < breaks_[i + 1]))
      throw std::invalid_argument("measure breakpoints must be strictly increasing");
  for (const Scalar& d : dens_)
    if (d.sign() < 0) throw std::invalid_argument("measure density must be non-negative");
  cum_.resize(breaks_.size());
  cum_[0] = Scalar(0);
  for (std::size_t i = 0; i < dens_.size(); ++i)
    cum_[i + 1] = cum_[i] + dens_[i] * (breaks_[i + 1] - breaks_[i]);
}

Scalar Measure::cdf(const Scalar& x) const {
  if (x.sign() < 0 || x > extent())
    throw std::domain_error("cdf argument outside the cake");
  // Largest cell k with x_k <= x.
  std::size_t lo = 0, hi = breaks_.size() - 1;
  while (lo < hi) {
    const std::size_t mid = (lo + hi + 1) / 2;
    if (breaks_[mid] <= x)
      lo = mid;
    else
      hi = mid - 1;
  }
  if (lo + 1 == breaks_.size()) return cum_.back();
  return cum_[lo] + dens_[lo] * (x - breaks_[lo]);
}

Scalar Measure::inverse_cdf(const Scalar& target) const {
  if (target.sign() <= 0 || target > total())
    throw std::domain_error("inverse_cdf target outside (0, total]");
  // Smallest cell k with cum_[k+1] >= target; minimality forces
  // cum_[k] < target, so the cell has positive density.
  std::size_t lo = 0, hi = dens_.size() - 1;
  while (lo < hi) {
    const std::size_t mid = (lo + hi) / 2;
    if (cum_[mid + 1] >= target)
      hi = mid;
    else
      lo = mid + 1;
  }
  return breaks_[lo] + (target - cum_[lo]) / dens_[lo];
}

Measure Measure::scaled(const Scalar& c) const {
  if (c.sign() <= 0) throw std::domain_error("measure scale must be positive");
  std::vector<Scalar> d = dens_;
  for (Scalar& v : d) v *= c;
  return Measure(breaks_, std::move(d));
}

Scalar measure_eval(const Measure& mu, const Piece& Z) {
  if (!Z.empty()) {
    if (Z.intervals().front().lo.sign() < 0 || Z.intervals().back().hi > mu.extent())
      throw std::domain_error("piece outside the cake");
  }
  Scalar sum;
  for (const Interval& iv : Z.intervals()) sum += mu.cdf(iv.hi) - mu.cdf(iv.lo);
  return sum;
}

Measure uniform_on(const Cake& cake, const Piece& support) {
  if (!cake.contains(support)) throw std::domain_error("support outside the cake");
  std::vector<Scalar> breaks{Scalar(0)};
  std::vector<Scalar> dens;
  for (const Interval& iv : support.intervals()) {
    if (iv.lo > breaks.back()) {
      dens.push_back(Scalar(0));
      breaks.push_back(iv.lo);
    }
    dens.push_back(cake.height());
    breaks.push_back(iv.hi);
  }
  if (breaks.back() < cake.extent()) {
    dens.push_back(Scalar(0));
    breaks.push_back(cake.extent());
  }
  if (dens.empty()) {
    dens.push_back(Scalar(0));
    breaks.push_back(cake.extent());
  }
  return Measure(std::move(breaks), std::move(dens));
}

}  // namespace cakecut
