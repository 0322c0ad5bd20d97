#include "cakecut/piece.hpp"

#include <algorithm>
#include <stdexcept>

namespace cakecut {

Piece::Piece(const Scalar& lo, const Scalar& hi) {
  if (lo > hi) throw std::domain_error("interval with lo > hi");
  if (lo < hi) parts_.push_back({lo, hi});
}

Piece Piece::from_intervals(std::vector<Interval> raw) {
  std::erase_if(raw, [](const Interval& iv) { return !(iv.lo < iv.hi); });
  for (const Interval& iv : raw)
    if (iv.lo > iv.hi) throw std::domain_error("interval with lo > hi");
  std::sort(raw.begin(), raw.end(), [](const Interval& a, const Interval& b) {
    return a.lo < b.lo;
  });
  Piece out;
  for (Interval& iv : raw) {
    if (!out.parts_.empty() && iv.lo <= out.parts_.back().hi) {
      if (iv.hi > out.parts_.back().hi) out.parts_.back().hi = iv.hi;
    } else {
      out.parts_.push_back(std::move(iv));
    }
  }
  return out;
}

Scalar Piece::length() const {
  Scalar sum;
  for (const Interval& iv : parts_) sum += iv.hi - iv.lo;
  return sum;
}

std::string Piece::to_string() const {
  if (parts_.empty()) return "{}";
  std::string s;
  for (std::size_t i = 0; i < parts_.size(); ++i) {
    if (i) s += "+";
    s += "[" + parts_[i].lo.to_string() + "," + parts_[i].hi.to_string() + ")";
  }
  return s;
}

Piece Piece::parse(const std::string& s) {
  if (s == "{}") return Piece();
  std::vector<Interval> raw;
  std::size_t pos = 0;
  while (pos < s.size()) {
    if (s[pos] != '[') throw std::invalid_argument("malformed piece: '" + s + "'");
    const auto comma = s.find(',', pos);
    const auto close = s.find(')', pos);
    if (comma == std::string::npos || close == std::string::npos || comma > close)
      throw std::invalid_argument("malformed piece: '" + s + "'");
    raw.push_back({Scalar::parse(s.substr(pos + 1, comma - pos - 1)),
                   Scalar::parse(s.substr(comma + 1, close - comma - 1))});
    pos = close + 1;
    if (pos < s.size()) {
      if (s[pos] != '+') throw std::invalid_argument("malformed piece: '" + s + "'");
      ++pos;
    }
  }
  return from_intervals(std::move(raw));
}

Piece piece_union(const Piece& a, const Piece& b) {
  std::vector<Interval> raw = a.intervals();
  raw.insert(raw.end(), b.intervals().begin(), b.intervals().end());
  return Piece::from_intervals(std::move(raw));
}

Piece piece_intersect(const Piece& a, const Piece& b) {
  std::vector<Interval> raw;
  auto ia = a.intervals().begin(), ib = b.intervals().begin();
  while (ia != a.intervals().end() && ib != b.intervals().end()) {
    const Scalar lo = std::max(ia->lo, ib->lo);
    const Scalar hi = std::min(ia->hi, ib->hi);
    if (lo < hi) raw.push_back({lo, hi});
    if (ia->hi < ib->hi)
      ++ia;
    else
      ++ib;
  }
  return Piece::from_intervals(std::move(raw));
}

Piece piece_subtract(const Piece& a, const Piece& b) {
  std::vector<Interval> raw;
  auto ib = b.intervals().begin();
  for (Interval cur : a.intervals()) {
    while (ib != b.intervals().end() && ib->hi <= cur.lo) ++ib;
    auto it = ib;
    while (it != b.intervals().end() && it->lo < cur.hi) {
      if (it->lo > cur.lo) raw.push_back({cur.lo, it->lo});
      cur.lo = std::max(cur.lo, it->hi);
      if (!(cur.lo < cur.hi)) break;
      ++it;
    }
    if (cur.lo < cur.hi) raw.push_back(cur);
  }
  return Piece::from_intervals(std::move(raw));
}

bool piece_contains(const Piece& outer, const Piece& inner) {
  return piece_subtract(inner, outer).empty();
}

}  // namespace cakecut
