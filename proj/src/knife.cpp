#include "cakecut/knife.hpp"

#include <algorithm>
#include <stdexcept>

namespace cakecut {

Knife::Knife(KnifeKind kind, const Cake& cake, Piece domain)
    : kind_(kind), domain_(std::move(domain)), height_(cake.height()) {
  if (!cake.contains(domain_)) throw std::domain_error("knife domain outside the cake");
  cum_.push_back(Scalar(0));
  for (const Interval& iv : domain_.intervals())
    cum_.push_back(cum_.back() + height_ * (iv.hi - iv.lo));
  volume_ = cum_.back();
}

Knife Knife::prefix(const Cake& cake, const Piece& domain) {
  return Knife(KnifeKind::prefix, cake, domain);
}

Knife Knife::sweep(const Cake& cake, const Piece& domain) {
  return Knife(KnifeKind::sweep, cake, domain);
}

Knife Knife::centered(const Cake& cake, const Piece& domain, const Scalar& midpoint) {
  if (domain.empty()) throw std::domain_error("centered knife needs a nonempty domain");
  Knife k(KnifeKind::centered, cake, domain);
  k.midpoint_ = midpoint;
  k.mid_vol_ = k.volume_of(midpoint);
  return k;
}

Knife Knife::translated(const Cake& cake, const Piece& domain, int parts) {
  if (domain.empty()) throw std::domain_error("translated knife needs a nonempty domain");
  if (parts < 1) throw std::domain_error("translated knife needs parts >= 1");
  Knife k(KnifeKind::translated, cake, domain);
  k.parts_ = parts;
  return k;
}

Knife Knife::make(KnifeKind kind, const Cake& cake, const Piece& domain) {
  switch (kind) {
    case KnifeKind::prefix:
      return prefix(cake, domain);
    case KnifeKind::sweep:
      return sweep(cake, domain);
    case KnifeKind::translated:
      return translated(cake, domain, 2);
    case KnifeKind::centered: {
      Knife probe(KnifeKind::prefix, cake, domain);
      if (domain.empty())
        throw std::domain_error("centered knife needs a nonempty domain");
      return centered(cake, domain, probe.point_at(probe.volume_ / Scalar(2)));
    }
  }
  throw std::domain_error("unknown knife kind");
}

Scalar Knife::volume_of(const Scalar& cake_point) const {
  const auto& ivs = domain_.intervals();
  for (std::size_t t = 0; t < ivs.size(); ++t) {
    if (cake_point >= ivs[t].lo && cake_point <= ivs[t].hi)
      return cum_[t] + height_ * (cake_point - ivs[t].lo);
  }
  throw std::domain_error("point outside the knife domain");
}

Scalar Knife::point_at(const Scalar& volume) const {
  if (volume.sign() < 0 || volume > volume_)
    throw std::domain_error("volume coordinate outside the domain");
  const auto& ivs = domain_.intervals();
  for (std::size_t t = 0; t < ivs.size(); ++t) {
    if (volume <= cum_[t + 1])
      return ivs[t].lo + (volume - cum_[t]) / height_;
  }
  throw std::domain_error("volume coordinate outside the domain");
}

Piece Knife::pull_back(const std::vector<Interval>& vol_windows) const {
  std::vector<Interval> raw;
  const auto& ivs = domain_.intervals();
  for (const Interval& w : vol_windows) {
    for (std::size_t t = 0; t < ivs.size(); ++t) {
      const Scalar lo = std::max(w.lo, cum_[t]);
      const Scalar hi = std::min(w.hi, cum_[t + 1]);
      if (lo < hi)
        raw.push_back({ivs[t].lo + (lo - cum_[t]) / height_,
                       ivs[t].lo + (hi - cum_[t]) / height_});
    }
  }
  return Piece::from_intervals(std::move(raw));
}

std::vector<Interval> Knife::windows(const Scalar& x) const {
  if (x.sign() < 0 || x > volume_)
    throw std::domain_error("knife position outside [0, lambda(I)]");
  switch (kind_) {
    case KnifeKind::prefix:
    case KnifeKind::sweep:
      return {{Scalar(0), x}};
    case KnifeKind::centered: {
      const Scalar half = x / Scalar(2);
      Scalar l = mid_vol_ - half, r = mid_vol_ + half;
      if (l.sign() < 0) {
        l = Scalar(0);
        r = x;
      } else if (r > volume_) {
        r = volume_;
        l = volume_ - x;
      }
      return {{l, r}};
    }
    case KnifeKind::translated: {
      std::vector<Interval> w;
      const Scalar seg = volume_ / Scalar(parts_);
      const Scalar share = x / Scalar(parts_);
      for (int i = 0; i < parts_; ++i) {
        const Scalar s = seg * Scalar(i);
        w.push_back({s, s + share});
      }
      return w;
    }
  }
  throw std::domain_error("unknown knife kind");
}

Piece Knife::piece(const Scalar& x) const { return pull_back(windows(x)); }

std::vector<Scalar> Knife::volume_knots(const std::vector<Scalar>& cake_points) const {
  std::vector<Scalar> out = cum_;
  const auto& ivs = domain_.intervals();
  for (const Scalar& p : cake_points) {
    for (std::size_t t = 0; t < ivs.size(); ++t) {
      if (p >= ivs[t].lo && p <= ivs[t].hi) {
        out.push_back(cum_[t] + height_ * (p - ivs[t].lo));
        break;
      }
    }
  }
  return out;
}

std::vector<Scalar> Knife::x_breakpoints(const std::vector<Scalar>& vol_knots) const {
  std::vector<Scalar> out;
  switch (kind_) {
    case KnifeKind::prefix:
    case KnifeKind::sweep:
      out = vol_knots;
      break;
    case KnifeKind::centered: {
      const Scalar& a = mid_vol_;
      const Scalar b = volume_ - a;
      out.push_back(Scalar(2) * std::min(a, b));
      for (const Scalar& v : vol_knots) {
        // Unclamped endpoint crossings, then one-sided growth after a clamp.
        out.push_back(Scalar(2) * (a - v));
        out.push_back(Scalar(2) * (v - a));
        out.push_back(v);
        out.push_back(volume_ - v);
      }
      break;
    }
    case KnifeKind::translated: {
      const Scalar seg = volume_ / Scalar(parts_);
      for (int i = 0; i < parts_; ++i) {
        const Scalar s = seg * Scalar(i);
        for (const Scalar& v : vol_knots) {
          const Scalar x = Scalar(parts_) * (v - s);
          if (x.sign() >= 0 && x <= volume_) out.push_back(x);
        }
      }
      break;
    }
  }
  return out;
}

std::string Knife::spec_string() const {
  switch (kind_) {
    case KnifeKind::prefix:
      return "prefix";
    case KnifeKind::sweep:
      return "sweep";
    case KnifeKind::centered:
      return "centered:mid=" + midpoint_.to_string();
    case KnifeKind::translated:
      return "translated:k=" + std::to_string(parts_);
  }
  throw std::domain_error("unknown knife kind");
}

Knife Knife::parse_spec(const std::string& spec, const Cake& cake, const Piece& domain) {
  if (spec == "prefix") return prefix(cake, domain);
  if (spec == "sweep") return sweep(cake, domain);
  if (spec.rfind("centered:mid=", 0) == 0)
    return centered(cake, domain, Scalar::parse(spec.substr(13)));
  if (spec.rfind("translated:k=", 0) == 0)
    return translated(cake, domain, std::stoi(spec.substr(13)));
  throw std::invalid_argument("malformed knife spec: '" + spec + "'");
}

std::optional<Scalar> measure_cut(const Measure& mu, const Knife& f, const Scalar& alpha) {
  if (alpha.sign() < 0) throw std::domain_error("cut target must be non-negative");
  if (alpha.is_zero()) return Scalar(0);
  const Scalar total = measure_eval(mu, f.domain());
  if (alpha > total) return std::nullopt;

  // Fast path: prefix-style knife over a contiguous domain inverts the CDF.
  if ((f.kind() == KnifeKind::prefix || f.kind() == KnifeKind::sweep) &&
      f.domain().intervals().size() == 1) {
    const Interval& dom = f.domain().intervals().front();
    const Scalar target = mu.cdf(dom.lo) + alpha;
    const Scalar u = mu.inverse_cdf(target);
    return (u - dom.lo) * (f.total_volume() / (dom.hi - dom.lo));
  }

  std::vector<Scalar> cand = f.x_breakpoints(f.volume_knots(mu.breakpoints()));
  cand.push_back(Scalar(0));
  cand.push_back(f.total_volume());
  std::erase_if(cand, [&](const Scalar& x) {
    return x.sign() < 0 || x > f.total_volume();
  });
  std::sort(cand.begin(), cand.end());
  cand.erase(std::unique(cand.begin(), cand.end()), cand.end());

  Scalar prev_x(0), prev_g(0);
  for (const Scalar& x : cand) {
    const Scalar g = measure_eval(mu, f.piece(x));
    if (g >= alpha) {
      // mu(f(.)) is linear on [prev_x, x] and first reaches alpha inside it.
      return prev_x + (alpha - prev_g) * (x - prev_x) / (g - prev_g);
    }
    prev_x = x;
    prev_g = g;
  }
  return f.total_volume();  // unreachable: g(lambda) = total >= alpha
}

}  // namespace cakecut
