#pragma once

#include "nervekit/rational.hpp"

#include <algorithm>
#include <utility>
#include <vector>

namespace nervekit {

/// Open interval (lo, hi) with 0 <= lo < hi <= 1.
struct Interval {
  Rational lo;
  Rational hi;
  friend bool operator==(const Interval&, const Interval&) = default;
};

/// A connected open arc (lo, hi) of R/Z with 0 <= lo < 1 and lo < hi <= lo + 1,
/// or the whole circle when `full` is set. Length 1 means the circle minus lo.
struct ArcComponent {
  Rational lo;
  Rational hi;
  bool full = false;

  Rational length() const { return full ? Rational(1) : hi - lo; }
  friend bool operator==(const ArcComponent&, const ArcComponent&) = default;
};

namespace detail {

inline Rational circle_norm(const Rational& t) {
  Rational f = frac(t);
  Rational g = 1 - f;
  return f < g ? f : g;
}

// True when the closed real interval [p, q] contains a point of c + Z.
inline bool closed_hits(const Rational& p, const Rational& q, const Rational& c) {
  Rational k = Rational(floor_of(q - c));
  return k + c >= p;
}

}  // namespace detail

/// Infimum and supremum of the circle distance between points of two arcs.
inline std::pair<Rational, Rational> arc_distance_range(const ArcComponent& a, const ArcComponent& b) {
  const Rational half(1, 2);
  if (a.full || b.full || a.length() + b.length() >= 1) return {Rational(0), half};
  // Differences y - x for x in a, y in b sweep the open arc (b.lo - a.hi, b.hi - a.lo).
  Rational p = b.lo - a.hi;
  Rational q = b.hi - a.lo;
  Rational gp = detail::circle_norm(p);
  Rational gq = detail::circle_norm(q);
  Rational inf = detail::closed_hits(p, q, Rational(0)) ? Rational(0) : std::min(gp, gq);
  Rational sup = detail::closed_hits(p, q, half) ? half : std::max(gp, gq);
  return {inf, sup};
}

/// Finite union of open arcs of R/Z in canonical form: sorted, pairwise disjoint open
/// intervals inside [0, 1] plus a flag for the point 0. When the flag is set the list
/// starts at 0 and ends at 1, so the set stays open.
class ArcUnion {
 public:
  ArcUnion() = default;

  static ArcUnion full() {
    ArcUnion u;
    u.iv_.push_back({Rational(0), Rational(1)});
    u.zero_ = true;
    return u;
  }

  /// The image in R/Z of the real open interval (a, b).
  static ArcUnion arc(const Rational& a, const Rational& b) {
    if (!(a < b)) throw Error("arc endpoints must satisfy a < b");
    Rational len = b - a;
    if (len > 1) return full();
    ArcUnion u;
    Rational s = frac(a);
    Rational e = s + len;
    if (e <= 1) {
      u.iv_.push_back({s, e});
    } else {
      u.iv_.push_back({Rational(0), e - 1});
      u.iv_.push_back({s, Rational(1)});
      u.zero_ = true;
    }
    return u;
  }

  static ArcUnion from_component(const ArcComponent& c) { return c.full ? full() : arc(c.lo, c.hi); }

  static ArcUnion from_components(const std::vector<ArcComponent>& cs) {
    ArcUnion u;
    for (const auto& c : cs) {
      if (c.full) return full();
      ArcUnion piece = arc(c.lo, c.hi);
      u.iv_.insert(u.iv_.end(), piece.iv_.begin(), piece.iv_.end());
      u.zero_ = u.zero_ || piece.zero_;
    }
    u.normalize();
    return u;
  }

  bool empty() const { return iv_.empty(); }
  bool is_full() const { return zero_ && iv_.size() == 1; }
  bool contains_zero() const { return zero_; }
  const std::vector<Interval>& intervals() const { return iv_; }

  bool contains(const Rational& x) const {
    Rational y = frac(x);
    if (y == 0) return zero_;
    auto it = std::partition_point(iv_.begin(), iv_.end(), [&](const Interval& i) { return i.lo < y; });
    if (it == iv_.begin()) return false;
    --it;
    return y < it->hi;
  }

  ArcUnion intersect(const ArcUnion& other) const {
    ArcUnion out;
    std::size_t i = 0, j = 0;
    while (i < iv_.size() && j < other.iv_.size()) {
      const Interval& a = iv_[i];
      const Interval& b = other.iv_[j];
      const Rational& lo = a.lo < b.lo ? b.lo : a.lo;
      const Rational& hi = a.hi < b.hi ? a.hi : b.hi;
      if (lo < hi) out.iv_.push_back({lo, hi});
      if (a.hi < b.hi) {
        ++i;
      } else {
        ++j;
      }
    }
    out.zero_ = zero_ && other.zero_;
    return out;
  }

  ArcUnion unite(const ArcUnion& other) const {
    ArcUnion out;
    out.iv_ = iv_;
    out.iv_.insert(out.iv_.end(), other.iv_.begin(), other.iv_.end());
    out.zero_ = zero_ || other.zero_;
    out.normalize();
    return out;
  }

  bool subset_of(const ArcUnion& other) const {
    if (zero_ && !other.zero_) return false;
    std::size_t j = 0;
    for (const auto& a : iv_) {
      while (j < other.iv_.size() && other.iv_[j].hi <= a.lo) ++j;
      if (j == other.iv_.size()) return false;
      if (other.iv_[j].lo > a.lo || other.iv_[j].hi < a.hi) return false;
    }
    return true;
  }

  std::vector<ArcComponent> components() const {
    std::vector<ArcComponent> out;
    if (iv_.empty()) return out;
    if (is_full()) {
      out.push_back({Rational(0), Rational(1), true});
      return out;
    }
    std::size_t first = 0, last = iv_.size();
    if (zero_) {
      // The pieces touching 0 and 1 form one arc through 0.
      out.push_back({iv_.back().lo, iv_.front().hi + 1, false});
      first = 1;
      last = iv_.size() - 1;
    }
    for (std::size_t i = first; i < last; ++i) out.push_back({iv_[i].lo, iv_[i].hi, false});
    std::sort(out.begin(), out.end(), [](const ArcComponent& a, const ArcComponent& b) { return a.lo < b.lo; });
    return out;
  }

  std::vector<ArcUnion> split() const {
    std::vector<ArcUnion> out;
    for (const auto& c : components()) out.push_back(from_component(c));
    return out;
  }

  /// Preimage under x -> k x + b on R/Z, k a nonzero integer.
  ArcUnion preimage(const BigInt& k, const Rational& b) const {
    return from_components(preimage_components(k, b));
  }

  /// Connected pieces of the preimage under x -> k x + b, one per component and branch.
  std::vector<ArcComponent> preimage_components(const BigInt& k, const Rational& b) const {
    if (k == 0) throw Error("circle map multiplier must be nonzero");
    std::vector<ArcComponent> out;
    if (iv_.empty()) return out;
    if (is_full()) {
      out.push_back({Rational(0), Rational(1), true});
      return out;
    }
    BigInt ak = k < 0 ? BigInt(-k) : k;
    for (const auto& c : components()) {
      Rational lo = c.lo - b;
      Rational hi = c.hi - b;
      for (BigInt j = 0; j < ak; ++j) {
        Rational plo = (lo + Rational(j)) / Rational(ak);
        Rational phi = (hi + Rational(j)) / Rational(ak);
        if (k < 0) {
          Rational t = -phi;
          phi = -plo;
          plo = t;
        }
        Rational s = frac(plo);
        out.push_back({s, s + (phi - plo), false});
      }
    }
    std::sort(out.begin(), out.end(), [](const ArcComponent& x, const ArcComponent& y) { return x.lo < y.lo; });
    return out;
  }

  Rational measure() const {
    Rational m = 0;
    for (const auto& i : iv_) m += i.hi - i.lo;
    return m;
  }

  /// Circle-metric diameter (supremum of pairwise distances).
  Rational diameter() const {
    auto cs = components();
    Rational best = 0;
    for (std::size_t i = 0; i < cs.size(); ++i) {
      for (std::size_t j = i; j < cs.size(); ++j) {
        Rational s = arc_distance_range(cs[i], cs[j]).second;
        if (s > best) best = s;
        if (best == Rational(1, 2)) return best;
      }
    }
    return best;
  }

  /// Distance from x to the complement; 1/2 for the full circle, 0 outside.
  Rational depth(const Rational& x) const {
    if (!contains(x)) return 0;
    if (is_full()) return Rational(1, 2);
    Rational y = frac(x);
    for (const auto& c : components()) {
      Rational z = y;
      if (z <= c.lo) z += 1;
      if (c.lo < z && z < c.hi) {
        Rational d = std::min(z - c.lo, c.hi - z);
        return std::min(d, Rational(1, 2));
      }
    }
    return 0;
  }

  friend bool operator==(const ArcUnion&, const ArcUnion&) = default;

 private:
  void normalize() {
    std::sort(iv_.begin(), iv_.end(), [](const Interval& a, const Interval& b) {
      return a.lo < b.lo || (a.lo == b.lo && a.hi < b.hi);
    });
    std::vector<Interval> merged;
    for (auto& i : iv_) {
      if (!merged.empty() && i.lo < merged.back().hi) {
        if (merged.back().hi < i.hi) merged.back().hi = i.hi;
      } else {
        merged.push_back(std::move(i));
      }
    }
    iv_ = std::move(merged);
  }

  std::vector<Interval> iv_;
  bool zero_ = false;
};

}  // namespace nervekit
