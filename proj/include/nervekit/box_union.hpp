#pragma once

#include "nervekit/arc_union.hpp"
#include "nervekit/space.hpp"

#include <numeric>
#include <vector>

namespace nervekit {

/// Open box on T^d: a product of connected arcs, one per axis.
struct Box {
  std::vector<ArcComponent> factors;
  friend bool operator==(const Box&, const Box&) = default;
};

namespace detail {

inline std::vector<Box> cartesian(const std::vector<std::vector<ArcComponent>>& per_axis) {
  std::vector<Box> out;
  for (const auto& a : per_axis) {
    if (a.empty()) return out;
  }
  out.push_back(Box{});
  for (const auto& choices : per_axis) {
    std::vector<Box> next;
    next.reserve(out.size() * choices.size());
    for (const auto& partial : out) {
      for (const auto& c : choices) {
        Box b = partial;
        b.factors.push_back(c);
        next.push_back(std::move(b));
      }
    }
    out = std::move(next);
  }
  return out;
}

inline std::vector<Box> box_intersection(const Box& a, const Box& b) {
  std::vector<std::vector<ArcComponent>> per_axis;
  per_axis.reserve(a.factors.size());
  for (std::size_t i = 0; i < a.factors.size(); ++i) {
    ArcUnion x = ArcUnion::from_component(a.factors[i]).intersect(ArcUnion::from_component(b.factors[i]));
    if (x.empty()) return {};
    per_axis.push_back(x.components());
  }
  return cartesian(per_axis);
}

inline bool boxes_meet(const Box& a, const Box& b) {
  for (std::size_t i = 0; i < a.factors.size(); ++i) {
    if (ArcUnion::from_component(a.factors[i]).intersect(ArcUnion::from_component(b.factors[i])).empty()) return false;
  }
  return true;
}

}  // namespace detail

/// Finite union of open boxes on T^d. Boxes may overlap; equality is decided on atoms.
class BoxUnion {
 public:
  BoxUnion() = default;
  explicit BoxUnion(int dim) : dim_(dim) {}
  BoxUnion(int dim, std::vector<Box> boxes) : dim_(dim), boxes_(std::move(boxes)) {
    for (const auto& b : boxes_) {
      if (static_cast<int>(b.factors.size()) != dim_) throw Error("box dimension does not match the torus");
    }
  }

  static BoxUnion full(int dim) {
    Box b;
    for (int i = 0; i < dim; ++i) b.factors.push_back({Rational(0), Rational(1), true});
    return BoxUnion(dim, {b});
  }

  /// Product of arc unions, one per axis.
  static BoxUnion product(const std::vector<ArcUnion>& factors) {
    std::vector<std::vector<ArcComponent>> per_axis;
    for (const auto& f : factors) per_axis.push_back(f.components());
    return BoxUnion(static_cast<int>(factors.size()), detail::cartesian(per_axis));
  }

  int dim() const { return dim_; }
  const std::vector<Box>& boxes() const { return boxes_; }
  bool empty() const { return boxes_.empty(); }

  bool contains(const TorusPoint& p) const {
    for (const auto& b : boxes_) {
      bool in = true;
      for (int i = 0; i < dim_ && in; ++i) {
        in = ArcUnion::from_component(b.factors[i]).contains(p.coords[i].value());
      }
      if (in) return true;
    }
    return false;
  }

  BoxUnion intersect(const BoxUnion& other) const {
    BoxUnion out(dim_);
    for (const auto& a : boxes_) {
      for (const auto& b : other.boxes_) {
        for (auto& c : detail::box_intersection(a, b)) out.boxes_.push_back(std::move(c));
      }
    }
    return out;
  }

  BoxUnion unite(const BoxUnion& other) const {
    BoxUnion out = *this;
    out.boxes_.insert(out.boxes_.end(), other.boxes_.begin(), other.boxes_.end());
    return out;
  }

  /// Preimage under the diagonal map x_i -> k_i x_i + b_i.
  BoxUnion preimage(const std::vector<BigInt>& k, const std::vector<Rational>& b) const {
    BoxUnion out(dim_);
    for (const auto& box : boxes_) {
      std::vector<std::vector<ArcComponent>> per_axis;
      for (int i = 0; i < dim_; ++i) {
        per_axis.push_back(ArcUnion::from_component(box.factors[i]).preimage_components(k[i], b[i]));
      }
      for (auto& c : detail::cartesian(per_axis)) out.boxes_.push_back(std::move(c));
    }
    return out;
  }

  /// Connected components: boxes are joined when their open interiors overlap.
  std::vector<BoxUnion> split() const {
    const std::size_t n = boxes_.size();
    std::vector<std::size_t> parent(n);
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](std::size_t x) {
      while (parent[x] != x) x = parent[x] = parent[parent[x]];
      return x;
    };
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = i + 1; j < n; ++j) {
        if (find(i) != find(j) && detail::boxes_meet(boxes_[i], boxes_[j])) parent[find(i)] = find(j);
      }
    }
    std::vector<BoxUnion> out;
    std::vector<std::size_t> slot(n, n);
    for (std::size_t i = 0; i < n; ++i) {
      std::size_t r = find(i);
      if (slot[r] == n) {
        slot[r] = out.size();
        out.emplace_back(dim_);
      }
      out[slot[r]].boxes_.push_back(boxes_[i]);
    }
    return out;
  }

  ArcUnion projection(int axis) const {
    std::vector<ArcComponent> cs;
    for (const auto& b : boxes_) cs.push_back(b.factors[axis]);
    return ArcUnion::from_components(cs);
  }

  /// l-infinity diameter: the largest circle diameter among the coordinate projections.
  Rational diameter() const {
    Rational best = 0;
    for (int i = 0; i < dim_; ++i) best = std::max(best, projection(i).diameter());
    return best;
  }

  /// Lower bound for the distance to the complement: the best single-box depth.
  Rational depth(const TorusPoint& p) const {
    Rational best = 0;
    for (const auto& b : boxes_) {
      Rational d = Rational(1, 2);
      for (int i = 0; i < dim_; ++i) {
        d = std::min(d, ArcUnion::from_component(b.factors[i]).depth(p.coords[i].value()));
      }
      best = std::max(best, d);
    }
    return best;
  }

 private:
  int dim_ = 0;
  std::vector<Box> boxes_;
};

}  // namespace nervekit
