#pragma once

#include "nervekit/rational.hpp"

#include <cstddef>
#include <variant>
#include <vector>

namespace nervekit {

/// A point of the circle R/Z stored as its representative in [0, 1).
class RationalAngle {
 public:
  RationalAngle() = default;
  explicit RationalAngle(const Rational& x) : value_(frac(x)) {}

  const Rational& value() const { return value_; }
  friend bool operator==(const RationalAngle&, const RationalAngle&) = default;

 private:
  Rational value_{0};
};

struct TorusPoint {
  std::vector<RationalAngle> coords;
  friend bool operator==(const TorusPoint&, const TorusPoint&) = default;
};

/// A point of an abstract finite space, identified by its index.
struct IndexPoint {
  std::size_t index = 0;
  friend bool operator==(const IndexPoint&, const IndexPoint&) = default;
};

using Point = std::variant<RationalAngle, TorusPoint, IndexPoint>;

enum class SpaceKind { circle, torus, abstract };

class SpaceDescriptor {
 public:
  static SpaceDescriptor circle() { return SpaceDescriptor(SpaceKind::circle, 1, {}); }

  static SpaceDescriptor torus(int dim) {
    if (dim < 1) throw Error("torus dimension must be at least 1");
    return SpaceDescriptor(SpaceKind::torus, dim, {});
  }

  /// Validates symmetry, zero diagonal, positivity off the diagonal and the triangle inequality.
  static SpaceDescriptor abstract(std::vector<std::vector<Rational>> dist) {
    const std::size_t n = dist.size();
    if (n == 0) throw Error("abstract space needs at least one point");
    for (const auto& row : dist) {
      if (row.size() != n) throw Error("abstract distance matrix is not square");
    }
    for (std::size_t i = 0; i < n; ++i) {
      if (dist[i][i] != 0) throw Error("abstract distance matrix has nonzero diagonal");
      for (std::size_t j = 0; j < n; ++j) {
        if (dist[i][j] != dist[j][i]) throw Error("abstract distance matrix is not symmetric");
        if (i != j && dist[i][j] <= 0) throw Error("abstract distances must be positive off the diagonal");
        for (std::size_t k = 0; k < n; ++k) {
          if (dist[i][k] > dist[i][j] + dist[j][k]) throw Error("abstract distance matrix violates the triangle inequality");
        }
      }
    }
    return SpaceDescriptor(SpaceKind::abstract, 0, std::move(dist));
  }

  SpaceKind kind() const { return kind_; }
  /// Coordinate count for circle and torus; 0 for abstract spaces.
  int dim() const { return dim_; }
  /// Topological dimension used for nerve caps: 1 for the circle, d for T^d, 0 for finite spaces.
  int manifold_dim() const { return dim_; }
  std::size_t point_count() const { return dist_.size(); }
  const std::vector<std::vector<Rational>>& dist_matrix() const { return dist_; }

  friend bool operator==(const SpaceDescriptor&, const SpaceDescriptor&) = default;

 private:
  SpaceDescriptor(SpaceKind kind, int dim, std::vector<std::vector<Rational>> dist)
      : kind_(kind), dim_(dim), dist_(std::move(dist)) {}

  SpaceKind kind_ = SpaceKind::circle;
  int dim_ = 1;
  std::vector<std::vector<Rational>> dist_;
};

/// Quotient distance on R/Z.
inline Rational circle_distance(const Rational& a, const Rational& b) {
  Rational t = frac(a - b);
  Rational u = 1 - t;
  return t < u ? t : u;
}

inline Rational distance(const SpaceDescriptor& space, const Point& p, const Point& q) {
  switch (space.kind()) {
    case SpaceKind::circle: {
      const auto* a = std::get_if<RationalAngle>(&p);
      const auto* b = std::get_if<RationalAngle>(&q);
      if (!a || !b) throw Error("point/space mismatch");
      return circle_distance(a->value(), b->value());
    }
    case SpaceKind::torus: {
      const auto* a = std::get_if<TorusPoint>(&p);
      const auto* b = std::get_if<TorusPoint>(&q);
      const auto d = static_cast<std::size_t>(space.dim());
      if (!a || !b || a->coords.size() != d || b->coords.size() != d) throw Error("point/space mismatch");
      Rational best = 0;
      for (std::size_t i = 0; i < d; ++i) {
        Rational c = circle_distance(a->coords[i].value(), b->coords[i].value());
        if (c > best) best = c;
      }
      return best;
    }
    case SpaceKind::abstract: {
      const auto* a = std::get_if<IndexPoint>(&p);
      const auto* b = std::get_if<IndexPoint>(&q);
      if (!a || !b || a->index >= space.point_count() || b->index >= space.point_count()) {
        throw Error("point/space mismatch");
      }
      return space.dist_matrix()[a->index][b->index];
    }
  }
  throw Error("unknown space kind");
}

inline Rational space_diameter(const SpaceDescriptor& space) {
  if (space.kind() != SpaceKind::abstract) return Rational(1, 2);
  Rational best = 0;
  for (const auto& row : space.dist_matrix()) {
    for (const auto& v : row) {
      if (v > best) best = v;
    }
  }
  return best;
}

}  // namespace nervekit
