#pragma once

#include "nervekit/dynamics.hpp"
#include "nervekit/irreducible.hpp"
#include "nervekit/nerve.hpp"
#include "nervekit/realization.hpp"

#include <cmath>
#include <string>
#include <vector>

namespace nervekit::scenarios {

/// Arcs (c - w/2, c + w/2) for each centre c.
inline Cover circle_arcs(const std::vector<Rational>& centres, const Rational& width) {
  Cover c;
  c.space = SpaceDescriptor::circle();
  for (const auto& x : centres) c.members.emplace_back(ArcUnion::arc(x - width / 2, x + width / 2));
  return c;
}

/// Two arcs (-a, 1/2 + a) and (1/2 - a, 1 + a); a generator for the doubling map.
inline Cover doubling_cover(const Rational& a = Rational(1, 16)) {
  Cover c;
  c.space = SpaceDescriptor::circle();
  c.members.emplace_back(ArcUnion::arc(-a, Rational(1, 2) + a));
  c.members.emplace_back(ArcUnion::arc(Rational(1, 2) - a, 1 + a));
  return c;
}

/// Three half-circle arcs centred at 1/6, 1/2, 5/6: pairwise overlaps, no triple point.
inline Cover three_arcs() { return circle_arcs({Rational(1, 6), Rational(1, 2), Rational(5, 6)}, Rational(1, 2)); }

/// Products of the members of one circle cover per axis.
inline Cover product_cover(const std::vector<Cover>& factors) {
  Cover c;
  c.space = SpaceDescriptor::torus(static_cast<int>(factors.size()));
  std::vector<std::size_t> idx(factors.size(), 0);
  while (true) {
    std::vector<ArcUnion> parts;
    for (std::size_t a = 0; a < factors.size(); ++a) parts.push_back(std::get<ArcUnion>(factors[a].members[idx[a]]));
    c.members.emplace_back(BoxUnion::product(parts));
    std::size_t a = factors.size();
    while (a > 0) {
      --a;
      if (++idx[a] < factors[a].members.size()) break;
      idx[a] = 0;
      if (a == 0) return c;
    }
  }
}

/// The nine boxes of three_arcs() x three_arcs(); a good cover of T^2.
inline Cover torus_nine_boxes() { return product_cover({three_arcs(), three_arcs()}); }

inline Cover product_doubling_cover() { return product_cover({doubling_cover(), doubling_cover()}); }

inline ActionSpec doubling_action(int k = 2) { return CircleTimes{BigInt(k), Rational(0)}; }

inline ActionSpec product_doubling_action() {
  return ProductAction{{CircleTimes{BigInt(2), Rational(0)}, CircleTimes{BigInt(2), Rational(0)}}};
}

inline ActionSpec cat_map_action() { return TorusMatrixAction{{{1, 1}, {1, 2}}}; }

/// Product cover with arcs (-1/8, 5/8) and (3/8, 9/8) per axis, as grid regions.
inline Cover cat_map_cover(std::int64_t resolution = 256) {
  return promote_to_grid(product_cover({doubling_cover(Rational(1, 8)), doubling_cover(Rational(1, 8))}), resolution);
}

/// Reference entropy of the cat map, log of its expanding eigenvalue (3 + √5)/2.
inline double cat_map_reference_entropy() { return std::log((3 + std::sqrt(5.0)) / 2); }

/// G_k of a prismatic cover with g0 members: G_k = C(g0, k + 1) + G_{k-1}.
inline BigInt prismatic_profile(int g0, int k) {
  if (g0 < 1) throw Error("g0 must be at least 1");
  if (k < 0 || k >= g0) throw Error("k exceeds the dimension g0 - 1");
  BigInt g = 0;
  for (int i = 0; i <= k; ++i) g += binomial(g0, i + 1);
  return g;
}

/// An explicit prismatic cover: a finite space with an apex 0 and points 1..g0 at mutual
/// distance 1, members {0, i}. Every member owns point i and all share the apex.
inline Cover prismatic_cover(int g0) {
  if (g0 < 1) throw Error("g0 must be at least 1");
  const std::size_t n = static_cast<std::size_t>(g0) + 1;
  std::vector<std::vector<Rational>> dist(n, std::vector<Rational>(n, Rational(1)));
  for (std::size_t i = 0; i < n; ++i) dist[i][i] = 0;
  Cover c;
  c.space = SpaceDescriptor::abstract(dist);
  for (std::size_t i = 1; i < n; ++i) c.members.emplace_back(PointSet(n, {0, i}));
  return c;
}

/// log of Σ_{i<=k} C(m, i + 1) through log-gamma and log-sum-exp.
inline double log_prismatic_profile(double m, int k) {
  double top = -INFINITY;
  std::vector<double> terms;
  for (int i = 0; i <= k && i + 1 <= m; ++i) {
    double t = std::lgamma(m + 1) - std::lgamma(i + 2.0) - std::lgamma(m - i);
    terms.push_back(t);
    top = std::max(top, t);
  }
  double sum = 0;
  for (double t : terms) sum += std::exp(t - top);
  return top + std::log(sum);
}

/// ent_k of the pyramid family under c(n) = log |F(n)|: α[F] is prismatic with |F| + 1 members.
inline std::vector<double> pyramid_growth(const std::vector<double>& sizes, int k) {
  if (k < 0) throw Error("k must be nonnegative");
  std::vector<double> out;
  for (double f : sizes) {
    if (!(f > 1)) throw Error("sizes must exceed 1");
    out.push_back(log_prismatic_profile(f + 1, k) / std::log(f));
  }
  return out;
}

/// Cell counts of the p-skeleton of a simplex on delta0 vertices, used as the profile of α_p.
inline std::vector<BigInt> skeleton_profile(int delta0, int p) {
  if (delta0 < 2) throw Error("delta0 must be at least 2");
  if (p < 1 || p > delta0 - 1) throw Error("p must lie in 1 .. delta0 - 1");
  std::vector<BigInt> prof;
  for (int i = 0; i <= p; ++i) prof.push_back(binomial(delta0, i + 1));
  return prof;
}

inline GrowthTable shift_truncation_growth(int delta0, int p, const std::vector<std::uint64_t>& sizes, int K = 2) {
  ShiftTruncation sh{skeleton_profile(delta0, p), p};
  validate_action(sh);
  return detail::shift_growth(sh, sizes, K, ControllingSequence{});
}

/// Doubling-map iterate over F = {0, .., n - 1}.
inline Cover doubling_iterate(int n) {
  std::vector<std::vector<int>> F;
  for (int j = 0; j < n; ++j) F.push_back({j});
  return iterate_cover(doubling_cover(), doubling_action(), F);
}

struct SkeletonStage {
  int n = 0;
  std::size_t raw_members = 0;
  std::size_t vertices = 0;
  std::size_t edges = 0;
  bool connected = false;
  Rational gh_bound;
};

/// 1-skeleton of a minimal subcover of α_{F(n)} with its vertex metric and GH bound.
inline SkeletonStage doubling_skeleton(int n) {
  Cover raw = doubling_iterate(n);
  SubcoverSearch search(raw);
  auto [subset, exact] = search.heuristic_subcover();
  Cover sub;
  sub.space = raw.space;
  for (auto i : subset) sub.members.push_back(raw.members[i]);
  Nerve nerve = build_nerve(sub, 1);
  VertexMetric vm = vertex_metric(sub, nerve);
  SkeletonStage st;
  st.n = n;
  st.raw_members = raw.size();
  st.vertices = sub.size();
  st.edges = vm.edges.size();
  st.connected = vm.connected;
  st.gh_bound = gh_upper_bound(sub, vm);
  return st;
}

}  // namespace nervekit::scenarios
