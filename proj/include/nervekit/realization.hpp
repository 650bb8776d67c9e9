#pragma once

#include "nervekit/cover.hpp"
#include "nervekit/nerve.hpp"

#include <algorithm>
#include <optional>
#include <queue>
#include <utility>
#include <vector>

namespace nervekit {

/// Weights x_i(v) at each sample v: depth of v in A_i over the total depth.
struct PartitionOfUnity {
  std::vector<Point> samples;
  std::vector<std::vector<Rational>> weights;  // weights[s][i]
};

inline PartitionOfUnity partition_of_unity(const Cover& c, const std::vector<Point>& samples) {
  require_certified(c);
  PartitionOfUnity pou;
  pou.samples = samples;
  for (const auto& v : samples) {
    std::vector<Rational> w(c.members.size());
    Rational total = 0;
    for (std::size_t i = 0; i < c.members.size(); ++i) {
      w[i] = set_depth(c.space, c.members[i], v);
      total += w[i];
    }
    if (total == 0) throw Error("sample covered by no member");
    for (auto& x : w) x /= total;
    pou.weights.push_back(std::move(w));
  }
  return pou;
}

/// Barycentric coordinates of the s-th sample.
inline const std::vector<Rational>& realize(const PartitionOfUnity& pou, std::size_t s) {
  if (s >= pou.weights.size()) throw Error("sample index out of range");
  return pou.weights[s];
}

inline const std::vector<Rational>& realize(const PartitionOfUnity& pou, const Point& v) {
  auto it = std::find(pou.samples.begin(), pou.samples.end(), v);
  if (it == pou.samples.end()) throw Error("point was not evaluated");
  return pou.weights[static_cast<std::size_t>(it - pou.samples.begin())];
}

/// Members carrying positive weight; a simplex of the nerve when the partition is compatible.
inline Simplex support(const std::vector<Rational>& x) {
  Simplex s;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (x[i] > 0) s.push_back(static_cast<std::uint32_t>(i));
  }
  return s;
}

namespace detail {

inline Rational arc_midpoint(const ArcComponent& a) { return a.full ? a.lo : frac(a.lo + a.length() / 2); }

inline const ArcComponent& longest(const std::vector<ArcComponent>& cs) {
  return *std::max_element(cs.begin(), cs.end(),
                           [](const ArcComponent& a, const ArcComponent& b) { return a.length() < b.length(); });
}

}  // namespace detail

/// Representative point of a member: midpoint of its longest arc, centre of its largest box,
/// the point of smallest eccentricity, or the centre of the first inner grid cell.
inline Point member_center(const SpaceDescriptor& space, const OpenSet& s) {
  if (const auto* a = std::get_if<ArcUnion>(&s)) return RationalAngle(detail::arc_midpoint(detail::longest(a->components())));
  if (const auto* b = std::get_if<BoxUnion>(&s)) {
    const Box* best = nullptr;
    Rational best_vol = -1;
    for (const auto& box : b->boxes()) {
      Rational vol = 1;
      for (const auto& f : box.factors) vol *= f.length();
      if (vol > best_vol) {
        best_vol = vol;
        best = &box;
      }
    }
    TorusPoint p;
    for (const auto& f : best->factors) p.coords.emplace_back(detail::arc_midpoint(f));
    return p;
  }
  if (const auto* q = std::get_if<PointSet>(&s)) {
    const auto pts = q->points();
    std::size_t best = pts.front();
    std::optional<Rational> best_ecc;
    for (auto p : pts) {
      Rational ecc = 0;
      for (auto r : pts) ecc = std::max(ecc, space.dist_matrix()[p][r]);
      if (!best_ecc || ecc < *best_ecc) {
        best_ecc = ecc;
        best = p;
      }
    }
    return IndexPoint{best};
  }
  const auto& g = std::get<GridRegion>(s);
  auto first = g.inner().find_first();
  if (first == CellSet::npos) first = g.outer().find_first();
  return g.cell_center(first);
}

struct Edge {
  std::uint32_t i = 0;
  std::uint32_t j = 0;
  Rational length;
};

/// Shortest-path metric over the 1-skeleton; `d0[i][j]` is empty when i and j are disconnected.
struct VertexMetric {
  std::vector<Point> centers;
  std::vector<Edge> edges;
  std::vector<std::vector<std::optional<Rational>>> d0;
  bool connected = true;
};

inline VertexMetric vertex_metric(const Cover& c, const Nerve& n) {
  if (n.vertex_count != c.members.size()) throw Error("nerve does not match the cover");
  VertexMetric vm;
  const std::size_t V = c.members.size();
  for (const auto& m : c.members) vm.centers.push_back(member_center(c.space, m));
  std::vector<std::vector<std::pair<std::uint32_t, Rational>>> adj(V);
  if (n.levels.size() > 1) {
    for (const auto& e : n.levels[1]) {
      Rational len = distance(c.space, vm.centers[e[0]], vm.centers[e[1]]);
      vm.edges.push_back({e[0], e[1], len});
      adj[e[0]].emplace_back(e[1], len);
      adj[e[1]].emplace_back(e[0], len);
    }
  }
  vm.d0.assign(V, std::vector<std::optional<Rational>>(V));
  using Item = std::pair<Rational, std::uint32_t>;
  for (std::uint32_t s = 0; s < V; ++s) {
    auto& dist = vm.d0[s];
    std::priority_queue<Item, std::vector<Item>, std::greater<>> pq;
    dist[s] = Rational(0);
    pq.emplace(Rational(0), s);
    while (!pq.empty()) {
      auto [d, u] = pq.top();
      pq.pop();
      if (d > *dist[u]) continue;
      for (const auto& [w, len] : adj[u]) {
        Rational nd = d + len;
        if (!dist[w] || nd < *dist[w]) {
          dist[w] = nd;
          pq.emplace(nd, w);
        }
      }
    }
    for (const auto& x : dist) vm.connected = vm.connected && x.has_value();
  }
  return vm;
}

/// {inf, sup} of d(v, w) over v in the closure of a and w in the closure of b.
inline std::pair<Rational, Rational> distance_range(const SpaceDescriptor& space, const OpenSet& a, const OpenSet& b) {
  std::optional<Rational> lo, hi;
  auto take = [&](const Rational& l, const Rational& h) {
    if (!lo || l < *lo) lo = l;
    if (!hi || h > *hi) hi = h;
  };
  if (const auto* x = std::get_if<ArcUnion>(&a)) {
    const auto& y = std::get<ArcUnion>(b);
    for (const auto& p : x->components()) {
      for (const auto& q : y.components()) {
        auto [l, h] = arc_distance_range(p, q);
        take(l, h);
      }
    }
  } else if (const auto* x = std::get_if<BoxUnion>(&a)) {
    // Coordinates vary independently, so the l-infinity range is the axiswise max of ranges.
    for (const auto& p : x->boxes()) {
      for (const auto& q : std::get<BoxUnion>(b).boxes()) {
        Rational l = 0, h = 0;
        for (std::size_t ax = 0; ax < p.factors.size(); ++ax) {
          auto [la, ha] = arc_distance_range(p.factors[ax], q.factors[ax]);
          l = std::max(l, la);
          h = std::max(h, ha);
        }
        take(l, h);
      }
    }
  } else if (const auto* x = std::get_if<PointSet>(&a)) {
    for (auto p : x->points()) {
      for (auto q : std::get<PointSet>(b).points()) take(space.dist_matrix()[p][q], space.dist_matrix()[p][q]);
    }
  } else {
    throw Error("distance ranges need arc, box or point members");
  }
  return {*lo, *hi};
}

/// Half the distortion of the correspondence {(b_i, v) : v in A_i}; an upper bound for the
/// Gromov-Hausdorff distance between (vertices, d0) and the space. Exact over member pairs,
/// since the distortion of a pair of members only depends on their distance range.
inline Rational gh_upper_bound(const Cover& c, const VertexMetric& vm) {
  if (!vm.connected) throw Error("1-skeleton is disconnected");
  Rational worst = 0;
  const std::size_t V = c.members.size();
  for (std::size_t i = 0; i < V; ++i) {
    for (std::size_t j = i; j < V; ++j) {
      auto [lo, hi] = distance_range(c.space, c.members[i], c.members[j]);
      const Rational& d = *vm.d0[i][j];
      Rational below = abs(d - lo), above = abs(hi - d);
      worst = std::max(worst, std::max(below, above));
    }
  }
  return worst / 2;
}

}  // namespace nervekit
