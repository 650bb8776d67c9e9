#pragma once

#include "nervekit/grid_region.hpp"
#include "nervekit/point_set.hpp"

#include <cmath>
#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace nervekit {

using OpenSet = std::variant<ArcUnion, BoxUnion, GridRegion, PointSet>;

enum class Family { arcs, boxes, grid, points };

inline Family family_of(const OpenSet& s) { return static_cast<Family>(s.index()); }

inline const char* family_name(Family f) {
  switch (f) {
    case Family::arcs: return "arcs";
    case Family::boxes: return "boxes";
    case Family::grid: return "grid";
    case Family::points: return "points";
  }
  return "unknown";
}

inline bool is_empty_set(const OpenSet& s) {
  return std::visit([](const auto& x) { return x.empty(); }, s);
}

inline OpenSet intersect_sets(const OpenSet& a, const OpenSet& b) {
  if (a.index() != b.index()) throw Error("mixed representations");
  return std::visit(
      [&](const auto& x) -> OpenSet {
        using T = std::decay_t<decltype(x)>;
        return x.intersect(std::get<T>(b));
      },
      a);
}

/// Finite indexed family of open sets over one space. `tags` records where each member came
/// from: the pair (i, j) after a common refinement, the itinerary after iteration.
struct Cover {
  SpaceDescriptor space = SpaceDescriptor::circle();
  std::vector<OpenSet> members;
  std::vector<std::vector<std::uint32_t>> tags;
  std::vector<std::string> notes;

  std::size_t size() const { return members.size(); }

  Family family() const {
    if (members.empty()) throw Error("cover has no members");
    Family f = family_of(members.front());
    for (const auto& m : members) {
      if (family_of(m) != f) throw Error("mixed representations");
    }
    return f;
  }
};

/// Checks that every member matches the space and that representations are not mixed.
inline void validate_cover(const Cover& c) {
  Family f = c.family();
  for (std::size_t i = 0; i < c.members.size(); ++i) {
    const OpenSet& m = c.members[i];
    const std::string where = "member " + std::to_string(i) + ": ";
    switch (f) {
      case Family::arcs:
        if (c.space.kind() != SpaceKind::circle) throw Error(where + "arc sets need a circle space");
        break;
      case Family::boxes:
        if (c.space.kind() != SpaceKind::torus || std::get<BoxUnion>(m).dim() != c.space.dim()) {
          throw Error(where + "box dimension does not match the torus");
        }
        break;
      case Family::grid:
        if (c.space.kind() != SpaceKind::torus || std::get<GridRegion>(m).dim() != c.space.dim()) {
          throw Error(where + "grid dimension does not match the torus");
        }
        if (std::get<GridRegion>(m).resolution() != std::get<GridRegion>(c.members[0]).resolution()) {
          throw Error(where + "grid resolutions differ");
        }
        break;
      case Family::points:
        if (c.space.kind() != SpaceKind::abstract || std::get<PointSet>(m).universe() != c.space.point_count()) {
          throw Error(where + "point set does not match the abstract space");
        }
        break;
    }
    if (is_empty_set(m)) throw Error(where + "empty member");
  }
  if (!c.tags.empty() && c.tags.size() != c.members.size()) throw Error("tag count does not match member count");
}

/// Partition of the space into cells on which membership is constant. `inside` lists the
/// members certainly containing a cell, `touch` those possibly meeting it (they agree for
/// exact representations). Open cells decide intersections; all cells decide coverage.
class AtomTable {
 public:
  std::size_t member_count = 0;
  std::vector<std::vector<std::uint32_t>> inside;
  std::vector<std::vector<std::uint32_t>> touch;
  std::vector<std::uint8_t> open;
  bool exact = true;

  std::size_t size() const { return inside.size(); }

  /// Representative point of a cell (a breakpoint, an interval midpoint or a cell center).
  Point sample(std::size_t atom) const {
    switch (family_) {
      case Family::arcs: return RationalAngle(axis_sample(0, atom));
      case Family::boxes: {
        TorusPoint p;
        std::size_t rest = atom;
        for (std::size_t a = 0; a < bp_.size(); ++a) {
          std::size_t n = 2 * bp_[a].size();
          p.coords.emplace_back(axis_sample(a, rest % n));
          rest /= n;
        }
        return p;
      }
      case Family::grid: return grid_.cell_center(atom);
      case Family::points: return IndexPoint{atom};
    }
    throw Error("unknown family");
  }

  /// Atoms of each member (touch lists inverted).
  std::vector<std::vector<std::uint32_t>> member_atoms() const {
    std::vector<std::vector<std::uint32_t>> out(member_count);
    for (std::size_t t = 0; t < touch.size(); ++t) {
      for (auto m : touch[t]) out[m].push_back(static_cast<std::uint32_t>(t));
    }
    return out;
  }

  static AtomTable build(const std::vector<OpenSet>& sets) {
    AtomTable t;
    t.member_count = sets.size();
    if (sets.empty()) return t;
    t.family_ = family_of(sets.front());
    for (const auto& s : sets) {
      if (family_of(s) != t.family_) throw Error("mixed representations");
    }
    switch (t.family_) {
      case Family::arcs: t.build_arcs(sets); break;
      case Family::boxes: t.build_boxes(sets); break;
      case Family::grid: t.build_grid(sets); break;
      case Family::points: t.build_points(sets); break;
    }
    return t;
  }

 private:
  Family family_ = Family::arcs;
  std::vector<std::vector<Rational>> bp_;
  GridRegion grid_;

  Rational axis_sample(std::size_t axis, std::size_t local) const {
    const auto& bp = bp_[axis];
    std::size_t k = local / 2;
    if (local % 2 == 0) return bp[k];
    Rational hi = k + 1 < bp.size() ? bp[k + 1] : Rational(1);
    return (bp[k] + hi) / 2;
  }

  static std::vector<Rational> breakpoints(const std::vector<const ArcUnion*>& arcs) {
    std::vector<Rational> bp{Rational(0)};
    for (const auto* a : arcs) {
      for (const auto& i : a->intervals()) {
        bp.push_back(i.lo);
        if (i.hi < 1) bp.push_back(i.hi);
      }
    }
    std::sort(bp.begin(), bp.end());
    bp.erase(std::unique(bp.begin(), bp.end()), bp.end());
    return bp;
  }

  // Local atom ids (2k = point bp[k], 2k+1 = interval after bp[k]) contained in an arc union.
  static std::vector<std::uint32_t> local_atoms(const ArcUnion& a, const std::vector<Rational>& bp) {
    std::vector<std::uint32_t> out;
    auto index_of = [&](const Rational& x) -> std::size_t {
      if (x == 1) return bp.size();
      return static_cast<std::size_t>(std::lower_bound(bp.begin(), bp.end(), x) - bp.begin());
    };
    if (a.contains_zero()) out.push_back(0);
    for (const auto& i : a.intervals()) {
      std::size_t lo = index_of(i.lo), hi = index_of(i.hi);
      for (std::size_t k = lo; k < hi; ++k) {
        if (k > lo) out.push_back(static_cast<std::uint32_t>(2 * k));
        out.push_back(static_cast<std::uint32_t>(2 * k + 1));
      }
    }
    std::sort(out.begin(), out.end());
    return out;
  }

  void build_arcs(const std::vector<OpenSet>& sets) {
    std::vector<const ArcUnion*> arcs;
    for (const auto& s : sets) arcs.push_back(&std::get<ArcUnion>(s));
    bp_ = {breakpoints(arcs)};
    std::size_t n = 2 * bp_[0].size();
    inside.assign(n, {});
    open.assign(n, 0);
    for (std::size_t k = 0; k < n; ++k) open[k] = k % 2;
    for (std::size_t m = 0; m < arcs.size(); ++m) {
      for (auto a : local_atoms(*arcs[m], bp_[0])) inside[a].push_back(static_cast<std::uint32_t>(m));
    }
    touch = inside;
  }

  void build_boxes(const std::vector<OpenSet>& sets) {
    const int d = std::get<BoxUnion>(sets.front()).dim();
    std::vector<std::vector<ArcUnion>> factor_sets(d);
    for (const auto& s : sets) {
      for (const auto& b : std::get<BoxUnion>(s).boxes()) {
        for (int a = 0; a < d; ++a) factor_sets[a].push_back(ArcUnion::from_component(b.factors[a]));
      }
    }
    bp_.assign(d, {});
    std::vector<std::size_t> radix(d);
    std::size_t total = 1;
    for (int a = 0; a < d; ++a) {
      std::vector<const ArcUnion*> ptrs;
      for (const auto& f : factor_sets[a]) ptrs.push_back(&f);
      bp_[a] = breakpoints(ptrs);
      radix[a] = 2 * bp_[a].size();
      total *= radix[a];
    }
    if (total > 50'000'000) throw Error("atom table too large for box cover");
    inside.assign(total, {});
    open.assign(total, 1);
    for (std::size_t t = 0; t < total; ++t) {
      std::size_t rest = t;
      for (int a = 0; a < d; ++a) {
        if ((rest % radix[a]) % 2 == 0) open[t] = 0;
        rest /= radix[a];
      }
    }
    std::size_t box_counter = 0;
    for (std::size_t m = 0; m < sets.size(); ++m) {
      for (std::size_t b = 0; b < std::get<BoxUnion>(sets[m]).boxes().size(); ++b) {
        std::vector<std::vector<std::uint32_t>> per_axis(d);
        bool nonempty = true;
        for (int a = 0; a < d; ++a) {
          per_axis[a] = local_atoms(factor_sets[a][box_counter], bp_[a]);
          nonempty = nonempty && !per_axis[a].empty();
        }
        ++box_counter;
        if (!nonempty) continue;
        std::vector<std::size_t> pos(d, 0);
        while (true) {
          std::size_t idx = 0;
          for (int a = d - 1; a >= 0; --a) idx = idx * radix[a] + per_axis[a][pos[a]];
          auto& cell = inside[idx];
          if (cell.empty() || cell.back() != m) cell.push_back(static_cast<std::uint32_t>(m));
          int a = 0;
          while (a < d) {
            if (++pos[a] < per_axis[a].size()) break;
            pos[a] = 0;
            ++a;
          }
          if (a == d) break;
        }
      }
    }
    touch = inside;
  }

  void build_grid(const std::vector<OpenSet>& sets) {
    const auto& g0 = std::get<GridRegion>(sets.front());
    grid_ = GridRegion(g0.dim(), g0.resolution());
    exact = false;
    std::size_t n = g0.cell_count();
    inside.assign(n, {});
    touch.assign(n, {});
    open.assign(n, 1);
    for (std::size_t m = 0; m < sets.size(); ++m) {
      const auto& g = std::get<GridRegion>(sets[m]);
      if (g.dim() != g0.dim() || g.resolution() != g0.resolution()) throw Error("grid regions differ in dimension or resolution");
      for (auto i = g.outer().find_first(); i != CellSet::npos; i = g.outer().find_next(i)) {
        touch[i].push_back(static_cast<std::uint32_t>(m));
        if (g.inner()[i]) inside[i].push_back(static_cast<std::uint32_t>(m));
      }
    }
  }

  void build_points(const std::vector<OpenSet>& sets) {
    std::size_t n = std::get<PointSet>(sets.front()).universe();
    inside.assign(n, {});
    open.assign(n, 1);
    for (std::size_t m = 0; m < sets.size(); ++m) {
      const auto& p = std::get<PointSet>(sets[m]);
      if (p.universe() != n) throw Error("point sets differ in universe");
      for (auto i : p.points()) inside[i].push_back(static_cast<std::uint32_t>(m));
    }
    touch = inside;
  }
};

/// Coverage decision. For grid covers `covered == false` may be indeterminate; `definite`
/// tells whether a negative answer is certain.
struct CoverCheck {
  bool covered = false;
  bool definite = true;
  std::string note;
  std::optional<Point> uncovered_witness;
};

inline CoverCheck is_cover(const Cover& c) {
  validate_cover(c);
  AtomTable t = AtomTable::build(c.members);
  CoverCheck r;
  r.covered = true;
  std::optional<std::size_t> gap, unsure;
  for (std::size_t a = 0; a < t.size(); ++a) {
    if (!t.inside[a].empty()) continue;
    r.covered = false;
    if (t.touch[a].empty()) {
      gap = a;
      break;
    }
    if (!unsure) unsure = a;
  }
  if (r.covered) {
    r.note = "certified";
  } else if (gap) {
    r.note = "not a cover";
    r.uncovered_witness = t.sample(*gap);
  } else {
    r.definite = false;
    r.note = "uncertified at resolution " + std::to_string(std::get<GridRegion>(c.members[0]).resolution());
    r.uncovered_witness = t.sample(*unsure);
  }
  return r;
}

inline void require_certified(const Cover& c) {
  if (!is_cover(c).covered) throw Error("not a certified cover");
}

namespace detail {

// Coarse double-precision footprints along the first axis, used only to prune pairs.
inline std::vector<std::pair<double, double>> footprint(const OpenSet& s) {
  std::vector<std::pair<double, double>> out;
  const double slack = 1e-9;
  auto add_arc = [&](const ArcUnion& u) {
    for (const auto& i : u.intervals()) out.emplace_back(to_double(i.lo) - slack, to_double(i.hi) + slack);
  };
  if (const auto* a = std::get_if<ArcUnion>(&s)) {
    add_arc(*a);
  } else if (const auto* b = std::get_if<BoxUnion>(&s)) {
    for (const auto& box : b->boxes()) add_arc(ArcUnion::from_component(box.factors[0]));
  } else {
    out.emplace_back(-1.0, 2.0);
  }
  return out;
}

// Pairs (i, j) whose footprints overlap, in lexicographic order.
inline std::vector<std::pair<std::uint32_t, std::uint32_t>> candidate_pairs(const std::vector<OpenSet>& a,
                                                                            const std::vector<OpenSet>& b) {
  constexpr int buckets = 4096;
  auto bucket_range = [&](double lo, double hi) {
    int l = std::max(0, static_cast<int>(std::floor(lo * buckets)));
    int h = std::min(buckets - 1, static_cast<int>(std::floor(hi * buckets)));
    return std::make_pair(l, h);
  };
  std::vector<std::vector<std::uint32_t>> grid(buckets);
  for (std::uint32_t j = 0; j < b.size(); ++j) {
    for (auto [lo, hi] : footprint(b[j])) {
      auto [l, h] = bucket_range(lo, hi);
      for (int k = l; k <= h; ++k) {
        if (grid[k].empty() || grid[k].back() != j) grid[k].push_back(j);
      }
    }
  }
  std::vector<std::pair<std::uint32_t, std::uint32_t>> out;
  std::vector<std::uint32_t> stamp(b.size(), UINT32_MAX);
  std::vector<std::uint32_t> found;
  for (std::uint32_t i = 0; i < a.size(); ++i) {
    found.clear();
    for (auto [lo, hi] : footprint(a[i])) {
      auto [l, h] = bucket_range(lo, hi);
      for (int k = l; k <= h; ++k) {
        for (auto j : grid[k]) {
          if (stamp[j] != i) {
            stamp[j] = i;
            found.push_back(j);
          }
        }
      }
    }
    std::sort(found.begin(), found.end());
    for (auto j : found) out.emplace_back(i, j);
  }
  return out;
}

}  // namespace detail

/// All nonempty pairwise intersections, tagged (i, j), in lexicographic pair order.
inline Cover common_refinement(const Cover& a, const Cover& b) {
  if (!(a.space == b.space)) throw Error("space mismatch");
  if (a.family() != b.family()) throw Error("mixed representations");
  Cover out;
  out.space = a.space;
  for (auto [i, j] : detail::candidate_pairs(a.members, b.members)) {
    OpenSet s = intersect_sets(a.members[i], b.members[j]);
    if (is_empty_set(s)) continue;
    out.members.push_back(std::move(s));
    out.tags.push_back({i, j});
  }
  return out;
}

/// Witness map of a refinement: member i of the finer cover lies in member map[i].
struct RefinementWitness {
  std::vector<std::uint32_t> map;
};

/// Certified containment of every member of `small` in the matching member of `big`,
/// returning for each i of `small` the first j of `big` with small[i] inside big[j].
inline std::vector<std::optional<std::uint32_t>> first_containers(const std::vector<OpenSet>& small,
                                                                  const std::vector<OpenSet>& big) {
  std::vector<std::optional<std::uint32_t>> out(small.size());
  if (small.empty() || big.empty()) return out;
  if (family_of(small.front()) == Family::arcs) {
    for (std::size_t i = 0; i < small.size(); ++i) {
      for (std::uint32_t j = 0; j < big.size(); ++j) {
        if (std::get<ArcUnion>(small[i]).subset_of(std::get<ArcUnion>(big[j]))) {
          out[i] = j;
          break;
        }
      }
    }
    return out;
  }
  std::vector<OpenSet> joint = small;
  joint.insert(joint.end(), big.begin(), big.end());
  AtomTable t = AtomTable::build(joint);
  auto atoms = t.member_atoms();
  const auto n = static_cast<std::uint32_t>(small.size());
  for (std::size_t i = 0; i < small.size(); ++i) {
    // Candidates are the members of big that certainly contain every atom of small[i].
    std::vector<std::uint32_t> cand;
    bool first = true;
    for (auto a : atoms[i]) {
      std::vector<std::uint32_t> here;
      for (auto m : t.inside[a]) {
        if (m >= n) here.push_back(m - n);
      }
      if (first) {
        cand = std::move(here);
        first = false;
      } else {
        std::vector<std::uint32_t> keep;
        std::set_intersection(cand.begin(), cand.end(), here.begin(), here.end(), std::back_inserter(keep));
        cand = std::move(keep);
      }
      if (cand.empty()) break;
    }
    if (!first && !cand.empty()) out[i] = cand.front();
  }
  return out;
}

inline std::optional<RefinementWitness> refines(const Cover& a, const Cover& b) {
  if (!(a.space == b.space)) throw Error("space mismatch");
  RefinementWitness w;
  for (const auto& j : first_containers(a.members, b.members)) {
    if (!j) return std::nullopt;
    w.map.push_back(*j);
  }
  return w;
}

/// Certified set containment a ⊆ b.
inline bool set_subset(const OpenSet& a, const OpenSet& b) {
  return first_containers({a}, {b}).front().has_value();
}

struct CircleAffine {
  BigInt k;
  Rational b{0};
};

struct DiagonalAffine {
  std::vector<BigInt> k;
  std::vector<Rational> b;
};

struct IntegerMatrix {
  IntMatrix m;
};

using EndomorphismSpec = std::variant<CircleAffine, DiagonalAffine, IntegerMatrix>;

inline BigInt determinant(const IntMatrix& m) {
  const std::size_t n = m.size();
  std::vector<std::vector<Rational>> a(n, std::vector<Rational>(n));
  for (std::size_t i = 0; i < n; ++i) {
    if (m[i].size() != n) throw Error("matrix is not square");
    for (std::size_t j = 0; j < n; ++j) a[i][j] = Rational(m[i][j]);
  }
  Rational det = 1;
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t p = c;
    while (p < n && a[p][c] == 0) ++p;
    if (p == n) return 0;
    if (p != c) {
      std::swap(a[p], a[c]);
      det = -det;
    }
    det *= a[c][c];
    for (std::size_t r = c + 1; r < n; ++r) {
      Rational f = a[r][c] / a[c][c];
      for (std::size_t k = c; k < n; ++k) a[r][k] -= f * a[c][k];
    }
  }
  return numerator_of(det);
}

inline bool is_diagonal(const IntMatrix& m) {
  for (std::size_t i = 0; i < m.size(); ++i) {
    for (std::size_t j = 0; j < m.size(); ++j) {
      if (i != j && m[i][j] != 0) return false;
    }
  }
  return true;
}

/// Converts every member of a box cover to a grid region at the given resolution.
inline Cover promote_to_grid(const Cover& c, std::int64_t resolution) {
  if (c.family() != Family::boxes) throw Error("only box covers can be promoted to grids");
  Cover out;
  out.space = c.space;
  out.tags = c.tags;
  out.notes = c.notes;
  for (const auto& m : c.members) out.members.emplace_back(GridRegion::from_box_union(std::get<BoxUnion>(m), resolution));
  out.notes.push_back("promoted to grid at resolution " + std::to_string(resolution));
  return out;
}

/// Pullback {f^{-1} A_i}. Box covers under non-diagonal matrices are promoted to grids.
inline Cover preimage_cover(const Cover& c, const EndomorphismSpec& f, std::int64_t grid_resolution = 256) {
  validate_cover(c);
  Cover out;
  out.space = c.space;
  out.tags = c.tags;
  out.notes = c.notes;
  const Family fam = c.family();
  if (const auto* ca = std::get_if<CircleAffine>(&f)) {
    if (fam != Family::arcs) throw Error("circle map needs an arc cover");
    if (ca->k == 0) throw Error("circle map multiplier must be nonzero");
    for (const auto& m : c.members) out.members.emplace_back(std::get<ArcUnion>(m).preimage(ca->k, ca->b));
    return out;
  }
  if (const auto* da = std::get_if<DiagonalAffine>(&f)) {
    if (static_cast<int>(da->k.size()) != c.space.dim() || da->b.size() != da->k.size()) {
      throw Error("diagonal map does not match the torus dimension");
    }
    for (const auto& k : da->k) {
      if (k == 0) throw Error("matrix is not invertible on the torus (det 0)");
    }
    if (fam == Family::boxes) {
      for (const auto& m : c.members) out.members.emplace_back(std::get<BoxUnion>(m).preimage(da->k, da->b));
      return out;
    }
    if (fam == Family::grid) {
      for (const auto& b : da->b) {
        if (b != 0) throw Error("grid preimage supports linear maps only");
      }
      IntMatrix m(da->k.size(), std::vector<std::int64_t>(da->k.size(), 0));
      for (std::size_t i = 0; i < da->k.size(); ++i) m[i][i] = da->k[i].convert_to<std::int64_t>();
      return preimage_cover(c, IntegerMatrix{m}, grid_resolution);
    }
    throw Error("diagonal map needs a box or grid cover");
  }
  const auto& im = std::get<IntegerMatrix>(f);
  if (static_cast<int>(im.m.size()) != c.space.dim() || c.space.kind() != SpaceKind::torus) {
    throw Error("matrix does not match the torus dimension");
  }
  if (determinant(im.m) == 0) throw Error("matrix is not invertible on the torus (det 0)");
  if (fam == Family::boxes && is_diagonal(im.m)) {
    DiagonalAffine da;
    for (std::size_t i = 0; i < im.m.size(); ++i) {
      da.k.emplace_back(im.m[i][i]);
      da.b.emplace_back(0);
    }
    return preimage_cover(c, da, grid_resolution);
  }
  if (fam == Family::boxes) return preimage_cover(promote_to_grid(c, grid_resolution), f, grid_resolution);
  if (fam != Family::grid) throw Error("matrix map needs a box or grid cover");
  for (const auto& m : c.members) out.members.emplace_back(std::get<GridRegion>(m).preimage(im.m));
  return out;
}

/// Replaces every arc or box member by its connected components; grid and point members
/// are kept. Tags are copied to each piece.
inline Cover split_components(const Cover& c) {
  Cover out;
  out.space = c.space;
  out.notes = c.notes;
  for (std::size_t i = 0; i < c.members.size(); ++i) {
    const auto tag = c.tags.empty() ? std::vector<std::uint32_t>{static_cast<std::uint32_t>(i)} : c.tags[i];
    std::vector<OpenSet> pieces;
    if (const auto* a = std::get_if<ArcUnion>(&c.members[i])) {
      for (auto& p : a->split()) pieces.emplace_back(std::move(p));
    } else if (const auto* b = std::get_if<BoxUnion>(&c.members[i])) {
      for (auto& p : b->split()) pieces.emplace_back(std::move(p));
    } else {
      pieces.push_back(c.members[i]);
    }
    for (auto& p : pieces) {
      out.members.push_back(std::move(p));
      out.tags.push_back(tag);
    }
  }
  return out;
}

/// Diameter bounds; lo == hi except for grid regions.
struct DiameterBound {
  Rational lo;
  Rational hi;
  bool exact = true;
};

inline DiameterBound set_diameter(const SpaceDescriptor& space, const OpenSet& s) {
  if (const auto* a = std::get_if<ArcUnion>(&s)) {
    Rational d = a->diameter();
    return {d, d, true};
  }
  if (const auto* b = std::get_if<BoxUnion>(&s)) {
    Rational d = b->diameter();
    return {d, d, true};
  }
  if (const auto* g = std::get_if<GridRegion>(&s)) {
    auto [lo, hi] = g->diameter_bounds();
    return {lo, hi, false};
  }
  Rational d = std::get<PointSet>(s).diameter(space);
  return {d, d, true};
}

inline DiameterBound max_diameter(const Cover& c) {
  DiameterBound best{Rational(0), Rational(0), true};
  for (const auto& m : c.members) {
    auto d = set_diameter(c.space, m);
    best.lo = std::max(best.lo, d.lo);
    best.hi = std::max(best.hi, d.hi);
    best.exact = best.exact && d.exact;
  }
  return best;
}

/// Distance from p to the complement of s (a lower bound for box unions).
inline Rational set_depth(const SpaceDescriptor& space, const OpenSet& s, const Point& p) {
  if (const auto* a = std::get_if<ArcUnion>(&s)) return a->depth(std::get<RationalAngle>(p).value());
  if (const auto* b = std::get_if<BoxUnion>(&s)) return b->depth(std::get<TorusPoint>(p));
  if (const auto* q = std::get_if<PointSet>(&s)) return q->depth(space, std::get<IndexPoint>(p).index);
  throw Error("depth is not available for grid regions");
}

/// Uniform sample grid of the space: j/res per coordinate, or all points of a finite space.
inline std::vector<Point> sample_points(const SpaceDescriptor& space, std::int64_t res) {
  std::vector<Point> out;
  if (space.kind() == SpaceKind::abstract) {
    for (std::size_t i = 0; i < space.point_count(); ++i) out.emplace_back(IndexPoint{i});
    return out;
  }
  if (res < 1) throw Error("sample resolution must be positive");
  if (space.kind() == SpaceKind::circle) {
    for (std::int64_t j = 0; j < res; ++j) out.emplace_back(RationalAngle(Rational(j, res)));
    return out;
  }
  const int d = space.dim();
  std::vector<std::int64_t> idx(d, 0);
  while (true) {
    TorusPoint p;
    for (int a = 0; a < d; ++a) p.coords.emplace_back(Rational(idx[a], res));
    out.emplace_back(std::move(p));
    int a = 0;
    while (a < d) {
      if (++idx[a] < res) break;
      idx[a] = 0;
      ++a;
    }
    if (a == d) break;
  }
  return out;
}

/// A radius every sample-centred ball fits inside one member with, minus the sample mesh.
inline Rational lebesgue_number_lower_bound(const Cover& c, std::int64_t sample_resolution) {
  require_certified(c);
  if (c.family() == Family::grid) throw Error("depth is not available for grid regions");
  Rational mesh = c.space.kind() == SpaceKind::abstract ? Rational(0) : Rational(1, sample_resolution);
  std::optional<Rational> worst;
  for (const auto& p : sample_points(c.space, sample_resolution)) {
    Rational best = 0;
    for (const auto& m : c.members) best = std::max(best, set_depth(c.space, m, p));
    if (!worst || best < *worst) worst = best;
  }
  Rational r = *worst - mesh;
  return r > 0 ? r : Rational(0);
}

}  // namespace nervekit
