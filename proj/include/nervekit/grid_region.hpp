#pragma once

#include "nervekit/box_union.hpp"

#include <boost/dynamic_bitset.hpp>

#include <cstdint>
#include <utility>
#include <vector>

namespace nervekit {

using CellSet = boost::dynamic_bitset<std::uint64_t>;
using IntMatrix = std::vector<std::vector<std::int64_t>>;

/// Conservative approximation of an open subset of T^d on the uniform m^d grid of closed
/// cells. The true set contains every inner cell and lies inside the union of outer cells.
class GridRegion {
 public:
  GridRegion() = default;
  GridRegion(int dim, std::int64_t resolution) : dim_(dim), m_(resolution) {
    if (dim < 1) throw Error("grid dimension must be at least 1");
    if (resolution < 1) throw Error("grid resolution must be positive");
    std::int64_t n = 1;
    for (int i = 0; i < dim; ++i) n *= resolution;
    inner_.resize(static_cast<std::size_t>(n));
    outer_.resize(static_cast<std::size_t>(n));
  }

  static GridRegion full(int dim, std::int64_t resolution) {
    GridRegion g(dim, resolution);
    g.inner_.set();
    g.outer_.set();
    return g;
  }

  static GridRegion from_cells(int dim, std::int64_t resolution, CellSet inner, CellSet outer) {
    GridRegion g(dim, resolution);
    if (inner.size() != g.inner_.size() || outer.size() != g.outer_.size()) throw Error("grid cell set has wrong size");
    if (!inner.is_subset_of(outer)) throw Error("grid inner cells must be a subset of outer cells");
    g.inner_ = std::move(inner);
    g.outer_ = std::move(outer);
    return g;
  }

  /// Closed cell [c, c + 1/m] is inner when it lies inside an open box, outer when it meets one.
  static GridRegion from_box_union(const BoxUnion& u, std::int64_t resolution) {
    GridRegion g(u.dim(), resolution);
    const Rational step(1, resolution);
    for (const auto& box : u.boxes()) {
      std::vector<std::vector<std::int64_t>> in_axis(u.dim()), out_axis(u.dim());
      for (int a = 0; a < u.dim(); ++a) {
        const ArcComponent& f = box.factors[a];
        for (std::int64_t i = 0; i < resolution; ++i) {
          if (f.full) {
            in_axis[a].push_back(i);
            out_axis[a].push_back(i);
            continue;
          }
          bool inside = false, meets = false;
          for (int shift = 0; shift <= 1; ++shift) {
            Rational lo = step * i + shift;
            Rational hi = lo + step;
            inside = inside || (f.lo < lo && hi < f.hi);
            meets = meets || (lo < f.hi && hi > f.lo);
          }
          if (inside) in_axis[a].push_back(i);
          if (meets) out_axis[a].push_back(i);
        }
      }
      g.mark_product(in_axis, g.inner_);
      g.mark_product(out_axis, g.outer_);
    }
    return g;
  }

  int dim() const { return dim_; }
  std::int64_t resolution() const { return m_; }
  std::size_t cell_count() const { return inner_.size(); }
  const CellSet& inner() const { return inner_; }
  const CellSet& outer() const { return outer_; }
  bool empty() const { return outer_.none(); }
  bool certainly_nonempty() const { return inner_.any(); }

  std::vector<std::int64_t> cell_coords(std::size_t index) const {
    std::vector<std::int64_t> c(dim_);
    auto rest = static_cast<std::int64_t>(index);
    for (int a = 0; a < dim_; ++a) {
      c[a] = rest % m_;
      rest /= m_;
    }
    return c;
  }

  std::size_t cell_index(const std::vector<std::int64_t>& coords) const {
    std::int64_t idx = 0;
    for (int a = dim_ - 1; a >= 0; --a) idx = idx * m_ + (((coords[a] % m_) + m_) % m_);
    return static_cast<std::size_t>(idx);
  }

  TorusPoint cell_center(std::size_t index) const {
    TorusPoint p;
    for (auto c : cell_coords(index)) p.coords.emplace_back(Rational(2 * c + 1, 2 * m_));
    return p;
  }

  GridRegion intersect(const GridRegion& o) const {
    check_compatible(o);
    GridRegion g = *this;
    g.inner_ &= o.inner_;
    g.outer_ &= o.outer_;
    return g;
  }

  GridRegion unite(const GridRegion& o) const {
    check_compatible(o);
    GridRegion g = *this;
    g.inner_ |= o.inner_;
    g.outer_ |= o.outer_;
    return g;
  }

  /// Preimage under x -> M x on T^d. A cell is outer when its image meets an outer cell and
  /// inner when every cell its image meets is inner.
  GridRegion preimage(const IntMatrix& M) const {
    auto pattern = touched_pattern(M);
    GridRegion g(dim_, m_);
    std::vector<std::int64_t> shift(dim_);
    for (std::size_t idx = 0; idx < cell_count(); ++idx) {
      auto c = cell_coords(idx);
      for (int r = 0; r < dim_; ++r) {
        std::int64_t s = 0;
        for (int k = 0; k < dim_; ++k) s += M[r][k] * c[k];
        shift[r] = s;
      }
      bool any_outer = false, all_inner = true;
      std::vector<std::int64_t> cell(dim_);
      for (const auto& off : pattern) {
        for (int r = 0; r < dim_; ++r) cell[r] = off[r] + shift[r];
        std::size_t t = cell_index(cell);
        any_outer = any_outer || outer_[t];
        all_inner = all_inner && inner_[t];
        if (any_outer && !all_inner) break;
      }
      if (any_outer) g.outer_.set(idx);
      if (all_inner) g.inner_.set(idx);
    }
    return g;
  }

  /// Offsets (in cell units) of the closed cells met by the image of the unit cell.
  /// Exact separating-axis test in dimension 2; bounding-box superset otherwise.
  std::vector<std::vector<std::int64_t>> touched_pattern(const IntMatrix& M) const {
    if (static_cast<int>(M.size()) != dim_) throw Error("matrix size does not match grid dimension");
    std::vector<std::vector<std::int64_t>> verts;
    for (std::uint32_t mask = 0; mask < (1U << dim_); ++mask) {
      std::vector<std::int64_t> v(dim_, 0);
      for (int r = 0; r < dim_; ++r) {
        for (int k = 0; k < dim_; ++k) {
          if (mask & (1U << k)) v[r] += M[r][k];
        }
      }
      verts.push_back(std::move(v));
    }
    std::vector<std::int64_t> lo(dim_), hi(dim_);
    for (int r = 0; r < dim_; ++r) {
      lo[r] = hi[r] = verts[0][r];
      for (const auto& v : verts) {
        lo[r] = std::min(lo[r], v[r]);
        hi[r] = std::max(hi[r], v[r]);
      }
    }
    std::vector<std::vector<std::int64_t>> out;
    std::vector<std::int64_t> p(lo.begin(), lo.end());
    for (int r = 0; r < dim_; ++r) p[r] = lo[r] - 1;
    while (true) {
      if (dim_ != 2 || parallelogram_meets_cell(M, p)) out.push_back(p);
      int r = 0;
      while (r < dim_) {
        if (++p[r] <= hi[r]) break;
        p[r] = lo[r] - 1;
        ++r;
      }
      if (r == dim_) break;
    }
    return out;
  }

  /// Lower and upper bounds for the l-infinity diameter from inner and outer cells.
  std::pair<Rational, Rational> diameter_bounds() const { return {cells_diameter(inner_), cells_diameter(outer_)}; }

  friend bool operator==(const GridRegion&, const GridRegion&) = default;

 private:
  void check_compatible(const GridRegion& o) const {
    if (o.dim_ != dim_ || o.m_ != m_) throw Error("grid regions differ in dimension or resolution");
  }

  void mark_product(const std::vector<std::vector<std::int64_t>>& per_axis, CellSet& target) const {
    for (const auto& a : per_axis) {
      if (a.empty()) return;
    }
    std::vector<std::size_t> pos(dim_, 0);
    std::vector<std::int64_t> c(dim_);
    while (true) {
      for (int a = 0; a < dim_; ++a) c[a] = per_axis[a][pos[a]];
      target.set(cell_index(c));
      int a = 0;
      while (a < dim_) {
        if (++pos[a] < per_axis[a].size()) break;
        pos[a] = 0;
        ++a;
      }
      if (a == dim_) break;
    }
  }

  static bool parallelogram_meets_cell(const IntMatrix& M, const std::vector<std::int64_t>& p) {
    const std::int64_t ax = M[0][0], ay = M[1][0], bx = M[0][1], by = M[1][1];
    const std::int64_t px[4] = {0, ax, bx, ax + bx};
    const std::int64_t py[4] = {0, ay, by, ay + by};
    const std::int64_t qx[4] = {p[0], p[0] + 1, p[0], p[0] + 1};
    const std::int64_t qy[4] = {p[1], p[1], p[1] + 1, p[1] + 1};
    const std::int64_t axes[4][2] = {{1, 0}, {0, 1}, {-ay, ax}, {-by, bx}};
    for (const auto& n : axes) {
      std::int64_t pmin = INT64_MAX, pmax = INT64_MIN, qmin = INT64_MAX, qmax = INT64_MIN;
      for (int i = 0; i < 4; ++i) {
        std::int64_t s = n[0] * px[i] + n[1] * py[i];
        std::int64_t t = n[0] * qx[i] + n[1] * qy[i];
        pmin = std::min(pmin, s);
        pmax = std::max(pmax, s);
        qmin = std::min(qmin, t);
        qmax = std::max(qmax, t);
      }
      if (pmax < qmin || qmax < pmin) return false;
    }
    return true;
  }

  // Circle diameter of a union of closed cells along each axis, in doubled grid units.
  Rational cells_diameter(const CellSet& cells) const {
    std::int64_t best = 0;
    const std::int64_t period = 2 * m_;
    auto norm = [&](std::int64_t t) {
      t = ((t % period) + period) % period;
      return std::min(t, period - t);
    };
    for (int a = 0; a < dim_; ++a) {
      std::vector<bool> used(m_, false);
      for (auto i = cells.find_first(); i != CellSet::npos; i = cells.find_next(i)) used[cell_coords(i)[a]] = true;
      std::vector<std::int64_t> idx;
      for (std::int64_t i = 0; i < m_; ++i) {
        if (used[i]) idx.push_back(i);
      }
      for (std::size_t x = 0; x < idx.size() && best < m_; ++x) {
        for (std::size_t y = x; y < idx.size() && best < m_; ++y) {
          std::int64_t lo = 2 * (idx[y] - idx[x]) - 2;
          std::int64_t hi = lo + 4;
          // The half-period m is attained when some lo <= m + k * period <= hi.
          std::int64_t k = (hi - m_) >= 0 ? (hi - m_) / period : -((m_ - hi + period - 1) / period);
          if (m_ + k * period >= lo) {
            best = m_;
          } else {
            best = std::max({best, norm(lo), norm(hi)});
          }
        }
      }
    }
    return Rational(best, 2 * m_);
  }

  int dim_ = 0;
  std::int64_t m_ = 0;
  CellSet inner_;
  CellSet outer_;
};

}  // namespace nervekit
