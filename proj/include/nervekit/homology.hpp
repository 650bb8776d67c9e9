#pragma once

#include "nervekit/nerve.hpp"

#include <cstdint>
#include <vector>

namespace nervekit {

enum class CoefficientMode { rational, mod2 };

/// Sparse boundary matrix ∂_k: rows index Δ_{k-1}, columns index Δ_k.
struct BoundaryMatrix {
  int k = 0;
  std::size_t rows = 0;
  CoefficientMode mode = CoefficientMode::rational;
  /// Per column, (row, coefficient) pairs in increasing row order.
  std::vector<std::vector<std::pair<std::uint32_t, int>>> columns;

  std::size_t cols() const { return columns.size(); }
};

/// Face r of [v_0 .. v_k] (vertex v_r removed) enters with sign (-1)^r; mod 2 drops signs.
inline BoundaryMatrix boundary_matrix(const Nerve& n, int k, CoefficientMode mode) {
  if (k < 1 || k > n.dim()) throw Error("boundary dimension out of range");
  BoundaryMatrix m;
  m.k = k;
  m.mode = mode;
  const auto& faces = n.levels[k - 1];
  m.rows = faces.size();
  for (const auto& s : n.levels[k]) {
    std::vector<std::pair<std::uint32_t, int>> col;
    for (std::size_t r = 0; r < s.size(); ++r) {
      Simplex f;
      for (std::size_t t = 0; t < s.size(); ++t) {
        if (t != r) f.push_back(s[t]);
      }
      auto it = std::lower_bound(faces.begin(), faces.end(), f);
      if (it == faces.end() || *it != f) throw Error("nerve is not closed under faces");
      int sign = (mode == CoefficientMode::mod2 || r % 2 == 0) ? 1 : -1;
      col.emplace_back(static_cast<std::uint32_t>(it - faces.begin()), sign);
    }
    std::sort(col.begin(), col.end());
    m.columns.push_back(std::move(col));
  }
  return m;
}

/// Rank over Q by fraction-free (Bareiss) elimination on a dense integer copy.
inline std::size_t rank_rational(const BoundaryMatrix& m) {
  const std::size_t R = m.rows, C = m.cols();
  if (R == 0 || C == 0) return 0;
  std::vector<std::vector<BigInt>> a(R, std::vector<BigInt>(C, 0));
  for (std::size_t c = 0; c < C; ++c) {
    for (auto [r, v] : m.columns[c]) a[r][c] = v;
  }
  BigInt prev = 1;
  std::size_t rank = 0;
  for (std::size_t c = 0; c < C && rank < R; ++c) {
    std::size_t p = rank;
    while (p < R && a[p][c] == 0) ++p;
    if (p == R) continue;
    std::swap(a[p], a[rank]);
    for (std::size_t r = rank + 1; r < R; ++r) {
      for (std::size_t j = c + 1; j < C; ++j) {
        a[r][j] = (a[rank][c] * a[r][j] - a[r][c] * a[rank][j]) / prev;
      }
      a[r][c] = 0;
    }
    prev = a[rank][c];
    ++rank;
  }
  return rank;
}

/// Rank over Q by sparse column reduction on lowest rows; pivot columns are scaled to a
/// leading 1, which keeps entries small on boundary matrices.
inline std::size_t rank_rational_sparse(const BoundaryMatrix& m) {
  using Entry = std::pair<std::uint32_t, Rational>;
  std::vector<std::int64_t> owner(m.rows, -1);
  std::vector<std::vector<Entry>> pivots;
  std::vector<Entry> scratch;
  for (const auto& src : m.columns) {
    std::vector<Entry> col;
    for (auto [r, v] : src) col.emplace_back(r, Rational(v));
    while (!col.empty() && owner[col.back().first] >= 0) {
      const auto& piv = pivots[static_cast<std::size_t>(owner[col.back().first])];
      const Rational f = col.back().second;  // pivot entries are 1
      scratch.clear();
      std::size_t i = 0, j = 0;
      while (i < col.size() || j < piv.size()) {
        if (j == piv.size() || (i < col.size() && col[i].first < piv[j].first)) {
          scratch.push_back(std::move(col[i++]));
        } else if (i == col.size() || piv[j].first < col[i].first) {
          scratch.emplace_back(piv[j].first, -f * piv[j].second);
          ++j;
        } else {
          Rational v = col[i].second - f * piv[j].second;
          if (v != 0) scratch.emplace_back(col[i].first, std::move(v));
          ++i;
          ++j;
        }
      }
      col.swap(scratch);
    }
    if (!col.empty()) {
      const Rational lead = col.back().second;
      for (auto& e : col) e.second /= lead;
      owner[col.back().first] = static_cast<std::int64_t>(pivots.size());
      pivots.push_back(std::move(col));
    }
  }
  return pivots.size();
}

/// Rank over GF(2): bit-packed columns reduced until their lowest set rows are distinct.
inline std::size_t rank_mod2(const BoundaryMatrix& m) {
  const std::size_t words = (m.rows + 63) / 64;
  std::vector<std::int64_t> owner(m.rows, -1);
  std::vector<std::vector<std::uint64_t>> reduced;
  reduced.reserve(m.cols());
  std::size_t rank = 0;
  auto lowest = [&](const std::vector<std::uint64_t>& col) -> std::int64_t {
    for (std::size_t w = words; w-- > 0;) {
      if (col[w]) return static_cast<std::int64_t>(w * 64 + 63 - static_cast<std::size_t>(__builtin_clzll(col[w])));
    }
    return -1;
  };
  for (const auto& src : m.columns) {
    std::vector<std::uint64_t> col(words, 0);
    for (auto [r, v] : src) {
      if (v % 2 != 0) col[r / 64] ^= (std::uint64_t{1} << (r % 64));
    }
    std::int64_t low = lowest(col);
    while (low >= 0 && owner[low] >= 0) {
      const auto& piv = reduced[owner[low]];
      for (std::size_t w = 0; w < words; ++w) col[w] ^= piv[w];
      low = lowest(col);
    }
    if (low >= 0) {
      owner[low] = static_cast<std::int64_t>(reduced.size());
      ++rank;
    }
    reduced.push_back(std::move(col));
  }
  return rank;
}

/// Rank over GF(2) with sparse sorted columns, for matrices too tall to bit-pack.
inline std::size_t rank_mod2_sparse(const BoundaryMatrix& m) {
  std::vector<std::int64_t> owner(m.rows, -1);
  std::vector<std::vector<std::uint32_t>> reduced;
  std::size_t rank = 0;
  for (const auto& src : m.columns) {
    std::vector<std::uint32_t> col;
    for (auto [r, v] : src) {
      if (v % 2 != 0) col.push_back(r);
    }
    while (!col.empty() && owner[col.back()] >= 0) {
      const auto& piv = reduced[owner[col.back()]];
      std::vector<std::uint32_t> x;
      std::set_symmetric_difference(col.begin(), col.end(), piv.begin(), piv.end(), std::back_inserter(x));
      col = std::move(x);
    }
    if (!col.empty()) {
      owner[col.back()] = static_cast<std::int64_t>(reduced.size());
      ++rank;
    }
    reduced.push_back(std::move(col));
  }
  return rank;
}

/// rank ∂_1 = |Δ_0| - (number of connected components), over any field.
inline std::size_t edge_boundary_rank(const Nerve& n) {
  std::vector<std::size_t> parent(n.count(0));
  for (std::size_t i = 0; i < parent.size(); ++i) parent[i] = i;
  auto find = [&](std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  std::size_t rank = 0;
  for (const auto& e : n.levels[1]) {
    auto a = find(e[0]), b = find(e[1]);
    if (a != b) {
      parent[a] = b;
      ++rank;
    }
  }
  return rank;
}

inline std::size_t boundary_rank(const Nerve& n, int k, CoefficientMode mode) {
  if (k == 1 && n.vertex_count == n.count(0) && n.count(0) > 4096) return edge_boundary_rank(n);
  auto m = boundary_matrix(n, k, mode);
  if (mode == CoefficientMode::rational) return m.rows * m.cols() <= 40000 ? rank_rational(m) : rank_rational_sparse(m);
  return m.rows <= 4096 ? rank_mod2(m) : rank_mod2_sparse(m);
}

/// Betti numbers with cycle ranks z_i, boundary ranks b_i and chain ranks c_i.
struct BettiVector {
  std::vector<std::int64_t> betti;
  std::vector<std::int64_t> z;
  std::vector<std::int64_t> b;
  std::vector<std::int64_t> c;
};

inline BettiVector betti_numbers(const Nerve& n, CoefficientMode mode) {
  BettiVector v;
  const int top = n.dim();
  if (top < 0) return v;
  std::vector<std::int64_t> rank(top + 2, 0);
  for (int k = 1; k <= top; ++k) rank[k] = static_cast<std::int64_t>(boundary_rank(n, k, mode));
  for (int i = 0; i <= top; ++i) {
    std::int64_t ci = static_cast<std::int64_t>(n.count(i));
    std::int64_t zi = ci - rank[i];
    std::int64_t bi = rank[i + 1];
    v.c.push_back(ci);
    v.z.push_back(zi);
    v.b.push_back(bi);
    v.betti.push_back(zi - bi);
  }
  return v;
}

/// Alternating simplex-count sum.
inline std::int64_t euler_characteristic(const Nerve& n) {
  std::int64_t chi = 0;
  for (std::size_t i = 0; i < n.levels.size(); ++i) {
    auto c = static_cast<std::int64_t>(n.levels[i].size());
    chi += (i % 2 == 0) ? c : -c;
  }
  return chi;
}

inline std::int64_t euler_from_betti(const BettiVector& v) {
  std::int64_t chi = 0;
  for (std::size_t i = 0; i < v.betti.size(); ++i) chi += (i % 2 == 0) ? v.betti[i] : -v.betti[i];
  return chi;
}

/// The same characteristic through partial sums: 2 Σ_{i<dim} (-1)^i G_i + (-1)^dim G_dim.
inline std::int64_t euler_from_partial_sums(const ComplexityProfile& p) {
  if (p.dim < 0) return 0;
  std::int64_t acc = 0;
  for (int i = 0; i < p.dim; ++i) {
    auto g = static_cast<std::int64_t>(p.g[i]);
    acc += (i % 2 == 0) ? 2 * g : -2 * g;
  }
  auto top = static_cast<std::int64_t>(p.g[p.dim]);
  return acc + ((p.dim % 2 == 0) ? top : -top);
}

/// Σ_i B_i t^i.
inline Rational poincare_polynomial(const BettiVector& v, const Rational& t) {
  Rational acc = 0, power = 1;
  for (auto bi : v.betti) {
    acc += power * bi;
    power *= t;
  }
  return acc;
}

inline Rational poincare_polynomial(const Nerve& n, const Rational& t, CoefficientMode mode = CoefficientMode::rational) {
  return poincare_polynomial(betti_numbers(n, mode), t);
}

}  // namespace nervekit
