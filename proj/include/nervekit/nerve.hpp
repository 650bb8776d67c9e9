#pragma once

#include "nervekit/cover.hpp"

#include <algorithm>
#include <cstdint>
#include <map>
#include <vector>

namespace nervekit {

using Simplex = std::vector<std::uint32_t>;

/// Simplicial complex stored as sorted strictly increasing vertex tuples per dimension.
struct Nerve {
  std::size_t vertex_count = 0;
  /// levels[k] holds the k-simplices in lexicographic order; levels[0] lists every vertex.
  std::vector<std::vector<Simplex>> levels;
  int max_dim_cap = 0;
  /// Set when simplices of dimension max_dim_cap + 1 exist but were not enumerated.
  bool capped = false;
  /// Grid covers only: simplices found on outer cells without a common inner cell.
  std::vector<Simplex> uncertified;

  int dim() const {
    for (int k = static_cast<int>(levels.size()) - 1; k >= 0; --k) {
      if (!levels[k].empty()) return k;
    }
    return -1;
  }

  std::size_t count(int k) const {
    return k >= 0 && k < static_cast<int>(levels.size()) ? levels[k].size() : 0;
  }

  bool contains(const Simplex& s) const {
    if (s.empty()) return false;
    std::size_t k = s.size() - 1;
    if (k >= levels.size()) return false;
    return std::binary_search(levels[k].begin(), levels[k].end(), s);
  }
};

namespace detail {

inline std::vector<std::uint32_t> sorted_meet(const std::vector<std::uint32_t>& a, const std::vector<std::uint32_t>& b) {
  std::vector<std::uint32_t> out;
  std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

// Level-wise enumeration: a candidate (k+1)-simplex is tested only when all its facets are
// present; it is kept when the atom lists of its vertices share an entry.
inline Nerve enumerate_nerve(std::size_t n, const std::vector<std::vector<std::uint32_t>>& atoms,
                             const std::vector<std::vector<std::uint32_t>>* certain_atoms, int max_dim) {
  Nerve nv;
  nv.vertex_count = n;
  nv.max_dim_cap = max_dim;
  nv.levels.emplace_back();
  std::vector<std::vector<std::uint32_t>> witness, certain;
  for (std::uint32_t v = 0; v < n; ++v) {
    nv.levels[0].push_back({v});
    witness.push_back(atoms[v]);
    if (certain_atoms) certain.push_back((*certain_atoms)[v]);
  }
  for (int k = 0; k <= max_dim; ++k) {
    const auto& cur = nv.levels[k];
    std::vector<Simplex> next;
    std::vector<std::vector<std::uint32_t>> next_witness, next_certain;
    bool stop_at_first = (k == max_dim);
    if (k == 0) {
      // Edges come straight from co-occurrence inside a shared atom.
      std::map<std::uint32_t, std::vector<std::uint32_t>> by_atom;
      for (std::uint32_t v = 0; v < n; ++v) {
        for (auto a : atoms[v]) by_atom[a].push_back(v);
      }
      std::vector<Simplex> pairs;
      for (const auto& [a, vs] : by_atom) {
        for (std::size_t x = 0; x < vs.size(); ++x) {
          for (std::size_t y = x + 1; y < vs.size(); ++y) pairs.push_back({vs[x], vs[y]});
        }
      }
      std::sort(pairs.begin(), pairs.end());
      pairs.erase(std::unique(pairs.begin(), pairs.end()), pairs.end());
      if (stop_at_first) {
        nv.capped = !pairs.empty();
        break;
      }
      for (auto& e : pairs) {
        next_witness.push_back(sorted_meet(atoms[e[0]], atoms[e[1]]));
        if (certain_atoms) next_certain.push_back(sorted_meet((*certain_atoms)[e[0]], (*certain_atoms)[e[1]]));
      }
      next = std::move(pairs);
    }
    for (std::size_t i = 0; k > 0 && i < cur.size() && !(stop_at_first && !next.empty()); ++i) {
      // Simplices sharing the first k vertices are contiguous in lexicographic order.
      for (std::size_t j = i + 1; j < cur.size(); ++j) {
        if (!std::equal(cur[i].begin(), cur[i].end() - 1, cur[j].begin())) break;
        Simplex cand = cur[i];
        cand.push_back(cur[j].back());
        bool faces = true;
        for (std::size_t drop = 0; drop + 2 < cand.size() && faces; ++drop) {
          Simplex f;
          for (std::size_t t = 0; t < cand.size(); ++t) {
            if (t != drop) f.push_back(cand[t]);
          }
          faces = std::binary_search(cur.begin(), cur.end(), f);
        }
        if (!faces) continue;
        auto w = sorted_meet(witness[i], atoms[cand.back()]);
        if (w.empty()) continue;
        next.push_back(std::move(cand));
        if (stop_at_first) break;
        next_witness.push_back(std::move(w));
        if (certain_atoms) next_certain.push_back(sorted_meet(certain[i], (*certain_atoms)[next.back().back()]));
      }
    }
    if (stop_at_first) {
      nv.capped = !next.empty();
      break;
    }
    if (next.empty()) break;
    if (certain_atoms) {
      for (std::size_t s = 0; s < next.size(); ++s) {
        if (next_certain[s].empty()) nv.uncertified.push_back(next[s]);
      }
    }
    nv.levels.push_back(std::move(next));
    witness = std::move(next_witness);
    certain = std::move(next_certain);
  }
  return nv;
}

/// One open atom per distinct (touch, inside) pattern; duplicates add nothing to a nerve.
inline std::vector<std::size_t> distinct_open_atoms(const AtomTable& t) {
  std::vector<std::size_t> idx;
  for (std::size_t a = 0; a < t.size(); ++a) {
    if (t.open[a]) idx.push_back(a);
  }
  auto key_less = [&](std::size_t x, std::size_t y) {
    if (t.touch[x] != t.touch[y]) return t.touch[x] < t.touch[y];
    return !t.exact && t.inside[x] < t.inside[y];
  };
  auto key_eq = [&](std::size_t x, std::size_t y) {
    return t.touch[x] == t.touch[y] && (t.exact || t.inside[x] == t.inside[y]);
  };
  std::stable_sort(idx.begin(), idx.end(), key_less);
  idx.erase(std::unique(idx.begin(), idx.end(), key_eq), idx.end());
  std::sort(idx.begin(), idx.end());
  return idx;
}

}  // namespace detail

/// Nerve from a prebuilt atom table, members restricted to open atoms.
inline Nerve nerve_from_atoms(const AtomTable& t, int max_dim) {
  if (max_dim < 0) throw Error("maxDim must be nonnegative");
  std::vector<std::vector<std::uint32_t>> atoms(t.member_count), certain(t.member_count);
  for (std::size_t a : detail::distinct_open_atoms(t)) {
    for (auto m : t.touch[a]) atoms[m].push_back(static_cast<std::uint32_t>(a));
    if (!t.exact) {
      for (auto m : t.inside[a]) certain[m].push_back(static_cast<std::uint32_t>(a));
    }
  }
  return detail::enumerate_nerve(t.member_count, atoms, t.exact ? nullptr : &certain, max_dim);
}

/// Upper bounds Σ_atoms binom(|touch|, k + 1) for |Δ_k|, k = 0..max_dim, saturating.
inline std::vector<double> nerve_level_bounds(const AtomTable& t, int max_dim) {
  std::vector<double> out(static_cast<std::size_t>(max_dim) + 1, 0.0);
  out[0] = static_cast<double>(t.member_count);
  for (std::size_t a : detail::distinct_open_atoms(t)) {
    double m = static_cast<double>(t.touch[a].size());
    double c = m;
    for (int k = 1; k <= max_dim; ++k) {
      c = c * (m - k) / (k + 1);
      if (c <= 0) break;
      out[k] += c;
    }
  }
  return out;
}

/// Dimension of the nerve read off the atoms: the largest overlap multiplicity minus one.
inline int nerve_dimension_from_atoms(const AtomTable& t) {
  std::size_t best = 0;
  for (std::size_t a = 0; a < t.size(); ++a) {
    if (t.open[a]) best = std::max(best, t.touch[a].size());
  }
  return static_cast<int>(best) - 1;
}

/// Nerve of the members listed in `subset` (relabelled in increasing order).
inline Nerve restricted_nerve(const AtomTable& t, const std::vector<std::uint32_t>& subset, int max_dim) {
  std::vector<std::int64_t> relabel(t.member_count, -1);
  auto sorted = subset;
  std::sort(sorted.begin(), sorted.end());
  for (std::size_t i = 0; i < sorted.size(); ++i) relabel[sorted[i]] = static_cast<std::int64_t>(i);
  std::vector<std::vector<std::uint32_t>> atoms(sorted.size()), certain(sorted.size());
  for (std::size_t a : detail::distinct_open_atoms(t)) {
    for (auto m : t.touch[a]) {
      if (relabel[m] >= 0) atoms[relabel[m]].push_back(static_cast<std::uint32_t>(a));
    }
    if (!t.exact) {
      for (auto m : t.inside[a]) {
        if (relabel[m] >= 0) certain[relabel[m]].push_back(static_cast<std::uint32_t>(a));
      }
    }
  }
  return detail::enumerate_nerve(sorted.size(), atoms, t.exact ? nullptr : &certain, max_dim);
}

inline Nerve build_nerve(const Cover& c, int max_dim) {
  if (max_dim < 0) throw Error("maxDim must be nonnegative");
  auto check = is_cover(c);
  if (!check.covered && check.definite) throw Error("uncovered space: the members do not cover the space");
  return nerve_from_atoms(AtomTable::build(c.members), max_dim);
}

/// Counts |Δ_k|, partial sums G_k and the dimension.
struct ComplexityProfile {
  std::vector<std::uint64_t> counts;
  std::vector<std::uint64_t> g;
  int dim = -1;

  std::uint64_t G(int k) const {
    if (g.empty() || k < 0) return 0;
    return g[std::min<std::size_t>(static_cast<std::size_t>(k), g.size() - 1)];
  }
};

inline ComplexityProfile profile_from_counts(std::vector<std::uint64_t> counts) {
  ComplexityProfile p;
  while (!counts.empty() && counts.back() == 0) counts.pop_back();
  p.counts = std::move(counts);
  std::uint64_t run = 0;
  for (auto c : p.counts) {
    run += c;
    p.g.push_back(run);
  }
  p.dim = static_cast<int>(p.counts.size()) - 1;
  return p;
}

inline ComplexityProfile complexity_profile(const Nerve& n) {
  std::vector<std::uint64_t> counts;
  for (const auto& l : n.levels) counts.push_back(l.size());
  return profile_from_counts(std::move(counts));
}

/// Vertex map with the deduplicated image of every simplex.
struct SimplicialMap {
  std::vector<std::uint32_t> vertex_map;
  std::vector<std::vector<Simplex>> images;
};

inline Simplex image_of(const Simplex& s, const std::vector<std::uint32_t>& vmap) {
  Simplex t;
  for (auto v : s) t.push_back(vmap.at(v));
  std::sort(t.begin(), t.end());
  t.erase(std::unique(t.begin(), t.end()), t.end());
  return t;
}

inline SimplicialMap induced_map(const RefinementWitness& w, const Nerve& src, const Nerve& dst) {
  if (w.map.size() != src.vertex_count) throw Error("witness inconsistent with nerves");
  SimplicialMap m;
  m.vertex_map = w.map;
  for (const auto& level : src.levels) {
    std::vector<Simplex> imgs;
    for (const auto& s : level) {
      Simplex t = image_of(s, w.map);
      if (static_cast<int>(t.size()) - 1 <= dst.max_dim_cap && !dst.contains(t)) {
        throw Error("witness inconsistent with nerves");
      }
      imgs.push_back(std::move(t));
    }
    m.images.push_back(std::move(imgs));
  }
  return m;
}

inline RefinementWitness compose(const RefinementWitness& first, const RefinementWitness& second) {
  RefinementWitness w;
  for (auto v : first.map) w.map.push_back(second.map.at(v));
  return w;
}

/// True when every simplex of dst is the image of some simplex of the source.
inline bool is_surjective(const SimplicialMap& m, const Nerve& dst) {
  for (const auto& level : dst.levels) {
    for (const auto& s : level) {
      bool hit = false;
      const auto k = s.size() - 1;
      if (k < m.images.size()) {
        for (std::size_t l = k; l < m.images.size() && !hit; ++l) {
          hit = std::find(m.images[l].begin(), m.images[l].end(), s) != m.images[l].end();
        }
      }
      if (!hit) return false;
    }
  }
  return true;
}

/// Subcomplex on the chosen vertices, relabelled 0..|keep|-1 in the given order.
inline Nerve induced_subcomplex(const Nerve& n, const std::vector<std::uint32_t>& keep) {
  std::vector<std::int64_t> relabel(n.vertex_count, -1);
  auto sorted = keep;
  std::sort(sorted.begin(), sorted.end());
  for (std::size_t i = 0; i < sorted.size(); ++i) relabel[sorted[i]] = static_cast<std::int64_t>(i);
  Nerve out;
  out.vertex_count = sorted.size();
  out.max_dim_cap = n.max_dim_cap;
  for (const auto& level : n.levels) {
    std::vector<Simplex> lv;
    for (const auto& s : level) {
      Simplex t;
      for (auto v : s) {
        if (relabel[v] < 0) break;
        t.push_back(static_cast<std::uint32_t>(relabel[v]));
      }
      if (t.size() == s.size()) lv.push_back(std::move(t));
    }
    if (lv.empty()) break;
    out.levels.push_back(std::move(lv));
  }
  if (out.levels.empty()) out.levels.emplace_back();
  return out;
}

/// Number of product cells of total dimension k: the sum over (k_1..k_r) with Σ k_i = k of
/// the products of the factor counts |Δ_{k_i}|.
inline BigInt product_cell_counts(const std::vector<std::vector<BigInt>>& factor_counts, int k) {
  if (k < 0) throw Error("cell dimension must be nonnegative");
  std::vector<BigInt> acc{BigInt(1)};
  for (const auto& f : factor_counts) {
    std::vector<BigInt> next(std::min<std::size_t>(acc.size() + f.size() - 1, static_cast<std::size_t>(k) + 1), BigInt(0));
    for (std::size_t i = 0; i < acc.size(); ++i) {
      for (std::size_t j = 0; j < f.size() && i + j < next.size(); ++j) next[i + j] += acc[i] * f[j];
    }
    acc = std::move(next);
  }
  return static_cast<std::size_t>(k) < acc.size() ? acc[k] : BigInt(0);
}

}  // namespace nervekit
