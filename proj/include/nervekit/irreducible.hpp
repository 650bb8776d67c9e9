#pragma once

#include "nervekit/nerve.hpp"

#include <bit>
#include <cstdint>
#include <optional>
#include <vector>

namespace nervekit {

namespace detail {

// Per member: sorted atoms it may meet (touch) and atoms it certainly contains (inside).
struct Incidence {
  std::vector<std::vector<std::uint32_t>> touch_of;
  std::vector<std::vector<std::uint32_t>> inside_of;
};

inline Incidence incidence(const AtomTable& t) {
  Incidence inc;
  inc.touch_of.assign(t.member_count, {});
  inc.inside_of.assign(t.member_count, {});
  for (std::size_t a = 0; a < t.size(); ++a) {
    for (auto m : t.touch[a]) inc.touch_of[m].push_back(static_cast<std::uint32_t>(a));
    for (auto m : t.inside[a]) inc.inside_of[m].push_back(static_cast<std::uint32_t>(a));
  }
  return inc;
}

// Redundant active members: every atom the member may meet is certainly inside another
// active member. Among identical members the lowest index is kept.
inline std::vector<std::uint32_t> redundant_members(const AtomTable& t, const Incidence& inc,
                                                    const std::vector<bool>& active) {
  const std::size_t n = t.member_count;
  std::vector<std::int64_t> twin_of(n, -1);
  for (std::size_t i = 0; i < n; ++i) {
    if (!active[i]) continue;
    for (std::size_t j = 0; j < i; ++j) {
      if (active[j] && twin_of[j] < 0 && inc.touch_of[i] == inc.touch_of[j] && inc.inside_of[i] == inc.inside_of[j]) {
        twin_of[i] = static_cast<std::int64_t>(j);
        break;
      }
    }
  }
  std::vector<std::uint32_t> out;
  for (std::uint32_t i = 0; i < n; ++i) {
    if (!active[i]) continue;
    bool redundant = true;
    for (auto a : inc.touch_of[i]) {
      bool other = false;
      for (auto j : t.inside[a]) {
        if (j == i || !active[j]) continue;
        // The lowest member of a duplicate class must not lean on its higher twins.
        if (twin_of[i] < 0 && twin_of[j] == static_cast<std::int64_t>(i)) continue;
        other = true;
        break;
      }
      if (!other) {
        redundant = false;
        break;
      }
    }
    if (redundant) out.push_back(i);
  }
  return out;
}

}  // namespace detail

/// Members contained in the union of the other members (certified for grids).
inline std::vector<std::uint32_t> find_redundant(const Cover& c) {
  require_certified(c);
  AtomTable t = AtomTable::build(c.members);
  return detail::redundant_members(t, detail::incidence(t), std::vector<bool>(c.size(), true));
}

struct ReductionTrace {
  std::vector<std::uint32_t> removed;
  std::vector<std::uint32_t> kept;
  Cover final_cover;
  /// For each kept member, a point lying in it and in no other kept member.
  std::vector<std::optional<Point>> private_points;
};

/// Removes the lowest-index redundant member until none is left.
inline ReductionTrace reduce(const Cover& c) {
  require_certified(c);
  AtomTable t = AtomTable::build(c.members);
  auto inc = detail::incidence(t);
  std::vector<bool> active(c.size(), true);
  ReductionTrace tr;
  while (true) {
    auto red = detail::redundant_members(t, inc, active);
    if (red.empty()) break;
    active[red.front()] = false;
    tr.removed.push_back(red.front());
  }
  tr.final_cover.space = c.space;
  for (std::uint32_t i = 0; i < c.size(); ++i) {
    if (!active[i]) continue;
    tr.kept.push_back(i);
    tr.final_cover.members.push_back(c.members[i]);
    tr.final_cover.tags.push_back(c.tags.empty() ? std::vector<std::uint32_t>{i} : c.tags[i]);
    std::optional<Point> witness;
    for (auto a : inc.inside_of[i]) {
      bool alone = true;
      for (auto j : t.touch[a]) {
        if (j != i && active[j]) {
          alone = false;
          break;
        }
      }
      if (alone) {
        witness = t.sample(a);
        break;
      }
    }
    tr.private_points.push_back(witness);
  }
  return tr;
}

/// Estimate of min G_k over subcovers; `members` lists the witness subcover.
struct SkEstimate {
  std::uint64_t value = 0;
  std::vector<std::uint32_t> members;
  bool exact = false;
};

struct DimEstimate {
  int value = 0;
  std::vector<std::uint32_t> members;
  bool exact = false;
  /// False when an exact minimum exceeds the manifold dimension of the space.
  bool within_manifold_bound = true;
};

/// Reusable search context for one cover: atom table and nerve up to a fixed dimension.
class SubcoverSearch {
 public:
  explicit SubcoverSearch(const Cover& c) : SubcoverSearch(c, AtomTable::build(c.members)) {}

  SubcoverSearch(const Cover& c, AtomTable table) : cover_(&c), table_(std::move(table)) {
    for (std::size_t a = 0; a < table_.size(); ++a) {
      if (table_.inside[a].empty()) throw Error("not a certified cover");
    }
  }

  const AtomTable& table() const { return table_; }

  std::uint64_t g_of(const std::vector<std::uint32_t>& subset, int k) const {
    return complexity_profile(restricted_nerve(table_, subset, k)).G(k);
  }

  /// Nerve dimension of a subcover: the most chosen members sharing an open atom, minus one.
  int dim_of(const std::vector<std::uint32_t>& subset) const {
    std::vector<bool> in(table_.member_count, false);
    for (auto m : subset) in[m] = true;
    int best = 0;
    for (std::size_t a = 0; a < table_.size(); ++a) {
      if (!table_.open[a]) continue;
      int c = 0;
      for (auto m : table_.touch[a]) c += in[m] ? 1 : 0;
      best = std::max(best, c);
    }
    return best - 1;
  }

  /// Small subcover: exact circular-arc minimum when every member is one arc, greedy otherwise.
  std::pair<std::vector<std::uint32_t>, bool> heuristic_subcover() const {
    if (!heuristic_) {
      if (auto arcs = circular_arc_minimum()) {
        heuristic_ = std::make_pair(*arcs, true);
      } else {
        heuristic_ = std::make_pair(greedy_subcover(), false);
      }
    }
    return *heuristic_;
  }

  SkEstimate s_k(int k, std::size_t budget, std::uint64_t node_cap = 5'000'000) const {
    if (k < 0) throw Error("k must be nonnegative");
    const std::size_t n = table_.member_count;
    auto [sub, min_card] = heuristic_subcover();
    SkEstimate est{g_of(sub, k), sub, min_card && k == 0};
    // The whole cover is itself a subcover; compare against it when its nerve is small.
    auto bounds = nerve_level_bounds(table_, k);
    double total = 0;
    for (double b : bounds) total += b;
    if (total <= 2e6) {
      std::vector<std::uint32_t> all(n);
      for (std::uint32_t i = 0; i < n; ++i) all[i] = i;
      std::uint64_t full = g_of(all, k);
      if (full < est.value) est = {full, all, false};
    }
    if (n <= budget && n <= 64) {
      Exhaustive ex(*this, k, false);
      if (ex.run(est.value, node_cap)) {
        est.exact = true;
        if (ex.best_value < est.value) est = {ex.best_value, ex.best_members, true};
      }
    }
    return est;
  }

  DimEstimate dim_min(std::size_t budget, std::uint64_t node_cap = 5'000'000) const {
    const std::size_t n = table_.member_count;
    auto [sub, unused] = heuristic_subcover();
    (void)unused;
    DimEstimate est{dim_of(sub), sub, false, true};
    if (n <= budget && n <= 64) {
      Exhaustive ex(*this, 0, true);
      if (ex.run(static_cast<std::uint64_t>(est.value), node_cap)) {
        est.exact = true;
        if (ex.best_value < static_cast<std::uint64_t>(est.value)) {
          est.value = static_cast<int>(ex.best_value);
          est.members = ex.best_members;
        }
      }
    }
    if (est.exact && cover_->space.kind() != SpaceKind::abstract && table_.exact) {
      est.within_manifold_bound = est.value <= cover_->space.manifold_dim();
    }
    return est;
  }

 private:
  // Exact minimum cardinality cover when all members are single arcs: fix the first arc,
  // then extend greedily; the best start is optimal.
  std::optional<std::vector<std::uint32_t>> circular_arc_minimum() const {
    const auto& ms = cover_->members;
    if (ms.empty() || family_of(ms.front()) != Family::arcs) return std::nullopt;
    std::vector<ArcComponent> arcs;
    for (const auto& m : ms) {
      auto cs = std::get<ArcUnion>(m).components();
      if (cs.size() != 1) return std::nullopt;
      arcs.push_back(cs.front());
    }
    for (std::uint32_t i = 0; i < arcs.size(); ++i) {
      if (arcs[i].full) return std::vector<std::uint32_t>{i};
    }
    // Unrolled copies (lo + t, hi + t), t in {0, 1}; endpoints replaced by ranks.
    std::vector<Rational> values;
    for (const auto& a : arcs) {
      for (int t = 0; t <= 1; ++t) {
        values.push_back(a.lo + t);
        values.push_back(a.hi + t);
      }
    }
    std::sort(values.begin(), values.end());
    values.erase(std::unique(values.begin(), values.end()), values.end());
    auto rank = [&](const Rational& x) {
      return static_cast<std::int64_t>(std::lower_bound(values.begin(), values.end(), x) - values.begin());
    };
    struct Piece {
      std::int64_t lo, hi;
      std::uint32_t member;
    };
    std::vector<Piece> pieces;
    for (std::uint32_t i = 0; i < arcs.size(); ++i) {
      for (int t = 0; t <= 1; ++t) pieces.push_back({rank(arcs[i].lo + t), rank(arcs[i].hi + t), i});
    }
    std::sort(pieces.begin(), pieces.end(), [](const Piece& a, const Piece& b) {
      return a.lo < b.lo || (a.lo == b.lo && a.member < b.member);
    });
    // best[p]: the piece with the largest hi among the first p + 1 pieces.
    std::vector<std::size_t> best(pieces.size());
    for (std::size_t p = 0; p < pieces.size(); ++p) {
      best[p] = (p > 0 && pieces[best[p - 1]].hi >= pieces[p].hi) ? best[p - 1] : p;
    }
    std::vector<std::int64_t> los;
    for (const auto& p : pieces) los.push_back(p.lo);
    // jump[p]: the piece reaching furthest among those containing the point pieces[p].hi.
    std::vector<std::int64_t> jump(pieces.size(), -1);
    for (std::size_t p = 0; p < pieces.size(); ++p) {
      auto cnt = std::lower_bound(los.begin(), los.end(), pieces[p].hi) - los.begin();
      if (cnt > 0 && pieces[best[cnt - 1]].hi > pieces[p].hi) jump[p] = static_cast<std::int64_t>(best[cnt - 1]);
    }
    // Every cover uses an arc through the least covered atom, so only those arcs start.
    std::size_t pivot_atom = 0, fewest = SIZE_MAX;
    for (std::size_t a = 0; a < table_.size(); ++a) {
      if (table_.inside[a].size() < fewest) {
        fewest = table_.inside[a].size();
        pivot_atom = a;
      }
    }
    std::optional<std::vector<std::uint32_t>> answer;
    for (auto s : table_.inside[pivot_atom]) {
      // Start from the unshifted copy of arc s.
      std::size_t start = 0;
      while (!(pieces[start].member == s && pieces[start].lo == rank(arcs[s].lo))) ++start;
      std::int64_t target = rank(arcs[s].lo + 1);
      std::vector<std::uint32_t> chosen{s};
      std::int64_t cur = static_cast<std::int64_t>(start);
      bool ok = true;
      while (pieces[cur].hi <= target) {
        if (answer && chosen.size() >= answer->size()) {
          ok = false;
          break;
        }
        cur = jump[cur];
        if (cur < 0) {
          ok = false;
          break;
        }
        chosen.push_back(pieces[cur].member);
      }
      if (!ok) continue;
      std::sort(chosen.begin(), chosen.end());
      chosen.erase(std::unique(chosen.begin(), chosen.end()), chosen.end());
      if (!answer || chosen.size() < answer->size()) answer = chosen;
    }
    return answer;
  }

  // Greedy set cover on atoms, then drop members made redundant, lowest index first.
  std::vector<std::uint32_t> greedy_subcover() const {
    const std::size_t n = table_.member_count;
    auto inc = detail::incidence(table_);
    std::vector<bool> covered(table_.size(), false), chosen(n, false);
    std::size_t remaining = table_.size();
    while (remaining > 0) {
      std::size_t best_gain = 0;
      std::uint32_t best_m = 0;
      for (std::uint32_t m = 0; m < n; ++m) {
        if (chosen[m]) continue;
        std::size_t gain = 0;
        for (auto a : inc.inside_of[m]) gain += covered[a] ? 0 : 1;
        if (gain > best_gain) {
          best_gain = gain;
          best_m = m;
        }
      }
      if (best_gain == 0) throw Error("not a certified cover");
      chosen[best_m] = true;
      for (auto a : inc.inside_of[best_m]) {
        if (!covered[a]) {
          covered[a] = true;
          --remaining;
        }
      }
    }
    auto red = detail::redundant_members(table_, inc, chosen);
    while (!red.empty()) {
      chosen[red.front()] = false;
      red = detail::redundant_members(table_, inc, chosen);
    }
    std::vector<std::uint32_t> out;
    for (std::uint32_t m = 0; m < n; ++m) {
      if (chosen[m]) out.push_back(m);
    }
    return out;
  }

  // Branch and bound over subcovers encoded as 64-bit masks. Both objectives (G_k and the
  // nerve dimension) are monotone in the chosen set, so the current value is a lower bound.
  struct Exhaustive {
    const SubcoverSearch& ctx;
    int k;
    bool dim_objective;
    std::vector<std::uint64_t> atoms;      // minimal coverage constraints
    std::vector<std::uint64_t> open_sets;  // maximal open-atom member sets
    std::vector<std::uint64_t> simplices;  // simplices up to dimension k
    std::uint64_t best_value = 0;
    std::vector<std::uint32_t> best_members;
    std::uint64_t nodes = 0;
    std::uint64_t cap = 0;
    bool aborted = false;
    bool improved = false;

    Exhaustive(const SubcoverSearch& c, int kk, bool dim_obj) : ctx(c), k(kk), dim_objective(dim_obj) {
      const auto& t = ctx.table_;
      std::vector<std::uint64_t> raw;
      for (std::size_t a = 0; a < t.size(); ++a) raw.push_back(mask_of(t.inside[a]));
      atoms = minimal_masks(raw);
      std::vector<std::uint64_t> opens;
      for (std::size_t a = 0; a < t.size(); ++a) {
        if (t.open[a]) opens.push_back(mask_of(t.touch[a]));
      }
      std::sort(opens.begin(), opens.end());
      opens.erase(std::unique(opens.begin(), opens.end()), opens.end());
      open_sets = opens;
      if (!dim_objective) {
        std::vector<std::uint32_t> all(t.member_count);
        for (std::uint32_t i = 0; i < all.size(); ++i) all[i] = i;
        Nerve full = restricted_nerve(t, all, k);
        for (const auto& level : full.levels) {
          for (const auto& s : level) simplices.push_back(mask_of(s));
        }
      }
    }

    static std::uint64_t mask_of(const std::vector<std::uint32_t>& v) {
      std::uint64_t m = 0;
      for (auto x : v) m |= std::uint64_t{1} << x;
      return m;
    }

    static std::vector<std::uint64_t> minimal_masks(std::vector<std::uint64_t> raw) {
      std::sort(raw.begin(), raw.end(), [](std::uint64_t a, std::uint64_t b) {
        int pa = std::popcount(a), pb = std::popcount(b);
        return pa < pb || (pa == pb && a < b);
      });
      raw.erase(std::unique(raw.begin(), raw.end()), raw.end());
      std::vector<std::uint64_t> keep;
      for (auto m : raw) {
        bool dominated = false;
        for (auto q : keep) {
          if ((q & m) == q) {
            dominated = true;
            break;
          }
        }
        if (!dominated) keep.push_back(m);
      }
      return keep;
    }

    std::uint64_t value(std::uint64_t set) const {
      if (dim_objective) {
        int best = 0;
        for (auto o : open_sets) best = std::max(best, std::popcount(o & set));
        return static_cast<std::uint64_t>(best > 0 ? best - 1 : 0);
      }
      std::uint64_t count = 0;
      for (auto s : simplices) count += ((s & ~set) == 0) ? 1 : 0;
      return count;
    }

    // Extra members any completion needs: atoms with pairwise disjoint candidate sets.
    std::uint64_t packing_bound(std::uint64_t set, std::uint64_t banned) const {
      if (dim_objective) return 0;
      std::uint64_t used = 0, need = 0;
      for (auto a : atoms) {
        if (a & set) continue;
        std::uint64_t avail = a & ~banned;
        if ((avail & used) == 0) {
          used |= avail;
          ++need;
        }
      }
      return need;
    }

    bool run(std::uint64_t incumbent, std::uint64_t node_cap) {
      best_value = incumbent;
      cap = node_cap;
      search(0, 0);
      return !aborted;
    }

    void search(std::uint64_t set, std::uint64_t banned) {
      if (aborted) return;
      if (++nodes > cap) {
        aborted = true;
        return;
      }
      std::uint64_t v = value(set);
      if (v + packing_bound(set, banned) >= best_value) return;
      std::int64_t pick = -1;
      int fewest = 65;
      for (std::size_t i = 0; i < atoms.size(); ++i) {
        if (atoms[i] & set) continue;
        int c = std::popcount(atoms[i] & ~banned);
        if (c == 0) return;
        if (c < fewest) {
          fewest = c;
          pick = static_cast<std::int64_t>(i);
        }
      }
      if (pick < 0) {
        best_value = v;
        best_members.clear();
        for (std::uint32_t m = 0; m < 64; ++m) {
          if (set & (std::uint64_t{1} << m)) best_members.push_back(m);
        }
        return;
      }
      std::uint64_t avail = atoms[pick] & ~banned;
      std::uint64_t local_ban = banned;
      while (avail) {
        std::uint64_t bit = avail & (~avail + 1);
        avail &= avail - 1;
        search(set | bit, local_ban);
        local_ban |= bit;
      }
    }
  };

  const Cover* cover_;
  AtomTable table_;
  mutable std::optional<std::pair<std::vector<std::uint32_t>, bool>> heuristic_;
};

inline SkEstimate s_k_estimate(const Cover& c, int k, std::size_t budget) {
  if (k < 0) throw Error("k must be nonnegative");
  require_certified(c);
  SubcoverSearch s(c);
  return s.s_k(k, budget);
}

inline DimEstimate dim_estimate(const Cover& c, std::size_t budget) {
  require_certified(c);
  SubcoverSearch s(c);
  return s.dim_min(budget);
}

}  // namespace nervekit
