#pragma once

#include "nervekit/homology.hpp"
#include "nervekit/irreducible.hpp"

#include <cmath>
#include <limits>
#include <optional>
#include <sstream>
#include <string>
#include <variant>
#include <vector>

namespace nervekit {

/// x -> k x + offset on the circle.
struct CircleTimes {
  BigInt k;
  Rational offset{0};
};

/// x -> M x on T^d.
struct TorusMatrixAction {
  IntMatrix m;
};

/// Commuting circle maps, one per torus axis; the semigroup rank equals the factor count.
struct ProductAction {
  std::vector<CircleTimes> factors;
};

/// Shift on the product of copies of a fixed irreducible cover with the given simplex
/// counts |Δ_0|..|Δ_p|; growth is evaluated through product cell counts.
struct ShiftTruncation {
  std::vector<BigInt> profile;
  int p = 0;
};

using ActionSpec = std::variant<CircleTimes, TorusMatrixAction, ProductAction, ShiftTruncation>;

inline int action_rank(const ActionSpec& a) {
  if (const auto* p = std::get_if<ProductAction>(&a)) return static_cast<int>(p->factors.size());
  return 1;
}

inline void validate_action(const ActionSpec& a) {
  auto check_k = [](const BigInt& k) {
    if (k < 2 && k > -2) throw Error("circle multiplier must satisfy |k| >= 2");
  };
  if (const auto* c = std::get_if<CircleTimes>(&a)) check_k(c->k);
  if (const auto* p = std::get_if<ProductAction>(&a)) {
    if (p->factors.empty()) throw Error("product action needs at least one factor");
    for (const auto& f : p->factors) check_k(f.k);
  }
  if (const auto* t = std::get_if<TorusMatrixAction>(&a)) {
    if (t->m.empty() || determinant(t->m) == 0) throw Error("matrix is not invertible on the torus (det 0)");
  }
  if (const auto* s = std::get_if<ShiftTruncation>(&a)) {
    if (s->profile.empty() || s->profile[0] < 2) throw Error("shift profile needs |Δ_0| >= 2");
    if (s->p < 0 || static_cast<std::size_t>(s->p) + 1 != s->profile.size()) {
      throw Error("shift dimension p must equal the profile length minus one");
    }
  }
}

/// Boxes F(n) = Π_a {0 .. s_a n - 1} in N^r; cubes when every side multiplier is 1.
struct FolnerSequence {
  int rank = 1;
  std::vector<int> sides;

  static FolnerSequence cubes(int r) { return {r, std::vector<int>(r, 1)}; }

  std::vector<int> extent(int n) const {
    std::vector<int> e(rank);
    for (int a = 0; a < rank; ++a) e[a] = n * (sides.empty() ? 1 : sides[a]);
    return e;
  }

  std::uint64_t size(int n) const {
    std::uint64_t s = 1;
    for (int e : extent(n)) s *= static_cast<std::uint64_t>(e);
    return s;
  }

  std::vector<std::vector<int>> elements(int n) const { return box(extent(n), std::vector<int>(rank, 0)); }

  /// F(n) minus F(n - 1), in lexicographic order.
  std::vector<std::vector<int>> shell(int n) const {
    if (n <= 1) return elements(n);
    auto prev = extent(n - 1);
    std::vector<std::vector<int>> out;
    for (auto& g : elements(n)) {
      bool inside = true;
      for (int a = 0; a < rank; ++a) inside = inside && g[a] < prev[a];
      if (!inside) out.push_back(std::move(g));
    }
    return out;
  }

 private:
  std::vector<std::vector<int>> box(const std::vector<int>& ext, std::vector<int> cur) const {
    std::vector<std::vector<int>> out;
    for (int e : ext) {
      if (e <= 0) return out;
    }
    while (true) {
      out.push_back(cur);
      int a = rank - 1;
      while (a >= 0) {
        if (++cur[a] < ext[a]) break;
        cur[a] = 0;
        --a;
      }
      if (a < 0) break;
    }
    return out;
  }
};

namespace detail {

inline CircleAffine power_of(const CircleTimes& c, int j) {
  // f^j(x) = k^j x + b (k^{j-1} + ... + 1)
  BigInt kj = pow_big(c.k, static_cast<std::uint64_t>(j));
  Rational geometric = 0;
  BigInt term = 1;
  for (int i = 0; i < j; ++i) {
    geometric += Rational(term);
    term *= c.k;
  }
  return {kj, c.offset * geometric};
}

inline IntMatrix matrix_power(const IntMatrix& m, int j) {
  const std::size_t n = m.size();
  IntMatrix r(n, std::vector<std::int64_t>(n, 0));
  for (std::size_t i = 0; i < n; ++i) r[i][i] = 1;
  for (int step = 0; step < j; ++step) {
    IntMatrix next(n, std::vector<std::int64_t>(n, 0));
    for (std::size_t a = 0; a < n; ++a) {
      for (std::size_t b = 0; b < n; ++b) {
        for (std::size_t c = 0; c < n; ++c) next[a][b] += r[a][c] * m[c][b];
      }
    }
    r = std::move(next);
  }
  return r;
}

inline EndomorphismSpec element_map(const ActionSpec& act, const std::vector<int>& g) {
  if (const auto* c = std::get_if<CircleTimes>(&act)) return power_of(*c, g.at(0));
  if (const auto* p = std::get_if<ProductAction>(&act)) {
    DiagonalAffine d;
    for (std::size_t a = 0; a < p->factors.size(); ++a) {
      auto f = power_of(p->factors[a], g.at(a));
      d.k.push_back(f.k);
      d.b.push_back(f.b);
    }
    return d;
  }
  if (const auto* t = std::get_if<TorusMatrixAction>(&act)) return IntegerMatrix{matrix_power(t->m, g.at(0))};
  throw Error("shift truncations are evaluated by cell counts, not by pullbacks");
}

inline bool is_identity(const std::vector<int>& g) {
  for (int x : g) {
    if (x != 0) return false;
  }
  return true;
}

// Pullback of the base cover by one semigroup element, split into connected pieces and
// tagged with the base member index.
inline Cover pullback(const Cover& base, const ActionSpec& act, const std::vector<int>& g, std::int64_t res) {
  Cover tagged = base;
  tagged.tags.clear();
  for (std::uint32_t i = 0; i < base.size(); ++i) tagged.tags.push_back({i});
  Cover pre = is_identity(g) ? tagged : preimage_cover(tagged, element_map(act, g), res);
  return split_components(pre);
}

// Refinement by one pullback, concatenating itineraries and splitting components.
inline Cover refine_with(const Cover& cur, const Cover& pb) {
  Cover r = common_refinement(cur, pb);
  for (auto& t : r.tags) {
    auto left = cur.tags.empty() ? std::vector<std::uint32_t>{t[0]} : cur.tags[t[0]];
    left.insert(left.end(), pb.tags[t[1]].begin(), pb.tags[t[1]].end());
    t = std::move(left);
  }
  r.notes = cur.notes;
  return split_components(r);
}

// Non-diagonal matrices leave the box family: the base cover becomes a grid cover.
inline Cover prepare_base(const Cover& a, const ActionSpec& act, std::int64_t res) {
  if (const auto* t = std::get_if<TorusMatrixAction>(&act)) {
    if (a.family() == Family::boxes && !is_diagonal(t->m)) return promote_to_grid(a, res);
  }
  return a;
}

}  // namespace detail

/// α_F: connected pieces of the common refinement of the pullbacks γ^{-1}α, γ in F.
/// Tags hold itineraries (the base member chosen for each γ in the order of F).
inline Cover iterate_cover(const Cover& a, const ActionSpec& act, const std::vector<std::vector<int>>& F,
                           std::int64_t grid_resolution = 256) {
  validate_action(act);
  if (F.empty()) throw Error("the index set F must be nonempty");
  Cover base = detail::prepare_base(a, act, grid_resolution);
  Cover cur = detail::pullback(base, act, F.front(), grid_resolution);
  for (std::size_t i = 1; i < F.size(); ++i) cur = detail::refine_with(cur, detail::pullback(base, act, F[i], grid_resolution));
  return cur;
}

struct ControllingSequence {
  enum class Kind { standard, logarithmic, custom };
  Kind kind = Kind::standard;
  /// Values c(n) for n = 1, 2, ... when kind is custom.
  std::vector<double> table;

  double value(int n, std::uint64_t size_f) const {
    switch (kind) {
      case Kind::standard: return static_cast<double>(size_f);
      case Kind::logarithmic: return std::log(static_cast<double>(size_f));
      case Kind::custom:
        if (n < 1 || static_cast<std::size_t>(n) > table.size()) throw Error("custom controlling sequence too short");
        return table[n - 1];
    }
    return std::numeric_limits<double>::quiet_NaN();
  }

  const char* name() const {
    switch (kind) {
      case Kind::standard: return "standard";
      case Kind::logarithmic: return "logarithmic";
      case Kind::custom: return "custom";
    }
    return "unknown";
  }
};

/// log(x) / c, NaN when c is not positive.
inline double normalized_log(const BigInt& x, double c) {
  if (!(c > 0)) return std::numeric_limits<double>::quiet_NaN();
  return log_big(x) / c;
}

struct GrowthRow {
  int n = 0;
  std::uint64_t size_f = 0;
  std::size_t members = 0;
  std::vector<BigInt> g;
  std::vector<BigInt> s;
  std::vector<bool> s_exact;
  BigInt dim = 0;
  BigInt Dim = 0;
  bool Dim_exact = false;
  std::vector<std::int64_t> betti;
  std::optional<BigInt> chi;
  std::optional<Rational> max_diameter;
  std::vector<double> ent;
  double dim_growth = 0;
  bool certified = true;
};

struct GrowthTable {
  int K = 0;
  std::string control;
  std::vector<GrowthRow> rows;
  bool truncated = false;
  std::string truncation_reason;
  std::vector<std::string> notes;
};

struct GrowthOptions {
  int stages = 1;
  int K = 0;
  ControllingSequence control;
  std::size_t budget = 24;
  std::size_t member_cap = 200000;
  /// Largest raw nerve (total simplices) enumerated per stage; higher levels report na.
  std::size_t simplex_cap = 2000000;
  /// Levels above K + 1 serve only the Euler characteristic and stop at this smaller total.
  std::size_t euler_cap = 200000;
  std::int64_t grid_resolution = 256;
  std::optional<FolnerSequence> folner;
  CoefficientMode mode = CoefficientMode::mod2;
};

namespace detail {

/// Stage n uses |F| = sizes[n - 1] coordinates carrying α_p; cell counts come from the
/// product decomposition of the nerve.
inline GrowthTable shift_growth(const ShiftTruncation& sh, const std::vector<std::uint64_t>& sizes, int K,
                                const ControllingSequence& control) {
  GrowthTable t;
  t.K = K;
  t.control = control.name();
  for (int n = 1; n <= static_cast<int>(sizes.size()); ++n) {
    GrowthRow r;
    r.n = n;
    r.size_f = sizes[n - 1];
    std::vector<std::vector<BigInt>> factors(r.size_f, sh.profile);
    BigInt run = 0;
    for (int k = 0; k <= K; ++k) {
      run += product_cell_counts(factors, k);
      r.g.push_back(run);
      r.s.push_back(run);
      r.s_exact.push_back(true);
    }
    r.members = r.g[0].convert_to<std::size_t>();
    r.dim = BigInt(sh.p) * r.size_f;
    r.Dim = r.dim;
    r.Dim_exact = true;
    BigInt chi_factor = 0;
    for (std::size_t i = 0; i < sh.profile.size(); ++i) chi_factor += (i % 2 == 0) ? sh.profile[i] : BigInt(-sh.profile[i]);
    BigInt chi = 1;
    for (std::uint64_t i = 0; i < r.size_f; ++i) chi *= chi_factor;
    r.chi = chi;
    double c = control.value(n, r.size_f);
    for (const auto& s : r.s) r.ent.push_back(normalized_log(s, c));
    r.dim_growth = c > 0 ? r.Dim.convert_to<double>() / c : std::numeric_limits<double>::quiet_NaN();
    t.rows.push_back(std::move(r));
  }
  return t;
}

}  // namespace detail

/// Per-stage complexity along the Følner boxes, computing α_{F(n)} incrementally from
/// α_{F(n-1)} and the pullbacks over the new shell.
inline GrowthTable growth_table(const Cover& a, const ActionSpec& act, const GrowthOptions& opt) {
  validate_action(act);
  if (opt.stages < 1) throw Error("stages must be at least 1");
  if (opt.K < 0) throw Error("K must be nonnegative");
  if (const auto* sh = std::get_if<ShiftTruncation>(&act)) {
    std::vector<std::uint64_t> sizes;
    for (int n = 1; n <= opt.stages; ++n) sizes.push_back(static_cast<std::uint64_t>(n));
    return detail::shift_growth(*sh, sizes, opt.K, opt.control);
  }
  require_certified(a);
  FolnerSequence fol = opt.folner.value_or(FolnerSequence::cubes(action_rank(act)));
  if (fol.rank != action_rank(act)) throw Error("Folner sequence rank does not match the action");
  GrowthTable t;
  t.K = opt.K;
  t.control = opt.control.name();
  Cover base = detail::prepare_base(a, act, opt.grid_resolution);
  t.notes = base.notes;
  Cover cur;
  for (int n = 1; n <= opt.stages; ++n) {
    auto shell = fol.shell(n);
    for (const auto& g : shell) {
      Cover pb = detail::pullback(base, act, g, opt.grid_resolution);
      cur = cur.members.empty() ? pb : detail::refine_with(cur, pb);
      if (cur.size() > opt.member_cap) break;
    }
    if (cur.size() > opt.member_cap) {
      t.truncated = true;
      t.truncation_reason = "member cap " + std::to_string(opt.member_cap) + " exceeded at stage " + std::to_string(n);
      break;
    }
    GrowthRow r;
    r.n = n;
    r.size_f = fol.size(n);
    r.members = cur.size();
    AtomTable table = AtomTable::build(cur.members);
    for (std::size_t x = 0; x < table.size(); ++x) r.certified = r.certified && !table.inside[x].empty();
    if (!r.certified) {
      t.truncated = true;
      t.truncation_reason = "stage " + std::to_string(n) + " cover uncertified at resolution " +
                            std::to_string(opt.grid_resolution);
      break;
    }
    // Raw nerve levels are enumerated only while their size bound stays under the cap;
    // homology runs on the levels through K + 1.
    const int raw_dim = nerve_dimension_from_atoms(table);
    r.dim = raw_dim;
    auto bounds = nerve_level_bounds(table, raw_dim);
    int level = 0;
    double total = bounds[0];
    auto cap_at = [&](int l) { return static_cast<double>(l <= opt.K + 1 ? opt.simplex_cap : opt.euler_cap); };
    while (level < raw_dim && total + bounds[level + 1] <= cap_at(level + 1)) {
      total += bounds[level + 1];
      ++level;
    }
    Nerve nerve = nerve_from_atoms(table, level);
    const bool complete = !nerve.capped;
    auto prof = complexity_profile(nerve);
    for (int k = 0; k <= opt.K; ++k) {
      if (k <= level || complete) r.g.emplace_back(prof.G(k));
    }
    if (complete) r.chi = BigInt(euler_characteristic(nerve));
    const auto hlevels = static_cast<std::size_t>(opt.K) + 2;
    if (nerve.levels.size() > hlevels) {
      nerve.levels.resize(hlevels);
      nerve.max_dim_cap = opt.K + 1;
      nerve.capped = true;
    }
    auto betti = betti_numbers(nerve, opt.mode);
    for (int k = 0; k <= opt.K; ++k) {
      if (k < level || complete) r.betti.push_back(k < static_cast<int>(betti.betti.size()) ? betti.betti[k] : 0);
    }
    SubcoverSearch search(cur, std::move(table));
    for (int k = 0; k <= opt.K; ++k) {
      auto est = search.s_k(k, opt.budget);
      r.s.emplace_back(est.value);
      r.s_exact.push_back(est.exact);
    }
    auto dim_est = search.dim_min(opt.budget);
    r.Dim = dim_est.value;
    r.Dim_exact = dim_est.exact;
    r.max_diameter = max_diameter(cur).hi;
    double c = opt.control.value(n, r.size_f);
    for (const auto& s : r.s) r.ent.push_back(normalized_log(s, c));
    r.dim_growth = c > 0 ? static_cast<double>(dim_est.value) / c : std::numeric_limits<double>::quiet_NaN();
    t.rows.push_back(std::move(r));
  }
  return t;
}

inline std::string growth_csv(const GrowthTable& t) {
  std::ostringstream os;
  const int K = t.K;
  os << "n,sizeF,members";
  for (int k = 0; k <= K; ++k) os << ",g" << k;
  for (int k = 0; k <= K; ++k) os << ",s" << k;
  for (int k = 0; k <= K; ++k) os << ",sexact" << k;
  os << ",dim,Dim";
  for (int k = 0; k <= K; ++k) os << ",b" << k;
  os << ",chi,maxdiam_num,maxdiam_den";
  for (int k = 0; k <= K; ++k) os << ",ent" << k;
  os << ",dimgrowth\n";
  for (const auto& r : t.rows) {
    os << r.n << ',' << r.size_f << ',' << r.members;
    for (int k = 0; k <= K; ++k) {
      os << ',';
      if (k < static_cast<int>(r.g.size())) os << r.g[k];
      else os << "na";
    }
    for (const auto& s : r.s) os << ',' << s;
    for (bool e : r.s_exact) os << ',' << (e ? 1 : 0);
    os << ',' << r.dim << ',' << r.Dim;
    for (int k = 0; k <= K; ++k) {
      os << ',';
      if (k < static_cast<int>(r.betti.size())) os << r.betti[k];
      else os << "na";
    }
    os << ',' << (r.chi ? r.chi->str() : std::string("na"));
    if (r.max_diameter) {
      os << ',' << numerator_of(*r.max_diameter) << ',' << denominator_of(*r.max_diameter);
    } else {
      os << ",na,na";
    }
    for (double e : r.ent) os << ',' << format_real(e);
    os << ',' << format_real(r.dim_growth) << '\n';
  }
  return os.str();
}

struct StageBoundReport {
  bool pass = true;
  std::vector<std::string> violations;
};

/// Exact checks S_0 <= s0^{|F|} and S_k <= s0^{(k+1)|F|}; the second is the entropy bound
/// ent_k <= (k+1) log s0 under the standard controlling sequence.
inline StageBoundReport stage_bound_check(const GrowthTable& t, const BigInt& s0alpha) {
  StageBoundReport rep;
  for (const auto& r : t.rows) {
    for (std::size_t k = 0; k < r.s.size(); ++k) {
      BigInt bound = pow_big(s0alpha, (k + 1) * r.size_f);
      if (r.s[k] > bound) {
        rep.pass = false;
        rep.violations.push_back("stage " + std::to_string(r.n) + ": S_" + std::to_string(k) + " = " + r.s[k].str() +
                                 " exceeds " + s0alpha.str() + "^" + std::to_string((k + 1) * r.size_f));
      }
    }
  }
  return rep;
}

struct GeneratorReport {
  std::vector<Rational> diameters;
  bool nonincreasing = true;
  bool shrinking = false;
  std::optional<int> first_below;
  bool generator_by_expansivity = false;
  std::string verdict;
  std::string disclaimer =
      "finite stages cannot certify the generator property; they can only refute monotone shrinking";
};

/// Per-stage maximal diameters of α_{F(n)}. When an expansivity constant is supplied and
/// every member of the base cover has diameter at most that constant, the cover is a
/// generator by the expansive-diameter criterion.
inline GeneratorReport generator_diagnostics(const Cover& a, const ActionSpec& act, int stages, const Rational& threshold,
                                             std::optional<Rational> e_constant = std::nullopt,
                                             std::int64_t grid_resolution = 256) {
  validate_action(act);
  require_certified(a);
  GeneratorReport rep;
  FolnerSequence fol = FolnerSequence::cubes(action_rank(act));
  Cover base = detail::prepare_base(a, act, grid_resolution);
  Cover cur;
  for (int n = 1; n <= stages; ++n) {
    for (const auto& g : fol.shell(n)) {
      Cover pb = detail::pullback(base, act, g, grid_resolution);
      cur = cur.members.empty() ? pb : detail::refine_with(cur, pb);
    }
    Rational d = max_diameter(cur).hi;
    if (!rep.diameters.empty() && d > rep.diameters.back()) rep.nonincreasing = false;
    if (!rep.first_below && d < threshold) rep.first_below = n;
    rep.diameters.push_back(d);
  }
  rep.shrinking = rep.diameters.size() > 1 && rep.diameters.back() < rep.diameters.front();
  if (e_constant) rep.generator_by_expansivity = max_diameter(a).hi <= *e_constant;
  if (rep.generator_by_expansivity) {
    rep.verdict = "generator by the expansive-diameter criterion given the supplied constant";
  } else if (!rep.shrinking) {
    rep.verdict = "not shrinking";
  } else {
    rep.verdict = rep.nonincreasing ? "shrinking monotonically" : "shrinking, not monotone";
  }
  return rep;
}

}  // namespace nervekit
