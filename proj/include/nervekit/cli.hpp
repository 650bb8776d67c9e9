#pragma once

#include "nervekit/dynamics.hpp"
#include "nervekit/io.hpp"
#include "nervekit/irreducible.hpp"
#include "nervekit/realization.hpp"
#include "nervekit/riemann_bounds.hpp"
#include "nervekit/scenarios.hpp"

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace nervekit::cli {

enum ExitCode { ok = 0, validation_error = 1, truncated = 2 };

struct RunConfig {
  std::string command;  ///< nerve, homology, reduce, grow, bounds, realize, example
  std::string example;  ///< scenario name for `example run`
  std::string cover_path;
  std::string out_path;
  std::string format;  ///< json or csv; empty picks the command default
  std::string system;
  std::string control = "standard";
  std::string coefficients = "both";
  std::string clamp = "standard";
  int stages = 0;  ///< 0 picks the scenario default
  int k = -1;  ///< -1 picks the command default
  int max_dim = -1;  ///< -1 enumerates the whole nerve
  std::size_t budget = 24;
  std::size_t member_cap = 200000;
  std::int64_t resolution = 256;
  std::int64_t sample_resolution = 64;
  int threads = 1;
  int g0 = 6;
  std::optional<double> lambda, diameter, epsilon, ent0;
  std::optional<std::uint64_t> generator_size;
  int dim = 2;
};

namespace detail {

inline std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  for (char ch : s) {
    if (ch == sep) {
      out.push_back(cur);
      cur.clear();
    } else {
      cur.push_back(ch);
    }
  }
  out.push_back(cur);
  return out;
}

inline std::int64_t parse_int(const std::string& s, const std::string& what) {
  try {
    std::size_t used = 0;
    long long v = std::stoll(s, &used);
    if (used != s.size()) throw Error("");
    return v;
  } catch (...) {
    throw Error("bad integer \"" + s + "\" in " + what);
  }
}

}  // namespace detail

/// doubling:k, times:k[:offset], product:k1,k2,..., matrix:a,b;c,d, cat, shift:c0,c1,...
inline ActionSpec parse_system(const std::string& text) {
  auto parts = detail::split(text, ':');
  const std::string& kind = parts[0];
  if (kind == "cat" && parts.size() == 1) return scenarios::cat_map_action();
  if (parts.size() < 2) throw Error("system \"" + text + "\" needs parameters");
  if (kind == "doubling" || kind == "times") {
    if (parts.size() > 3) throw Error("bad system \"" + text + "\"");
    CircleTimes c{BigInt(detail::parse_int(parts[1], "system")), Rational(0)};
    if (parts.size() == 3) c.offset = parse_rational(parts[2]);
    return c;
  }
  if (kind == "product") {
    ProductAction p;
    for (const auto& k : detail::split(parts[1], ',')) p.factors.push_back({BigInt(detail::parse_int(k, "system")), Rational(0)});
    return p;
  }
  if (kind == "matrix") {
    TorusMatrixAction m;
    for (const auto& row : detail::split(parts[1], ';')) {
      m.m.emplace_back();
      for (const auto& x : detail::split(row, ',')) m.m.back().push_back(detail::parse_int(x, "system"));
    }
    for (const auto& row : m.m) {
      if (row.size() != m.m.size()) throw Error("matrix must be square");
    }
    return m;
  }
  if (kind == "shift") {
    ShiftTruncation s;
    for (const auto& c : detail::split(parts[1], ',')) s.profile.emplace_back(detail::parse_int(c, "system"));
    s.p = static_cast<int>(s.profile.size()) - 1;
    return s;
  }
  throw Error("unknown system \"" + kind + "\"");
}

inline ControllingSequence parse_control(const std::string& text) {
  if (text == "standard") return {};
  if (text == "logarithmic") return {ControllingSequence::Kind::logarithmic, {}};
  if (text.rfind("custom:", 0) == 0) {
    ControllingSequence c{ControllingSequence::Kind::custom, {}};
    for (const auto& v : detail::split(text.substr(7), ',')) c.table.push_back(std::stod(v));
    for (std::size_t i = 0; i < c.table.size(); ++i) {
      if (!(c.table[i] > 0) || (i > 0 && !(c.table[i] > c.table[i - 1]))) {
        throw Error("custom controlling sequence must be positive and strictly increasing");
      }
    }
    return c;
  }
  throw Error("unknown controlling sequence \"" + text + "\"");
}

inline std::vector<CoefficientMode> parse_modes(const std::string& text) {
  if (text == "rational") return {CoefficientMode::rational};
  if (text == "mod2") return {CoefficientMode::mod2};
  if (text == "both") return {CoefficientMode::rational, CoefficientMode::mod2};
  throw Error("unknown coefficient mode \"" + text + "\"");
}

inline const char* mode_name(CoefficientMode m) { return m == CoefficientMode::rational ? "rational" : "mod2"; }

/// Validates caps and formats; applies the NERVEKIT_BUDGET override.
inline void finalize_config(RunConfig& cfg) {
  if (const char* env = std::getenv("NERVEKIT_BUDGET")) {
    auto v = detail::parse_int(env, "NERVEKIT_BUDGET");
    if (v < 1) throw Error("NERVEKIT_BUDGET must be positive");
    cfg.budget = static_cast<std::size_t>(v);
  }
  if (cfg.stages < 0 || cfg.k < -1 || cfg.max_dim < -1 || cfg.budget < 1 || cfg.member_cap < 1 || cfg.resolution < 1 ||
      cfg.sample_resolution < 1 || cfg.threads < 1) {
    throw Error("caps must be positive");
  }
  if (!cfg.format.empty() && cfg.format != "json" && cfg.format != "csv") {
    throw Error("unknown format \"" + cfg.format + "\"");
  }
}

namespace detail {

inline void emit(const RunConfig& cfg, const std::string& text) {
  if (cfg.out_path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(cfg.out_path);
  if (!out) throw Error("cannot write " + cfg.out_path);
  out << text;
}

inline std::string dump(const io::Json& j) { return j.dump(2) + "\n"; }

inline io::Json table_json(const GrowthTable& t) {
  io::Json j;
  j["K"] = t.K;
  j["control"] = t.control;
  j["truncated"] = t.truncated;
  if (t.truncated) j["truncationReason"] = t.truncation_reason;
  j["notes"] = t.notes;
  io::Json rows = io::Json::array();
  for (const auto& r : t.rows) {
    io::Json row;
    row["n"] = r.n;
    row["sizeF"] = r.size_f;
    row["members"] = r.members;
    io::Json g = io::Json::array(), s = io::Json::array(), ent = io::Json::array();
    for (const auto& x : r.g) g.push_back(x.str());
    for (const auto& x : r.s) s.push_back(x.str());
    for (double e : r.ent) ent.push_back(format_real(e));
    row["G"] = g;
    row["S"] = s;
    row["sExact"] = r.s_exact;
    row["dim"] = r.dim.str();
    row["Dim"] = r.Dim.str();
    row["betti"] = r.betti;
    row["chi"] = r.chi ? io::Json(r.chi->str()) : io::Json(nullptr);
    row["maxDiameter"] = r.max_diameter ? io::Json(to_string(*r.max_diameter)) : io::Json(nullptr);
    row["ent"] = ent;
    row["dimGrowth"] = format_real(r.dim_growth);
    rows.push_back(row);
  }
  j["rows"] = rows;
  return j;
}

inline int emit_table(const RunConfig& cfg, const GrowthTable& t, io::Json extra = {}) {
  if (cfg.format == "json") {
    io::Json j = extra.is_null() ? io::Json::object() : extra;
    j["table"] = table_json(t);
    emit(cfg, dump(j));
  } else {
    emit(cfg, growth_csv(t));
  }
  for (const auto& n : t.notes) std::cerr << "note: " << n << "\n";
  if (t.truncated) {
    std::cerr << "truncated: " << t.truncation_reason << "\n";
    return truncated;
  }
  return ok;
}

inline GrowthOptions growth_options(const RunConfig& cfg, int default_stages, int default_k) {
  GrowthOptions opt;
  opt.stages = cfg.stages > 0 ? cfg.stages : default_stages;
  opt.K = cfg.k >= 0 ? cfg.k : default_k;
  opt.control = parse_control(cfg.control);
  opt.budget = cfg.budget;
  opt.member_cap = cfg.member_cap;
  opt.grid_resolution = cfg.resolution;
  return opt;
}

inline io::Json homology_json(const Nerve& n, const std::vector<CoefficientMode>& modes) {
  io::Json j;
  io::Json counts = io::Json::array();
  for (int k = 0; k <= std::min(n.max_dim_cap, n.dim() + 1); ++k) counts.push_back(k < static_cast<int>(n.levels.size()) ? n.levels[k].size() : 0);
  j["counts"] = counts;
  j["capped"] = n.capped;
  j["euler"] = euler_characteristic(n);
  for (auto m : modes) {
    auto b = betti_numbers(n, m);
    io::Json e = io::betti_to_json(b);
    e["euler"] = euler_from_betti(b);
    j[mode_name(m)] = e;
  }
  return j;
}

inline int dim_cap(const RunConfig& cfg, const Cover& c) {
  return cfg.max_dim >= 0 ? cfg.max_dim : std::max<int>(static_cast<int>(c.size()) - 1, 0);
}

/// CSV view of per-dimension reports: one row per entry of "counts", plus the
/// Betti columns of each coefficient mode present.
inline std::string counts_csv(const io::Json& j, const std::vector<std::string>& modes) {
  std::ostringstream os;
  os << "dim,count";
  for (const auto& m : modes) os << ",betti_" << m;
  os << "\n";
  for (std::size_t k = 0; k < j["counts"].size(); ++k) {
    os << k << "," << j["counts"][k].get<std::uint64_t>();
    for (const auto& m : modes) {
      const auto& b = j[m]["betti"];
      os << ",";
      if (k < b.size()) os << b[k].get<std::int64_t>();
    }
    os << "\n";
  }
  return os.str();
}

inline void require_json(const RunConfig& cfg) {
  if (cfg.format == "csv") throw Error("csv output is not available for " + cfg.command + "; use --format json");
}

inline int run_nerve(const RunConfig& cfg) {
  Cover c = io::load_cover(cfg.cover_path);
  io::Json j = io::nerve_to_json(build_nerve(c, dim_cap(cfg, c)));
  emit(cfg, cfg.format == "csv" ? counts_csv(j, {}) : dump(j));
  return ok;
}

inline int run_homology(const RunConfig& cfg) {
  Cover c = io::load_cover(cfg.cover_path);
  Nerve n = build_nerve(c, dim_cap(cfg, c));
  if (n.capped) std::cerr << "note: nerve capped at dimension " << cfg.max_dim << "; top Betti number is partial\n";
  const auto modes = parse_modes(cfg.coefficients);
  io::Json j = homology_json(n, modes);
  std::vector<std::string> names;
  for (auto m : modes) names.emplace_back(mode_name(m));
  emit(cfg, cfg.format == "csv" ? counts_csv(j, names) : dump(j));
  return ok;
}

inline int run_reduce(const RunConfig& cfg) {
  require_json(cfg);
  Cover c = io::load_cover(cfg.cover_path);
  auto trace = reduce(c);
  io::Json j;
  j["removed"] = trace.removed;
  j["kept"] = trace.kept;
  io::Json priv = io::Json::array();
  for (const auto& p : trace.private_points) priv.push_back(p ? io::point_to_json(*p) : io::Json(nullptr));
  j["privatePoints"] = priv;
  j["cover"] = io::cover_to_json(trace.final_cover);
  SubcoverSearch search(c);
  io::Json sk = io::Json::array();
  for (int k = 0; k <= (cfg.k >= 0 ? cfg.k : 1); ++k) {
    auto e = search.s_k(k, cfg.budget);
    sk.push_back({{"k", k}, {"value", e.value}, {"exact", e.exact}, {"members", e.members}});
  }
  j["S"] = sk;
  auto d = search.dim_min(cfg.budget);
  j["Dim"] = {{"value", d.value}, {"exact", d.exact}, {"members", d.members}, {"withinManifoldBound", d.within_manifold_bound}};
  emit(cfg, dump(j));
  return ok;
}

inline int run_grow(const RunConfig& cfg) {
  if (cfg.system.empty()) throw Error("grow needs --system");
  ActionSpec act = parse_system(cfg.system);
  GrowthOptions opt = growth_options(cfg, 3, 2);
  if (std::holds_alternative<ShiftTruncation>(act)) return emit_table(cfg, growth_table(Cover{}, act, opt));
  if (cfg.cover_path.empty()) throw Error("grow needs --cover");
  return emit_table(cfg, growth_table(io::load_cover(cfg.cover_path), act, opt));
}

inline int run_bounds(const RunConfig& cfg) {
  require_json(cfg);
  if (!cfg.lambda || !cfg.diameter) throw Error("bounds needs --lambda and --diameter");
  SpaceFormParams p;
  p.lambda = *cfg.lambda;
  p.d = cfg.dim;
  p.D = *cfg.diameter;
  if (cfg.clamp == "scaled") {
    p.clamp = ClampConvention::scaled;
  } else if (cfg.clamp != "standard") {
    throw Error("unknown clamp convention \"" + cfg.clamp + "\"");
  }
  validate_params(p);
  io::Json j;
  j["inputs"] = {{"lambda", format_real(p.lambda)}, {"dim", p.d}, {"diameter", format_real(p.D)},
                 {"clamp", cfg.clamp}};
  auto [D, clamped] = clamped_diameter(p);
  j["clampedDiameter"] = format_real(D);
  j["clampApplied"] = clamped;
  if (cfg.ent0) {
    if (*cfg.ent0 < 0) throw Error("ent0 must be nonnegative");
    j["inputs"]["ent0"] = format_real(*cfg.ent0);
    j["entropyLower"] = format_real(std::exp(*cfg.ent0));
    j["eConstant"] = format_real(e_constant_bound(p.lambda, p.d, p.D, *cfg.ent0, p.clamp));
  }
  std::optional<double> eps = cfg.epsilon;
  if (!eps && cfg.ent0) eps = e_constant_bound(p.lambda, p.d, p.D, *cfg.ent0, p.clamp);
  if (eps) {
    p.epsilon = *eps;
    auto th = theta(p);
    j["inputs"]["epsilon"] = format_real(*eps);
    j["theta"] = format_real(th.value);
    j["coveringBound"] = format_real(generator_cardinality_bound(p));
  }
  if (cfg.generator_size) {
    auto rep = sandwich_check(cfg.ent0.value_or(0), *cfg.generator_size,
                              eps ? std::optional<SpaceFormParams>(p) : std::nullopt);
    j["sandwich"] = {{"lower", format_real(rep.lower)},
                     {"generatorSize", rep.generator_size},
                     {"upper", rep.upper ? io::Json(format_real(*rep.upper)) : io::Json(nullptr)},
                     {"lowerSlack", format_real(rep.lower_slack)},
                     {"pass", rep.pass}};
  }
  emit(cfg, dump(j));
  return ok;
}

inline int run_realize(const RunConfig& cfg) {
  require_json(cfg);
  Cover c = io::load_cover(cfg.cover_path);
  Nerve n = build_nerve(c, 1);
  VertexMetric vm = vertex_metric(c, n);
  std::optional<Rational> gh;
  if (vm.connected && c.family() != Family::grid) gh = gh_upper_bound(c, vm);
  io::Json j = io::realization_to_json(vm, gh);
  if (c.family() != Family::grid) {
    auto pou = partition_of_unity(c, sample_points(c.space, cfg.sample_resolution));
    io::Json samples = io::Json::array();
    for (std::size_t s = 0; s < pou.samples.size(); ++s) {
      io::Json w = io::Json::array();
      for (const auto& x : pou.weights[s]) w.push_back(to_string(x));
      samples.push_back({{"point", io::point_to_json(pou.samples[s])}, {"coordinates", w}});
    }
    j["samples"] = samples;
  }
  emit(cfg, dump(j));
  if (!vm.connected) std::cerr << "warning: 1-skeleton is disconnected\n";
  return ok;
}

inline io::Json nerve_summary(const Cover& c, int max_dim) {
  Nerve n = build_nerve(c, max_dim);
  return homology_json(n, {CoefficientMode::rational, CoefficientMode::mod2});
}

inline int run_example(const RunConfig& cfg) {
  const std::string& name = cfg.example;
  io::Json j;
  j["scenario"] = name;
  if (name == "doubling") {
    RunConfig c = cfg;
    if (c.format.empty()) c.format = "csv";
    j["reference"] = {{"ent0", "log 2"}, {"value", format_real(std::log(2.0))}};
    auto t = growth_table(scenarios::doubling_cover(), scenarios::doubling_action(), growth_options(cfg, 10, 2));
    return emit_table(c, t, j);
  }
  if (name == "product-doubling") {
    RunConfig c = cfg;
    if (c.format.empty()) c.format = "csv";
    auto t = growth_table(scenarios::product_doubling_cover(), scenarios::product_doubling_action(), growth_options(cfg, 2, 1));
    return emit_table(c, t, j);
  }
  if (name == "cat-map") {
    RunConfig c = cfg;
    if (c.format.empty()) c.format = "json";
    j["reference"] = {{"ent0", "log((3+sqrt 5)/2)"}, {"value", format_real(scenarios::cat_map_reference_entropy())}};
    std::cerr << "reference ent0 = log((3+sqrt 5)/2) = " << format_real(scenarios::cat_map_reference_entropy()) << "\n";
    auto t = growth_table(scenarios::cat_map_cover(cfg.resolution), scenarios::cat_map_action(), growth_options(cfg, 3, 1));
    return emit_table(c, t, j);
  }
  if (name == "shift") {
    RunConfig c = cfg;
    if (c.format.empty()) c.format = "csv";
    std::vector<std::uint64_t> sizes;
    for (int n = 1; n <= (cfg.stages > 0 ? cfg.stages : 6); ++n) sizes.push_back(static_cast<std::uint64_t>(n));
    return emit_table(c, scenarios::shift_truncation_growth(3, 1, sizes, cfg.k >= 0 ? cfg.k : 2), j);
  }
  if (name == "three-arcs") {
    j["nerve"] = nerve_summary(scenarios::three_arcs(), dim_cap(cfg, scenarios::three_arcs()));
  } else if (name == "torus-boxes") {
    j["nerve"] = nerve_summary(scenarios::torus_nine_boxes(), dim_cap(cfg, scenarios::torus_nine_boxes()));
  } else if (name == "prismatic") {
    io::Json g = io::Json::array();
    for (int k = 0; k < cfg.g0; ++k) g.push_back(scenarios::prismatic_profile(cfg.g0, k).str());
    j["g0"] = cfg.g0;
    j["G"] = g;
    j["dim"] = cfg.g0 - 1;
    if (cfg.g0 <= 12) j["nerve"] = nerve_summary(scenarios::prismatic_cover(cfg.g0), cfg.g0);
  } else if (name == "pyramid") {
    std::vector<double> sizes{1e2, 1e4, 1e6, 1e8};
    io::Json rows = io::Json::array();
    for (double f : sizes) {
      io::Json row;
      row["sizeF"] = format_real(f);
      io::Json ent = io::Json::array();
      for (int k = 0; k <= (cfg.k >= 0 ? cfg.k : 3); ++k) ent.push_back(format_real(scenarios::pyramid_growth({f}, k)[0]));
      row["ent"] = ent;
      rows.push_back(row);
    }
    j["control"] = "logarithmic";
    j["rows"] = rows;
  } else if (name == "doubling-skeleton") {
    io::Json rows = io::Json::array();
    for (int n = 1; n <= (cfg.stages > 0 ? cfg.stages : 8); ++n) {
      auto st = scenarios::doubling_skeleton(n);
      rows.push_back({{"n", n},
                      {"rawMembers", st.raw_members},
                      {"vertices", st.vertices},
                      {"edges", st.edges},
                      {"connected", st.connected},
                      {"ghUpperBound", to_string(st.gh_bound)}});
    }
    j["rows"] = rows;
  } else {
    throw Error("unknown scenario \"" + name + "\"");
  }
  emit(cfg, dump(j));
  return ok;
}

}  // namespace detail

/// Runs one command. Returns 0 on success, 1 on validation errors, 2 when a resource cap
/// truncated the output (the partial output is still written).
inline int run(RunConfig cfg) {
  try {
    finalize_config(cfg);
    if (cfg.command == "nerve") return detail::run_nerve(cfg);
    if (cfg.command == "homology") return detail::run_homology(cfg);
    if (cfg.command == "reduce") return detail::run_reduce(cfg);
    if (cfg.command == "grow") return detail::run_grow(cfg);
    if (cfg.command == "bounds") return detail::run_bounds(cfg);
    if (cfg.command == "realize") return detail::run_realize(cfg);
    if (cfg.command == "example") return detail::run_example(cfg);
    throw Error("unknown command \"" + cfg.command + "\"");
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return validation_error;
  } catch (const nlohmann::json::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return validation_error;
  }
}

}  // namespace nervekit::cli
