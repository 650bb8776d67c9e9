#pragma once

#include "nervekit/cover.hpp"
#include "nervekit/homology.hpp"
#include "nervekit/nerve.hpp"
#include "nervekit/realization.hpp"

#include <json.hpp>

#include <fstream>
#include <sstream>
#include <string>

namespace nervekit::io {

using Json = nlohmann::ordered_json;

namespace detail {

[[noreturn]] inline void field_error(const std::string& path, const std::string& what) {
  throw Error(path + ": " + what);
}

inline Rational rational_field(const Json& j, const std::string& path) {
  if (j.is_number_integer()) return Rational(j.get<std::int64_t>());
  if (!j.is_string()) field_error(path, "expected a rational string \"p/q\"");
  try {
    return parse_rational(j.get<std::string>());
  } catch (const Error& e) {
    field_error(path, e.what());
  }
}

/// An arc as [lo, hi], as [lo_num, lo_den, hi_num, hi_den], or the string "full".
inline ArcComponent arc_field(const Json& j, const std::string& path) {
  if (j.is_string() && j.get<std::string>() == "full") return ArcComponent{Rational(0), Rational(1), true};
  Rational lo, hi;
  if (j.is_array() && j.size() == 2) {
    lo = rational_field(j[0], path + "[0]");
    hi = rational_field(j[1], path + "[1]");
  } else if (j.is_array() && j.size() == 4) {
    Rational q[4];
    for (int i = 0; i < 4; ++i) q[i] = rational_field(j[i], path + "[" + std::to_string(i) + "]");
    if (q[1] == 0 || q[3] == 0) field_error(path, "zero denominator");
    lo = q[0] / q[1];
    hi = q[2] / q[3];
  } else {
    field_error(path, "expected [lo, hi], [lo_num, lo_den, hi_num, hi_den] or \"full\"");
  }
  if (!(lo < hi)) field_error(path, "arc needs lo < hi");
  if (hi - lo > 1) field_error(path, "arc longer than the circle");
  return ArcUnion::arc(lo, hi).components().front();
}

inline CellSet cell_field(const Json& j, std::size_t cells, const std::string& path) {
  if (!j.is_array()) field_error(path, "expected a list of cell indices");
  CellSet out(cells);
  for (std::size_t i = 0; i < j.size(); ++i) {
    if (!j[i].is_number_integer() || j[i].get<std::int64_t>() < 0 || j[i].get<std::size_t>() >= cells) {
      field_error(path + "[" + std::to_string(i) + "]", "cell index out of range");
    }
    out.set(j[i].get<std::size_t>());
  }
  return out;
}

inline std::size_t line_of(const std::string& text, std::size_t byte) {
  std::size_t line = 1;
  for (std::size_t i = 0; i < byte && i < text.size(); ++i) line += text[i] == '\n';
  return line;
}

}  // namespace detail

inline SpaceDescriptor space_from_json(const Json& j) {
  if (!j.is_object() || !j.contains("kind")) detail::field_error("space", "expected an object with \"kind\"");
  const auto kind = j["kind"].get<std::string>();
  if (kind == "circle") return SpaceDescriptor::circle();
  if (kind == "torus") {
    if (!j.contains("dim") || !j["dim"].is_number_integer()) detail::field_error("space.dim", "expected an integer");
    return SpaceDescriptor::torus(j["dim"].get<int>());
  }
  if (kind == "abstract") {
    if (!j.contains("dist") || !j["dist"].is_array()) detail::field_error("space.dist", "expected a matrix");
    if (j.contains("points") && (!j["points"].is_number_integer() || j["points"].get<std::size_t>() != j["dist"].size())) {
      detail::field_error("space.points", "does not match the distance matrix");
    }
    std::vector<std::vector<Rational>> d;
    for (std::size_t r = 0; r < j["dist"].size(); ++r) {
      const auto& row = j["dist"][r];
      if (!row.is_array()) detail::field_error("space.dist[" + std::to_string(r) + "]", "expected a row");
      d.emplace_back();
      for (std::size_t c = 0; c < row.size(); ++c) {
        d.back().push_back(detail::rational_field(row[c], "space.dist[" + std::to_string(r) + "][" + std::to_string(c) + "]"));
      }
    }
    try {
      return SpaceDescriptor::abstract(d);
    } catch (const Error& e) {
      detail::field_error("space.dist", e.what());
    }
  }
  detail::field_error("space.kind", "unknown kind \"" + kind + "\"");
}

inline Json space_to_json(const SpaceDescriptor& s) {
  Json j;
  switch (s.kind()) {
    case SpaceKind::circle: j["kind"] = "circle"; break;
    case SpaceKind::torus:
      j["kind"] = "torus";
      j["dim"] = s.dim();
      break;
    case SpaceKind::abstract: {
      j["kind"] = "abstract";
      j["points"] = s.point_count();
      Json rows = Json::array();
      for (const auto& row : s.dist_matrix()) {
        Json r = Json::array();
        for (const auto& x : row) r.push_back(to_string(x));
        rows.push_back(r);
      }
      j["dist"] = rows;
      break;
    }
  }
  return j;
}

/// Sets are {"type": "arcs", "arcs": [...]}, {"type": "boxes", "boxes": [[arc, ...], ...]},
/// {"type": "points", "points": [...]} or {"type": "grid", "resolution": m, "inner": [...], "outer": [...]}.
inline OpenSet member_from_json(const Json& j, const SpaceDescriptor& space, const std::string& path) {
  if (!j.is_object() || !j.contains("type") || !j["type"].is_string()) detail::field_error(path, "expected an object with \"type\"");
  const auto type = j["type"].get<std::string>();
  auto list = [&](const char* key) -> const Json& {
    if (!j.contains(key) || !j[key].is_array()) detail::field_error(path + "." + key, "expected a list");
    return j[key];
  };
  if (type == "arcs") {
    if (space.kind() != SpaceKind::circle) detail::field_error(path, "arcs need a circle space");
    const auto& arcs = list("arcs");
    std::vector<ArcComponent> cs;
    for (std::size_t i = 0; i < arcs.size(); ++i) cs.push_back(detail::arc_field(arcs[i], path + ".arcs[" + std::to_string(i) + "]"));
    return ArcUnion::from_components(cs);
  }
  if (type == "boxes") {
    if (space.kind() != SpaceKind::torus) detail::field_error(path, "boxes need a torus space");
    const auto& boxes = list("boxes");
    BoxUnion u(space.dim());
    for (std::size_t b = 0; b < boxes.size(); ++b) {
      const std::string bp = path + ".boxes[" + std::to_string(b) + "]";
      if (!boxes[b].is_array() || static_cast<int>(boxes[b].size()) != space.dim()) {
        detail::field_error(bp, "expected one arc per torus axis");
      }
      std::vector<ArcUnion> factors;
      for (std::size_t a = 0; a < boxes[b].size(); ++a) {
        factors.push_back(ArcUnion::from_components({detail::arc_field(boxes[b][a], bp + "[" + std::to_string(a) + "]")}));
      }
      u = u.unite(BoxUnion::product(factors));
    }
    return u;
  }
  if (type == "points") {
    if (space.kind() != SpaceKind::abstract) detail::field_error(path, "points need an abstract space");
    const auto& points = list("points");
    std::vector<std::size_t> pts;
    for (std::size_t i = 0; i < points.size(); ++i) {
      const auto& p = points[i];
      const std::string pp = path + ".points[" + std::to_string(i) + "]";
      if (!p.is_number_integer() || p.get<std::int64_t>() < 0) detail::field_error(pp, "expected a point index");
      if (p.get<std::size_t>() >= space.point_count()) detail::field_error(pp, "point index out of range");
      pts.push_back(p.get<std::size_t>());
    }
    return PointSet(space.point_count(), pts);
  }
  if (type == "grid") {
    if (space.kind() != SpaceKind::torus) detail::field_error(path, "grid regions need a torus space");
    if (!j.contains("resolution") || !j["resolution"].is_number_integer() || j["resolution"].get<std::int64_t>() < 1) {
      detail::field_error(path + ".resolution", "expected a positive integer");
    }
    const auto m = j["resolution"].get<std::int64_t>();
    std::size_t cells = 1;
    for (int a = 0; a < space.dim(); ++a) cells *= static_cast<std::size_t>(m);
    CellSet inner = detail::cell_field(list("inner"), cells, path + ".inner");
    CellSet outer = detail::cell_field(list("outer"), cells, path + ".outer");
    if (!inner.is_subset_of(outer)) detail::field_error(path, "inner cells must be outer cells");
    return GridRegion::from_cells(space.dim(), m, inner, outer);
  }
  detail::field_error(path + ".type", "unknown type \"" + type + "\"");
}

inline Json member_to_json(const OpenSet& s) {
  auto arc_json = [](const ArcComponent& a) -> Json {
    if (a.full) return "full";
    return Json::array({to_string(a.lo), to_string(a.hi)});
  };
  Json j;
  if (const auto* a = std::get_if<ArcUnion>(&s)) {
    j["type"] = "arcs";
    Json arcs = Json::array();
    for (const auto& c : a->components()) arcs.push_back(arc_json(c));
    j["arcs"] = arcs;
  } else if (const auto* b = std::get_if<BoxUnion>(&s)) {
    j["type"] = "boxes";
    Json boxes = Json::array();
    for (const auto& box : b->boxes()) {
      Json f = Json::array();
      for (const auto& c : box.factors) f.push_back(arc_json(c));
      boxes.push_back(f);
    }
    j["boxes"] = boxes;
  } else if (const auto* p = std::get_if<PointSet>(&s)) {
    j["type"] = "points";
    j["points"] = p->points();
  } else {
    const auto& g = std::get<GridRegion>(s);
    auto cells = [](const CellSet& c) {
      Json out = Json::array();
      for (auto i = c.find_first(); i != CellSet::npos; i = c.find_next(i)) out.push_back(i);
      return out;
    };
    j["type"] = "grid";
    j["resolution"] = g.resolution();
    j["inner"] = cells(g.inner());
    j["outer"] = cells(g.outer());
  }
  return j;
}

inline Cover cover_from_json(const Json& j) {
  if (!j.is_object()) detail::field_error("cover", "expected an object");
  if (!j.contains("space")) detail::field_error("space", "missing");
  if (!j.contains("sets") || !j["sets"].is_array()) detail::field_error("sets", "expected a list");
  Cover c;
  c.space = space_from_json(j["space"]);
  for (std::size_t i = 0; i < j["sets"].size(); ++i) {
    c.members.push_back(member_from_json(j["sets"][i], c.space, "sets[" + std::to_string(i) + "]"));
  }
  validate_cover(c);
  return c;
}

inline Json cover_to_json(const Cover& c) {
  Json j;
  j["space"] = space_to_json(c.space);
  Json members = Json::array();
  for (const auto& m : c.members) members.push_back(member_to_json(m));
  j["sets"] = members;
  return j;
}

inline std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

/// Parses JSON text, reporting syntax errors with their line.
inline Json parse_json(const std::string& text, const std::string& source) {
  try {
    return Json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw Error(source + ": line " + std::to_string(detail::line_of(text, e.byte)) + ": malformed JSON");
  }
}

inline Cover load_cover(const std::string& path) {
  Json j = parse_json(read_file(path), path);
  try {
    return cover_from_json(j);
  } catch (const nlohmann::json::exception& e) {
    throw Error(path + ": " + e.what());
  } catch (const Error& e) {
    throw Error(path + ": " + e.what());
  }
}

inline Json point_to_json(const Point& p) {
  if (const auto* a = std::get_if<RationalAngle>(&p)) return to_string(a->value());
  if (const auto* t = std::get_if<TorusPoint>(&p)) {
    Json j = Json::array();
    for (const auto& x : t->coords) j.push_back(to_string(x.value()));
    return j;
  }
  return std::get<IndexPoint>(p).index;
}

inline Json nerve_to_json(const Nerve& n) {
  Json j;
  j["vertices"] = n.vertex_count;
  Json simplices = Json::object();
  for (std::size_t k = 1; k < n.levels.size(); ++k) simplices[std::to_string(k)] = n.levels[k];
  j["simplices"] = simplices;
  j["maxDim"] = n.max_dim_cap;
  j["capped"] = n.capped;
  j["dim"] = n.dim();
  Json counts = Json::array();
  for (int k = 0; k <= std::min(n.max_dim_cap, n.dim() + 1); ++k) counts.push_back(k < static_cast<int>(n.levels.size()) ? n.levels[k].size() : 0);
  j["counts"] = counts;
  j["G"] = complexity_profile(n).g;
  if (!n.uncertified.empty()) j["uncertified"] = n.uncertified;
  return j;
}

inline Json betti_to_json(const BettiVector& b) {
  Json j;
  j["betti"] = b.betti;
  j["cycleRanks"] = b.z;
  j["boundaryRanks"] = b.b;
  j["cellCounts"] = b.c;
  return j;
}

inline Json realization_to_json(const VertexMetric& vm, const std::optional<Rational>& gh) {
  Json j;
  Json centers = Json::array();
  for (const auto& p : vm.centers) centers.push_back(point_to_json(p));
  j["vertices"] = centers;
  Json edges = Json::array();
  for (const auto& e : vm.edges) edges.push_back({{"i", e.i}, {"j", e.j}, {"length", to_string(e.length)}});
  j["edges"] = edges;
  j["connected"] = vm.connected;
  j["ghUpperBound"] = gh ? Json(to_string(*gh)) : Json(nullptr);
  return j;
}

}  // namespace nervekit::io
