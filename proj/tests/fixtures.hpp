#pragma once

#include "nervekit/cover.hpp"
#include "nervekit/nerve.hpp"
#include "oracles.hpp"

#include <vector>

namespace fixture {

using namespace nervekit;

/// Finite space with every distance 1.
inline SpaceDescriptor discrete_space(std::size_t points) {
  std::vector<std::vector<Rational>> d(points, std::vector<Rational>(points, Rational(1)));
  for (std::size_t i = 0; i < points; ++i) d[i][i] = 0;
  return SpaceDescriptor::abstract(d);
}

inline Cover abstract_cover(const oracle::Membership& m, std::size_t points) {
  Cover c;
  c.space = discrete_space(points);
  for (const auto& mem : m) c.members.emplace_back(PointSet(points, mem));
  return c;
}

inline Cover arc_cover(const std::vector<std::vector<oracle::ArcSpec>>& specs) {
  Cover c;
  c.space = SpaceDescriptor::circle();
  for (const auto& m : specs) {
    ArcUnion u;
    for (const auto& a : m) u = u.unite(ArcUnion::arc(a.lo, a.hi));
    c.members.emplace_back(u);
  }
  return c;
}

/// Arc members as lists of lifted arcs (lo, hi); a full circle becomes (0, 1).
inline std::vector<std::vector<oracle::ArcSpec>> arc_specs(const Cover& c) {
  std::vector<std::vector<oracle::ArcSpec>> out;
  for (const auto& m : c.members) {
    std::vector<oracle::ArcSpec> spec;
    for (const auto& a : std::get<ArcUnion>(m).components()) {
      spec.push_back(a.full ? oracle::ArcSpec{Rational(0), Rational(1)} : oracle::ArcSpec{a.lo, a.lo + a.length()});
    }
    out.push_back(spec);
  }
  return out;
}

inline std::vector<std::uint64_t> counts_of(const Nerve& n) {
  std::vector<std::uint64_t> c;
  for (const auto& l : n.levels) c.push_back(l.size());
  while (!c.empty() && c.back() == 0) c.pop_back();
  return c;
}

}  // namespace fixture
