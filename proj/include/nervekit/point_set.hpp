#pragma once

#include "nervekit/space.hpp"

#include <boost/dynamic_bitset.hpp>

#include <cstdint>
#include <vector>

namespace nervekit {

/// Subset of an abstract finite space. Every subset is open in the discrete topology.
class PointSet {
 public:
  PointSet() = default;
  explicit PointSet(std::size_t universe) : bits_(universe) {}
  PointSet(std::size_t universe, const std::vector<std::size_t>& points) : bits_(universe) {
    for (auto p : points) {
      if (p >= universe) throw Error("point index out of range");
      bits_.set(p);
    }
  }

  static PointSet full(std::size_t universe) {
    PointSet s(universe);
    s.bits_.set();
    return s;
  }

  std::size_t universe() const { return bits_.size(); }
  bool contains(std::size_t p) const { return p < bits_.size() && bits_[p]; }
  bool empty() const { return bits_.none(); }
  const boost::dynamic_bitset<std::uint64_t>& bits() const { return bits_; }

  std::vector<std::size_t> points() const {
    std::vector<std::size_t> out;
    for (auto i = bits_.find_first(); i != bits_.npos; i = bits_.find_next(i)) out.push_back(i);
    return out;
  }

  PointSet intersect(const PointSet& o) const {
    PointSet s = *this;
    s.bits_ &= o.bits_;
    return s;
  }

  PointSet unite(const PointSet& o) const {
    PointSet s = *this;
    s.bits_ |= o.bits_;
    return s;
  }

  bool subset_of(const PointSet& o) const { return bits_.is_subset_of(o.bits_); }

  Rational diameter(const SpaceDescriptor& space) const {
    Rational best = 0;
    auto pts = points();
    for (auto i : pts) {
      for (auto j : pts) best = std::max(best, space.dist_matrix()[i][j]);
    }
    return best;
  }

  /// Distance from p to the complement; the space diameter when the complement is empty.
  Rational depth(const SpaceDescriptor& space, std::size_t p) const {
    if (!contains(p)) return 0;
    bool found = false;
    Rational best = 0;
    for (std::size_t q = 0; q < universe(); ++q) {
      if (bits_[q]) continue;
      const Rational& d = space.dist_matrix()[p][q];
      if (!found || d < best) best = d;
      found = true;
    }
    return found ? best : space_diameter(space);
  }

  friend bool operator==(const PointSet&, const PointSet&) = default;

 private:
  boost::dynamic_bitset<std::uint64_t> bits_;
};

}  // namespace nervekit
