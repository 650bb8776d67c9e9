#include "nervekit/space.hpp"

#include <catch_amalgamated.hpp>

#include <random>

using namespace nervekit;

namespace {

Rational q(long long p, long long d) { return Rational(p, d); }
RationalAngle ang(long long p, long long d) { return RationalAngle(q(p, d)); }
TorusPoint tp(std::initializer_list<Rational> xs) {
  TorusPoint p;
  for (const auto& x : xs) p.coords.emplace_back(x);
  return p;
}

}  // namespace

TEST_CASE("circle distances") {
  auto s = SpaceDescriptor::circle();
  CHECK(distance(s, ang(0, 1), ang(0, 1)) == 0);
  CHECK(distance(s, ang(1, 4), ang(3, 4)) == q(1, 2));
  CHECK(distance(s, ang(1, 10), ang(9, 10)) == q(1, 5));
  CHECK(ang(5, 4).value() == q(1, 4));
  CHECK(ang(-1, 4).value() == q(3, 4));
}

TEST_CASE("torus distance is the max of circle distances") {
  auto s = SpaceDescriptor::torus(2);
  CHECK(distance(s, tp({0, 0}), tp({q(3, 4), q(1, 8)})) == q(1, 4));
  CHECK_THROWS_WITH(distance(s, tp({0}), tp({0, 0})), "point/space mismatch");
  CHECK_THROWS_WITH(distance(s, ang(0, 1), tp({0, 0})), "point/space mismatch");
  CHECK_THROWS(SpaceDescriptor::torus(0));
}

TEST_CASE("abstract spaces validate their metric") {
  std::vector<std::vector<Rational>> d{{0, 1, 2}, {1, 0, 1}, {2, 1, 0}};
  auto s = SpaceDescriptor::abstract(d);
  CHECK(s.point_count() == 3);
  CHECK(distance(s, IndexPoint{0}, IndexPoint{2}) == 2);
  CHECK(space_diameter(s) == 2);
  CHECK_THROWS(SpaceDescriptor::abstract({{0, 1}, {2, 0}}));             // asymmetric
  CHECK_THROWS(SpaceDescriptor::abstract({{0, 1, 5}, {1, 0, 1}, {5, 1, 0}}));  // triangle
  CHECK_THROWS(SpaceDescriptor::abstract({{1}}));                          // diagonal
  CHECK_THROWS(SpaceDescriptor::abstract({{0, 0}, {0, 0}}));               // distinct points at 0
}

TEST_CASE("metric axioms on random rational triples") {
  std::mt19937_64 rng(7);
  std::uniform_int_distribution<int> num(-50, 150);
  auto circle = SpaceDescriptor::circle();
  auto torus = SpaceDescriptor::torus(3);
  for (int trial = 0; trial < 300; ++trial) {
    auto r = [&] { return Rational(num(rng), 97); };
    Point a = RationalAngle(r()), b = RationalAngle(r()), c = RationalAngle(r());
    Point ta = tp({r(), r(), r()}), tb = tp({r(), r(), r()}), tc = tp({r(), r(), r()});
    for (auto [s, x, y, z] : {std::tuple{circle, a, b, c}, std::tuple{torus, ta, tb, tc}}) {
      auto dxy = distance(s, x, y);
      CHECK(dxy == distance(s, y, x));
      CHECK(dxy >= 0);
      CHECK(dxy <= q(1, 2));
      CHECK((dxy == 0) == (x == y));
      CHECK(distance(s, x, z) <= dxy + distance(s, y, z));
    }
  }
}
