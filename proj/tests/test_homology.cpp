#include "fixtures.hpp"
#include "nervekit/homology.hpp"
#include "nervekit/scenarios.hpp"

#include <catch_amalgamated.hpp>

#include <random>

using namespace nervekit;

namespace {

/// Nerve of the full simplex on n vertices (one point shared by all members).
Nerve full_simplex(std::size_t n) {
  oracle::Membership m(n);
  for (std::size_t i = 0; i < n; ++i) m[i] = {0, i + 1};
  return build_nerve(fixture::abstract_cover(m, n + 1), static_cast<int>(n));
}

/// Boundary of a triangle: three vertices, three edges.
Nerve three_cycle() { return build_nerve(fixture::abstract_cover({{0, 1}, {1, 2}, {2, 0}}, 3), 2); }

std::vector<std::vector<int>> dense(const BoundaryMatrix& b) {
  std::vector<std::vector<int>> a(b.rows, std::vector<int>(b.cols(), 0));
  for (std::size_t c = 0; c < b.cols(); ++c)
    for (const auto& [r, v] : b.columns[c]) a[r][c] = v;
  return a;
}

}  // namespace

TEST_CASE("triangle boundary signs") {
  auto n = full_simplex(3);
  auto b = boundary_matrix(n, 2, CoefficientMode::rational);
  REQUIRE(b.cols() == 1);
  // Edges in order [0,1], [0,2], [1,2]: ∂[0,1,2] = [1,2] - [0,2] + [0,1].
  auto a = dense(b);
  CHECK(a[0][0] == 1);
  CHECK(a[1][0] == -1);
  CHECK(a[2][0] == 1);
  auto m2 = dense(boundary_matrix(n, 2, CoefficientMode::mod2));
  CHECK(m2[1][0] == 1);
  CHECK_THROWS_WITH(boundary_matrix(n, 3, CoefficientMode::rational), "boundary dimension out of range");
  CHECK_THROWS_WITH(boundary_matrix(n, 0, CoefficientMode::rational), "boundary dimension out of range");
}

TEST_CASE("boundary of boundary vanishes") {
  std::mt19937_64 rng(3);
  std::vector<Nerve> nerves{full_simplex(4), three_cycle(), build_nerve(scenarios::torus_nine_boxes(), 4)};
  for (int t = 0; t < 30; ++t) {
    std::size_t pts = 4 + t % 5, mem = 3 + t % 5;
    nerves.push_back(build_nerve(fixture::abstract_cover(oracle::random_cover(rng, pts, mem), pts), 8));
  }
  for (const auto& n : nerves) {
    for (int k = 2; k <= n.dim(); ++k) {
      for (auto mode : {CoefficientMode::rational, CoefficientMode::mod2}) {
        auto hi = dense(boundary_matrix(n, k, mode));
        auto lo = dense(boundary_matrix(n, k - 1, mode));
        for (std::size_t r = 0; r < lo.size(); ++r) {
          for (std::size_t c = 0; c < hi[0].size(); ++c) {
            int s = 0;
            for (std::size_t m = 0; m < hi.size(); ++m) s += lo[r][m] * hi[m][c];
            if (mode == CoefficientMode::mod2) s %= 2;
            CHECK(s == 0);
          }
        }
      }
    }
  }
}

TEST_CASE("ranks against the elimination oracles") {
  auto c3 = three_cycle();
  CHECK(boundary_rank(c3, 1, CoefficientMode::rational) == 2);
  std::mt19937_64 rng(17);
  for (int t = 0; t < 60; ++t) {
    std::size_t pts = 5 + t % 5, mem = 3 + t % 6;
    auto n = build_nerve(fixture::abstract_cover(oracle::random_cover(rng, pts, mem), pts), 8);
    for (int k = 1; k <= n.dim(); ++k) {
      auto a = dense(boundary_matrix(n, k, CoefficientMode::rational));
      CHECK(rank_rational(boundary_matrix(n, k, CoefficientMode::rational)) == oracle::rank_real(a));
      CHECK(rank_mod2(boundary_matrix(n, k, CoefficientMode::mod2)) == oracle::rank_gf2(a));
      CHECK(rank_mod2_sparse(boundary_matrix(n, k, CoefficientMode::mod2)) == oracle::rank_gf2(a));
    }
    if (n.dim() >= 1) CHECK(edge_boundary_rank(n) == oracle::rank_gf2(dense(boundary_matrix(n, 1, CoefficientMode::mod2))));
  }
}

TEST_CASE("Betti numbers of small complexes") {
  for (auto mode : {CoefficientMode::rational, CoefficientMode::mod2}) {
    CHECK(betti_numbers(three_cycle(), mode).betti == std::vector<std::int64_t>{1, 1});
    CHECK(betti_numbers(full_simplex(3), mode).betti == std::vector<std::int64_t>{1, 0, 0});
    auto two = build_nerve(fixture::abstract_cover({{0}, {1}}, 2), 1);
    CHECK(betti_numbers(two, mode).betti[0] == 2);
    auto torus = betti_numbers(build_nerve(scenarios::torus_nine_boxes(), 4), mode).betti;
    CHECK(torus == std::vector<std::int64_t>{1, 2, 1, 0});
    auto circle = betti_numbers(build_nerve(scenarios::three_arcs(), 2), mode).betti;
    CHECK(circle == std::vector<std::int64_t>{1, 1});
  }
}

TEST_CASE("Betti numbers agree with dense oracles on random covers") {
  std::mt19937_64 rng(41);
  for (int t = 0; t < 80; ++t) {
    std::size_t pts = 4 + t % 6, mem = 2 + t % 7;
    auto m = oracle::random_cover(rng, pts, mem);
    auto n = build_nerve(fixture::abstract_cover(m, pts), 8);
    CHECK(betti_numbers(n, CoefficientMode::rational).betti == oracle::brute_betti(m, pts, false));
    CHECK(betti_numbers(n, CoefficientMode::mod2).betti == oracle::brute_betti(m, pts, true));
  }
}

TEST_CASE("Euler characteristic and Poincare polynomial") {
  auto c3 = three_cycle();
  CHECK(euler_characteristic(c3) == 0);
  CHECK(euler_from_betti(betti_numbers(c3, CoefficientMode::rational)) == 0);
  CHECK(euler_characteristic(full_simplex(4)) == 1);
  CHECK(euler_characteristic(build_nerve(fixture::abstract_cover({{0, 1}, {1, 2}}, 3), 1)) == 1);
  CHECK(poincare_polynomial(c3, Rational(-1)) == 0);
  CHECK(poincare_polynomial(c3, Rational(2)) == 3);
  auto torus = build_nerve(scenarios::torus_nine_boxes(), 4);
  CHECK(poincare_polynomial(torus, Rational(1)) == 4);

  std::mt19937_64 rng(8);
  for (int t = 0; t < 60; ++t) {
    std::size_t pts = 4 + t % 6, mem = 2 + t % 7;
    auto n = build_nerve(fixture::abstract_cover(oracle::random_cover(rng, pts, mem), pts), 8);
    const auto chi = euler_characteristic(n);
    CHECK(chi == euler_from_betti(betti_numbers(n, CoefficientMode::rational)));
    CHECK(chi == euler_from_betti(betti_numbers(n, CoefficientMode::mod2)));
    CHECK(chi == euler_from_partial_sums(complexity_profile(n)));
    CHECK(Rational(chi) == poincare_polynomial(n, Rational(-1)));
  }
}

TEST_CASE("Betti identities B_i = z_i - b_i and c_i = z_i + b_(i-1)") {
  auto v = betti_numbers(build_nerve(scenarios::torus_nine_boxes(), 4), CoefficientMode::rational);
  for (std::size_t i = 0; i < v.betti.size(); ++i) {
    CHECK(v.betti[i] == v.z[i] - v.b[i]);
    CHECK(v.c[i] == v.z[i] + (i > 0 ? v.b[i - 1] : 0));
  }
}

TEST_CASE("sparse rational rank agrees with Bareiss") {
  std::mt19937_64 rng(17);
  std::uniform_int_distribution<int> val(-3, 3), dim(1, 14);
  for (int trial = 0; trial < 300; ++trial) {
    BoundaryMatrix m;
    m.rows = static_cast<std::size_t>(dim(rng));
    const int cols = dim(rng);
    std::vector<std::vector<int>> dense(m.rows, std::vector<int>(cols, 0));
    for (int c = 0; c < cols; ++c) {
      std::vector<std::pair<std::uint32_t, int>> col;
      for (std::uint32_t r = 0; r < m.rows; ++r) {
        int v = trial % 3 == 0 ? val(rng) : (val(rng) > 1 ? val(rng) : 0);
        if (v != 0) col.emplace_back(r, v);
        dense[r][c] = v;
      }
      m.columns.push_back(col);
    }
    const auto want = oracle::rank_real(dense);
    CHECK(rank_rational(m) == want);
    CHECK(rank_rational_sparse(m) == want);
  }
  auto c = scenarios::doubling_iterate(3);
  Nerve n = build_nerve(c, static_cast<int>(c.size()) - 1);
  for (int k = 1; k <= n.dim(); ++k) {
    auto m = boundary_matrix(n, k, CoefficientMode::rational);
    CHECK(rank_rational_sparse(m) == rank_rational(m));
  }
}
