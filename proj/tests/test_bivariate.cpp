#include <doctest.h>

#include <chrono>
#include <cmath>

#include "polyroots/bivariate.hpp"
#include "polyroots/cli.hpp"
#include "polyroots/realroots.hpp"
#include "support.hpp"

using namespace polyroots;

namespace {

BivarPoly bp(const char *text) { return cli::as_bivar(cli::parse_poly(text)); }

using Point = std::pair<double, double>;

// Solution sets compared as sets of points within tol (Euclidean).
// tol is relative for points far from the origin
bool same_points(const SolutionSet &got, std::vector<Point> want, double tol) {
  if (got.points.size() != want.size())
    return false;
  for (const SolutionPoint &p : got.points) {
    auto it = std::find_if(want.begin(), want.end(), [&](const Point &w) {
      const double size = std::max({1.0, std::abs(w.first), std::abs(w.second)});
      return std::hypot(w.first - p.x, w.second - p.y) <= tol * size;
    });
    if (it == want.end())
      return false;
    want.erase(it);
  }
  return true;
}

void check_sound(const BivarPoly &p1, const BivarPoly &p2, const SolutionSet &s) {
  for (const SolutionPoint &pt : s.points) {
    REQUIRE(std::abs(p1(pt.x, pt.y)) <= 1e-6 * scale(p1, pt.x, pt.y));
    REQUIRE(std::abs(p2(pt.x, pt.y)) <= 1e-6 * scale(p2, pt.x, pt.y));
    REQUIRE(pt.residual1 == doctest::Approx(std::abs(p1(pt.x, pt.y))));
    REQUIRE(pt.residual2 == doctest::Approx(std::abs(p2(pt.x, pt.y))));
  }
  for (std::size_t i = 0; i < s.points.size(); ++i)
    for (std::size_t j = i + 1; j < s.points.size(); ++j)
      REQUIRE(std::hypot(s.points[i].x - s.points[j].x, s.points[i].y - s.points[j].y) >
              Tolerances{}.cluster_tol);
}

BivarPoly random_bivar(int dx, int dy, double range = 5.0) {
  BivarPoly::Grid g(dx + 1, dy + 1);
  for (int i = 0; i <= dx; ++i)
    for (int j = 0; j <= dy; ++j)
      g(i, j) = testing::uniform(-range, range);
  return BivarPoly(g);
}

} // namespace

TEST_CASE("bivariate basics") {
  const BivarPoly p = bp("x^2 - y^2");
  CHECK(p.deg_x() == 2);
  CHECK(p.deg_y() == 2);
  CHECK(p.coeff(2, 0) == 1.0);
  CHECK(p.coeff(0, 2) == -1.0);
  CHECK(p.coeff(1, 1) == 0.0);
  CHECK(p.is_pure());
  CHECK_FALSE(bp("x^2 + 3").is_pure());
  CHECK(p(3.0, 2.0) == 5.0);
  CHECK(p.specialize_x(1.0) == RealPoly{1, 0, -1});
  CHECK(p.specialize_y(2.0) == RealPoly{-4, 0, 1});
}

TEST_CASE("y_expand") {
  SUBCASE("(x^2-1)^2 + (y^2-2)^2") {
    const YExpansion e = y_expand(bp("(x^2-1)^2 + (y^2-2)^2"));
    REQUIRE(e.deg_y() == 4);
    CHECK(e[4] == RealPoly{1});
    CHECK(e[3].is_zero());
    CHECK(e[2] == RealPoly{-4});
    CHECK(e[1].is_zero());
    CHECK(e[0] == RealPoly{5, 0, -2, 0, 1});
  }
  SUBCASE("x y") {
    const YExpansion e = y_expand(bp("x y"));
    REQUIRE(e.deg_y() == 1);
    CHECK(e[1] == RealPoly{0, 1});
    CHECK(e[0].is_zero());
  }
  SUBCASE("y-free") {
    const YExpansion e = y_expand(bp("x^2 + 3"));
    REQUIRE(e.deg_y() == 0);
    CHECK(e[0] == RealPoly{3, 0, 1});
  }
}

TEST_CASE("property: expansion round trip") {
  for (int trial = 0; trial < 50; ++trial) {
    const BivarPoly p = random_bivar(testing::uniform_int(0, 4), testing::uniform_int(0, 4));
    REQUIRE(from_expansion(y_expand(p)) == p);
  }
}

TEST_CASE("partial derivatives") {
  CHECK(partial_y(bp("y^2")) == bp("2y"));
  CHECK(partial_y(bp("x^3")).is_zero());
  CHECK(partial_y(bp("(x^2-1)^2 + (y^2-2)^2")) == bp("4y^3 - 8y"));
  CHECK(partial_x(bp("x^2 y + y")) == bp("2x y"));
}

TEST_CASE("cramer_triple") {
  SUBCASE("y^2 + xy + 1 and y^2 + y + x") {
    const EliminationTriple t = cramer_triple(y_expand(bp("y^2 + x y + 1")), y_expand(bp("y^2 + y + x")));
    CHECK(t.m0 == 2);
    CHECK(t.v0 == 1);
    CHECK(t.D == bp("1 - x"));
    CHECK(t.D1 == bp("x^2 - 1"));
    CHECK(t.D2 == bp("1 - x"));
    CHECK(t.D.deg_y() == 0);
  }
  SUBCASE("linear case matches a2 b1 - a1 b2 up to sign") {
    // p1 = a1 y + a2, p2 = b1 y + b2 with a1 = x, a2 = 1, b1 = 2, b2 = x - 3
    const EliminationTriple t = cramer_triple(y_expand(bp("x y + 1")), y_expand(bp("2y + x - 3")));
    const BivarPoly direct = bp("1*2 - x (x - 3)");
    CHECK((t.D == direct || t.D == -direct));
    CHECK(t.v0 == 0);
  }
  SUBCASE("y^2 - x and y^2 - 2x eliminate through their constant terms") {
    const EliminationTriple t = cramer_triple(y_expand(bp("y^2 - x")), y_expand(bp("y^2 - 2x")));
    CHECK(t.v0 == 0);
    CHECK(t.D == bp("-x"));
  }
  SUBCASE("a single y-term on both sides") {
    CHECK_THROWS_AS(cramer_triple(y_expand(bp("x y^2")), y_expand(bp("y^2"))), NotEliminable);
  }
  CHECK_THROWS_AS(cramer_triple(y_expand(bp("x + 1")), y_expand(bp("x^2"))), NotEliminable);
}

TEST_CASE("reduce_once") {
  SUBCASE("y - x, y + x") {
    const Reduction r = reduce_once(bp("y - x"), bp("y + x"));
    CHECK(std::max(r.q1.deg_y(), r.q2.deg_y()) == 0);
    CHECK(solve_system(bp("y - x"), bp("y + x")).points.size() == 1);
  }
  SUBCASE("{F, F} enters the proportional branch") {
    const BivarPoly f = bp("(x^2-1)^2 + (y^2-2)^2");
    const Reduction r = reduce_once(f, f);
    REQUIRE_FALSE(r.path.empty());
    CHECK(r.path.front() == ReductionBranch::proportional);
    CHECK(std::max(r.q1.deg_y(), r.q2.deg_y()) < 4);
  }
  SUBCASE("y^2 - x, y - 1") {
    BivarPoly a = bp("y^2 - x"), b = bp("y - 1");
    while (a.deg_y() > 0 && b.deg_y() > 0) {
      const Reduction r = reduce_once(a, b);
      a = r.q1;
      b = r.q2;
    }
    const BivarPoly &free = a.deg_y() == 0 ? a : b;
    // equalizing by y adds the spurious x = 0; verification removes it
    const auto roots = real_roots(free.y_coefficient(0));
    CHECK(std::any_of(roots.begin(), roots.end(),
                      [](const RootReport &r) { return std::abs(r.value - 1.0) < 1e-9; }));
    CHECK(same_points(solve_system(bp("y^2 - x"), bp("y - 1")), {{1, 1}}, 1e-9));
  }
  SUBCASE("singular branch") {
    // D = 0 because the top two y-terms are proportional, q-parts differ
    const Reduction r = reduce_once(bp("y^2 + y + x"), bp("y^2 + y + 1"));
    REQUIRE_FALSE(r.path.empty());
    CHECK(r.path.front() == ReductionBranch::singular);
  }
  CHECK_THROWS_AS(reduce_once(bp("x + 1"), bp("x - 1")), NotEliminable);
}

TEST_CASE("property: reduction strictly lowers the y-degree") {
  int steps = 0;
  for (int trial = 0; trial < 100; ++trial) {
    const BivarPoly a = random_bivar(testing::uniform_int(1, 3), testing::uniform_int(1, 3));
    const BivarPoly b = random_bivar(testing::uniform_int(1, 3), testing::uniform_int(1, 3));
    const int bound = a.deg_y() + b.deg_y();
    BivarPoly p = a, q = b;
    ReductionState state;
    int count = 0;
    while (p.deg_y() > 0 && q.deg_y() > 0) {
      const int before = std::max(p.deg_y(), q.deg_y());
      const Reduction r = reduce_once(p, q, Tolerances{}, state);
      REQUIRE(std::max(r.q1.deg_y(), r.q2.deg_y()) < before);
      p = r.q1;
      q = r.q2;
      ++count;
    }
    REQUIRE(count <= bound);
    steps += count;
  }
  CHECK(steps > 0);
}

TEST_CASE("solve_system examples") {
  SUBCASE("(x^2-4)^2 + (y^2-9)^2") {
    const BivarPoly f = bp("(x^2-4)^2 + (y^2-9)^2");
    const SolutionSet s = solve_system(f, f);
    CHECK(same_points(s, {{2, 3}, {2, -3}, {-2, 3}, {-2, -3}}, 1e-6));
    check_sound(f, f, s);
  }
  SUBCASE("(x^2-1)^2 + (y^2-4)^2") {
    const BivarPoly f = bp("(x^2-1)^2 + (y^2-4)^2");
    CHECK(same_points(solve_system(f, f), {{1, 2}, {1, -2}, {-1, 2}, {-1, -2}}, 1e-6));
  }
  SUBCASE("(x^2-1)^2 + (y^2-2)^2") {
    const BivarPoly f = bp("(x^2-1)^2 + (y^2-2)^2");
    const double r2 = std::sqrt(2.0);
    CHECK(same_points(solve_system(f, f), {{1, r2}, {1, -r2}, {-1, r2}, {-1, -r2}}, 1e-6));
  }
  SUBCASE("linear pair") {
    CHECK(same_points(solve_system(bp("x + y - 3"), bp("x - y - 1")), {{2, 1}}, 1e-9));
  }
  SUBCASE("y^2 - x and y^2 - 2x meet only at the origin") {
    CHECK(same_points(solve_system(bp("y^2 - x"), bp("y^2 - 2x")), {{0, 0}}, 1e-6));
  }
  SUBCASE("y-free and x-free inputs") {
    CHECK(same_points(solve_system(bp("x^2 - 1"), bp("y - 2")), {{1, 2}, {-1, 2}}, 1e-9));
    CHECK(same_points(solve_system(bp("x^2 - 1"), bp("x y - 3")), {{1, 3}, {-1, -3}}, 1e-9));
  }
  SUBCASE("circle and line") {
    const double h = std::sqrt(0.5);
    CHECK(same_points(solve_system(bp("x^2 + y^2 - 1"), bp("x - y")), {{h, h}, {-h, -h}}, 1e-9));
  }
  SUBCASE("no real solutions") {
    CHECK(solve_system(bp("x^2 + y^2 + 1"), bp("x - y")).points.empty());
    CHECK(solve_system(bp("3"), bp("x - y")).points.empty());
  }
}

TEST_CASE("solve_system errors") {
  CHECK_THROWS_AS(solve_system(BivarPoly(), BivarPoly()), BothZero);
  CHECK_THROWS_AS(solve_system(bp("(x-1) y"), bp("(x-1)(y+1)")), InfiniteSolutions);
  CHECK_THROWS_AS(solve_system(bp("x - y"), bp("2x - 2y")), InfiniteSolutions);
  CHECK_THROWS_AS(solve_system(bp("x y"), BivarPoly()), InfiniteSolutions);
  // a one-signed equation with a whole curve of zeros
  CHECK_THROWS_AS(solve_system(bp("(x - y)^2"), bp("(x - y)^2")), InfiniteSolutions);
  SolveOptions tight;
  tight.candidate_cap = 1;
  CHECK_THROWS_AS(solve_system(bp("x^3 - x"), bp("y - x"), Tolerances{}, tight), CandidateOverflow);
}

TEST_CASE("degenerate pair terminates quickly") {
  const auto start = std::chrono::steady_clock::now();
  CHECK_THROWS_AS(solve_system(bp("(x-1) y"), bp("(x-1)(y+1)")), InfiniteSolutions);
  const double seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  CHECK(seconds < 1.0);
}

TEST_CASE("property: sums of squares with known zero sets") {
  for (int trial = 0; trial < 30; ++trial) {
    const std::vector<double> xs = testing::separated_points(testing::uniform_int(1, 2), -3, 3, 0.5);
    const std::vector<double> ys = testing::separated_points(testing::uniform_int(1, 2), -3, 3, 0.5);
    const RealPoly px = testing::from_roots(xs);
    const RealPoly py = testing::from_roots(ys);
    const BivarPoly ax = BivarPoly::in_x(px), ay = BivarPoly::in_y(py);
    const BivarPoly f = ax * ax + ay * ay;
    std::vector<Point> want;
    for (double x : xs)
      for (double y : ys)
        want.emplace_back(x, y);
    const SolutionSet s = solve_system(f, f);
    INFO(cli::render(f));
    REQUIRE(same_points(s, want, 1e-6));
    check_sound(f, f, s);

    // never two strict opposite signs: F is one-signed wherever we look
    int positive = 0, negative = 0;
    for (int k = 0; k < 1000; ++k) {
      const double x = testing::uniform(-5, 5), y = testing::uniform(-5, 5);
      const double v = f(x, y);
      const double t = 1e-9 * scale(f, x, y);
      positive += v > t;
      negative += v < -t;
    }
    REQUIRE((positive == 0 || negative == 0));
  }
}

TEST_CASE("property: linear systems match direct elimination") {
  int compared = 0;
  for (int trial = 0; trial < 100; ++trial) {
    // p1 = a1(x) y + a2(x), p2 = b1(x) y + b2(x)
    const RealPoly a1 = testing::random_real_poly(1, 3), a2 = testing::random_real_poly(2, 3);
    const RealPoly b1 = testing::random_real_poly(1, 3), b2 = testing::random_real_poly(1, 3);
    const BivarPoly y = BivarPoly::term(1.0, 0, 1);
    const BivarPoly p1 = BivarPoly::in_x(a1) * y + BivarPoly::in_x(a2);
    const BivarPoly p2 = BivarPoly::in_x(b1) * y + BivarPoly::in_x(b2);

    std::vector<Point> want;
    const RealPoly eliminant = a2 * b1 - a1 * b2;
    for (const RootReport &r : real_roots(eliminant)) {
      const double x = r.value;
      const double y0 = std::abs(eval(a1, x)) > std::abs(eval(b1, x)) ? -eval(a2, x) / eval(a1, x)
                                                                       : -eval(b2, x) / eval(b1, x);
      want.emplace_back(x, y0);
    }
    const SolutionSet s = solve_system(p1, p2);
    INFO(cli::render(p1), "  /  ", cli::render(p2));
    check_sound(p1, p2, s);
    REQUIRE(same_points(s, want, 1e-6));
    compared += static_cast<int>(want.size());
  }
  CHECK(compared > 50);
}

TEST_CASE("property: soundness on random pairs") {
  for (int trial = 0; trial < 60; ++trial) {
    const BivarPoly a = random_bivar(testing::uniform_int(1, 2), testing::uniform_int(1, 2));
    const BivarPoly b = random_bivar(testing::uniform_int(1, 2), testing::uniform_int(1, 2));
    check_sound(a, b, solve_system(a, b));
  }
}
