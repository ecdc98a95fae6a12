#include <doctest.h>

#include <cmath>

#include "polyroots/complexroots.hpp"
#include "polyroots/oracle.hpp"
#include "support.hpp"

using namespace polyroots;
using testing::cd;

namespace {

BivarPoly term(double c, int i, int j) { return BivarPoly::term(c, i, j); }

std::vector<cd> expanded(const std::vector<ComplexRootReport> &roots) {
  std::vector<cd> out;
  for (const ComplexRootReport &r : roots)
    for (int k = 0; k < r.multiplicity; ++k)
      out.push_back(r.value);
  return out;
}

} // namespace

TEST_CASE("split examples") {
  SUBCASE("z^2") {
    const SplitPair s = split(ComplexPoly{0.0, 0.0, 1.0});
    CHECK(s.re_part == term(1, 2, 0) - term(1, 0, 2));
    CHECK(s.im_part == term(2, 1, 1));
  }
  SUBCASE("z") {
    const SplitPair s = split(ComplexPoly{0.0, 1.0});
    CHECK(s.re_part == term(1, 1, 0));
    CHECK(s.im_part == term(1, 0, 1));
  }
  SUBCASE("i z") {
    const SplitPair s = split(ComplexPoly{0.0, cd(0, 1)});
    CHECK(s.re_part == term(-1, 0, 1));
    CHECK(s.im_part == term(1, 1, 0));
  }
  CHECK_THROWS_AS(split(ComplexPoly()), ZeroPolynomial);
}

TEST_CASE("property: split identity") {
  for (int trial = 0; trial < 100; ++trial) {
    const ComplexPoly p = testing::random_complex_poly(testing::uniform_int(1, 8));
    const SplitPair s = split(p);
    for (int k = 0; k < 20; ++k) {
      const double x = testing::uniform(-2, 2), y = testing::uniform(-2, 2);
      const cd z(x, y);
      const cd rebuilt(s.re_part(x, y), s.im_part(x, y));
      REQUIRE(std::abs(eval(p, z) - rebuilt) <= 1e-9 * scale(p, z));
    }
  }
}

TEST_CASE("property: real coefficients split into p(x) and 0 on y = 0") {
  for (int trial = 0; trial < 50; ++trial) {
    const RealPoly p = testing::random_real_poly(testing::uniform_int(1, 8));
    const SplitPair s = split(to_complex(p));
    const RealPoly re0 = s.re_part.specialize_y(0.0);
    const RealPoly im0 = s.im_part.specialize_y(0.0);
    REQUIRE(im0.is_zero());
    REQUIRE(re0 == p);
  }
}

TEST_CASE("complex_roots examples") {
  SUBCASE("z^2 + 1") {
    const auto r = complex_roots(ComplexPoly{1.0, 0.0, 1.0});
    CHECK(testing::same_multiset(expanded(r), {cd(0, 1), cd(0, -1)}, 1e-9));
    for (const auto &x : r)
      CHECK(x.multiplicity == 1);
  }
  SUBCASE("z^4 - 1") {
    const auto r = complex_roots(ComplexPoly{-1.0, 0.0, 0.0, 0.0, 1.0});
    REQUIRE(r.size() == 4);
    CHECK(testing::same_multiset(expanded(r), {1.0, -1.0, cd(0, 1), cd(0, -1)}, 1e-9));
  }
  SUBCASE("(z - (1+2i))^2") {
    const ComplexPoly p{cd(-3, 4), cd(-2, -4), 1.0};
    const auto r = complex_roots(p);
    REQUIRE(r.size() == 1);
    CHECK(std::abs(r[0].value - cd(1, 2)) < 1e-6);
    CHECK(r[0].multiplicity == 2);
  }
  SUBCASE("linear") {
    const auto r = complex_roots(ComplexPoly{cd(1, -1), 1.0});
    REQUIRE(r.size() == 1);
    CHECK(std::abs(r[0].value - cd(-1, 1)) < 1e-12);
  }
  CHECK_THROWS_AS(complex_roots(ComplexPoly{2.0}), DegreeTooLow);
  CHECK_THROWS_AS(complex_roots(ComplexPoly()), ZeroPolynomial);
}

TEST_CASE("property: random complex polynomials") {
  for (int trial = 0; trial < 60; ++trial) {
    const ComplexPoly p = testing::random_complex_poly(testing::uniform_int(1, 7));
    const auto r = complex_roots(p);
    int total = 0;
    for (const ComplexRootReport &x : r) {
      REQUIRE(std::abs(eval(p, x.value)) <= 1e-6 * scale(p, x.value));
      total += x.multiplicity;
    }
    REQUIRE(total == p.degree());
    const auto o = oracle::durand_kerner(p);
    REQUIRE(o.converged);
    REQUIRE(testing::same_multiset(expanded(r), o.roots, 1e-6));
  }
}

TEST_CASE("property: conjugate closure for real coefficients") {
  for (int trial = 0; trial < 60; ++trial) {
    const RealPoly p = testing::random_real_poly(testing::uniform_int(1, 7));
    const std::vector<cd> roots = expanded(complex_roots(to_complex(p)));
    REQUIRE(static_cast<int>(roots.size()) == p.degree());
    std::vector<cd> conj;
    for (const cd &z : roots)
      conj.push_back(std::conj(z));
    REQUIRE(testing::same_multiset(roots, conj, 1e-6));
  }
}

TEST_CASE("property: constructed multiplicities") {
  for (int trial = 0; trial < 40; ++trial) {
    const int distinct = testing::uniform_int(1, 3);
    std::vector<cd> centers;
    while (static_cast<int>(centers.size()) < distinct) {
      const cd c(testing::uniform(-2, 2), testing::uniform(-2, 2));
      if (std::all_of(centers.begin(), centers.end(), [&](const cd &w) { return std::abs(c - w) > 0.5; }))
        centers.push_back(c);
    }
    std::vector<cd> all;
    for (const cd &c : centers) {
      const int m = testing::uniform_int(1, 3);
      for (int k = 0; k < m; ++k)
        all.push_back(c);
    }
    const ComplexPoly p = testing::from_roots(all);
    const auto r = complex_roots(p);
    REQUIRE(r.size() == centers.size());
    REQUIRE(testing::same_multiset(expanded(r), all, 1e-6));
  }
}
