#include <doctest.h>

#include <cmath>

#include "polyroots/oracle.hpp"
#include "support.hpp"

using namespace polyroots;
using testing::cd;

TEST_CASE("durand_kerner examples") {
  SUBCASE("z^2 - 3z + 2") {
    const auto o = oracle::durand_kerner(ComplexPoly{2.0, -3.0, 1.0});
    CHECK(o.converged);
    CHECK(testing::same_multiset(o.roots, {1.0, 2.0}, 1e-10));
  }
  SUBCASE("z^3 - 1") {
    const auto o = oracle::durand_kerner(ComplexPoly{-1.0, 0.0, 0.0, 1.0});
    CHECK(o.converged);
    const double h = std::sqrt(3.0) / 2;
    CHECK(testing::same_multiset(o.roots, {1.0, cd(-0.5, h), cd(-0.5, -h)}, 1e-10));
  }
  SUBCASE("z - c") {
    const cd c(3.5, -1.25);
    const auto o = oracle::durand_kerner(ComplexPoly{-c, 1.0});
    REQUIRE(o.roots.size() == 1);
    CHECK(std::abs(o.roots[0] - c) < 1e-12);
  }
  SUBCASE("leading coefficient other than one") {
    const auto o = oracle::durand_kerner(ComplexPoly{-8.0, 0.0, 2.0});
    CHECK(testing::same_multiset(o.roots, {2.0, -2.0}, 1e-10));
  }
  CHECK(oracle::durand_kerner(ComplexPoly{5.0}).roots.empty());
}

TEST_CASE("roots_of_unity") {
  CHECK(testing::same_multiset(oracle::roots_of_unity(1), {1.0}, 1e-15));
  CHECK(testing::same_multiset(oracle::roots_of_unity(2), {1.0, -1.0}, 1e-15));
  CHECK(testing::same_multiset(oracle::roots_of_unity(4), {1.0, cd(0, 1), -1.0, cd(0, -1)}, 1e-15));
  CHECK_THROWS_AS(oracle::roots_of_unity(0), InvalidInput);
  for (int n = 1; n <= 16; ++n)
    for (const cd &z : oracle::roots_of_unity(n))
      REQUIRE(std::abs(std::pow(z, n) - 1.0) <= 1e-12);
}

TEST_CASE("property: recovers constructed roots") {
  for (int trial = 0; trial < 100; ++trial) {
    const int n = testing::uniform_int(1, 8);
    std::vector<cd> roots;
    while (static_cast<int>(roots.size()) < n) {
      const cd r(testing::uniform(-3, 3), testing::uniform(-3, 3));
      if (std::all_of(roots.begin(), roots.end(), [&](const cd &w) { return std::abs(r - w) > 0.1; }))
        roots.push_back(r);
    }
    const ComplexPoly p = testing::from_roots(roots);
    const auto o = oracle::durand_kerner(p);
    REQUIRE(o.converged);
    REQUIRE(testing::same_multiset(o.roots, roots, 1e-8));
    for (const cd &z : o.roots)
      REQUIRE(std::abs(eval(p, z)) <= 1e-9 * scale(p, z));
  }
}
