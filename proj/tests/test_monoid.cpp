#include <random>

#include "doctest.h"
#include "logkn/error.hpp"
#include "logkn/monoid.hpp"
#include "oracles.hpp"

using namespace logkn;
using namespace logkn::monoid;

namespace {

// Submonoids of N^n, so every coefficient is bounded by the coordinate sum.
std::vector<FsMonoid> corpus() {
  return {
      FsMonoid::free(1),
      FsMonoid::free(2),
      FsMonoid::free(3),
      FsMonoid(1, {{2}, {3}}),
      FsMonoid(1, {{3}, {5}}),
      FsMonoid(1, {{2}}),
      FsMonoid(2, {{1, 0}, {1, 1}, {1, 2}}),
      FsMonoid(2, {{1, 0}, {1, 2}}),
      FsMonoid(2, {{2, 0}, {1, 1}, {0, 2}}),
      FsMonoid(2, {{2, 0}, {0, 2}}),
      FsMonoid(2, {{1, 0}, {0, 1}, {1, 1}}),
      FsMonoid(2, {{1, 0}, {1, 3}}),
      FsMonoid(2, {{1, 0}, {1, 1}, {1, 3}}),
      FsMonoid(3, {{1, 0, 0}, {0, 1, 0}, {1, 1, 2}}),
      FsMonoid(3, {{1, 0, 0}, {0, 1, 0}, {0, 0, 1}, {1, 1, 1}}),
      FsMonoid(3, {{1, 0, 1}, {0, 1, 1}, {1, 1, 1}}),
  };
}

bool brute_contains(const FsMonoid& p, const Vector& x) {
  long bound = 0;
  for (long c : x) {
    if (c < 0) return false;
    bound += c;
  }
  return testing::in_monoid_by_enumeration(p.generators(), x, bound);
}

bool brute_in_group(const FsMonoid& p, const Vector& x) {
  if (p.is_trivial()) return std::all_of(x.begin(), x.end(), [](long c) { return c == 0; });
  const auto basis = intlin::lattice_basis(p.generator_matrix());
  intlin::IntegerMatrix target(x.size(), 1);
  for (std::size_t i = 0; i < x.size(); ++i) target(i, 0) = x[i];
  return intlin::solve_in_lattice(basis, target).has_value();
}

// Points x of P^gp in a box with n x in P for some n <= 6 but x not in P.
bool brute_saturated(const FsMonoid& p, long radius) {
  const std::size_t r = p.ambient_rank();
  Vector x(r, -radius);
  for (;;) {
    if (brute_in_group(p, x) && !brute_contains(p, x)) {
      for (long n = 2; n <= 6; ++n) {
        Vector y = x;
        for (auto& c : y) c *= n;
        if (brute_contains(p, y)) return false;
      }
    }
    std::size_t i = 0;
    while (i < r && x[i] == radius) x[i++] = -radius;
    if (i == r) return true;
    ++x[i];
  }
}

}  // namespace

TEST_CASE("groupification ranks") {
  CHECK(groupification(FsMonoid::free(2)).rank == 2);
  CHECK(groupification(FsMonoid(1, {{2}, {3}})).rank == 1);
  CHECK(groupification(FsMonoid(2, {{2, 0}, {0, 0}})).rank == 1);
  CHECK(groupification(FsMonoid(2, {{2, 0}, {0, 0}})).torsion.empty());
}

TEST_CASE("saturation examples") {
  CHECK_FALSE(is_saturated(FsMonoid(1, {{2}, {3}})));
  CHECK(is_saturated(FsMonoid::free(3)));
  CHECK(is_saturated(FsMonoid(2, {{1, 0}, {1, 1}, {1, 2}})));
  CHECK(is_saturated(FsMonoid(2, {{1, 0}, {1, 2}})));  // gp = Z x 2Z
  CHECK_FALSE(is_saturated(FsMonoid(2, {{1, 0}, {1, 1}, {1, 3}})));  // misses (1, 2)
  CHECK(is_saturated(FsMonoid(1, {{2}})));  // 2N = gp cap cone in gp 2Z
}

TEST_CASE("saturation agrees with the brute-force oracle") {
  for (const auto& p : corpus()) {
    const long radius = p.ambient_rank() == 3 ? 2 : 4;
    CAPTURE(to_string(p));
    CHECK(is_saturated(p) == brute_saturated(p, radius));
  }
}

TEST_CASE("membership agrees with coefficient enumeration") {
  std::mt19937_64 rng(11);
  std::uniform_int_distribution<long> coord(-2, 6);
  for (const auto& p : corpus()) {
    for (int k = 0; k < 40; ++k) {
      Vector x(p.ambient_rank());
      for (auto& c : x) c = coord(rng);
      CAPTURE(to_string(p));
      CHECK(p.contains(x) == brute_contains(p, x));
    }
  }
}

TEST_CASE("membership with a lineality space") {
  const FsMonoid p(2, {{1, 0}, {-1, 0}, {0, 2}});
  CHECK(p.contains({-5, 4}));
  CHECK_FALSE(p.contains({0, 1}));
  CHECK_FALSE(p.contains({0, -2}));
  CHECK(p.in_cone({0, 1}));
  CHECK(p.in_group({3, 2}));
  CHECK_FALSE(p.in_group({3, 1}));
}

TEST_CASE("parsing and construction errors") {
  CHECK(FsMonoid::parse("1,0;1,1;1,2") == FsMonoid(2, {{1, 0}, {1, 1}, {1, 2}}));
  CHECK(FsMonoid::parse("").is_trivial());
  CHECK_THROWS_AS(FsMonoid::parse("1,a"), Error);
  CHECK_THROWS_AS(FsMonoid::parse("1,0;1"), Error);
  CHECK_THROWS_AS(FsMonoid::free(5), Error);
  CHECK(FsMonoid(2, {{1, 0}, {1, 0}, {0, 0}}).generators().size() == 1);
}

TEST_CASE("exactness and Kummer examples") {
  const MonoidHom doubling(FsMonoid::free(1), FsMonoid::free(1), intlin::IntegerMatrix{{2}});
  CHECK(is_exact(doubling));
  CHECK(is_kummer(doubling));
  const MonoidHom sum(FsMonoid::free(2), FsMonoid::free(1), intlin::IntegerMatrix{{1, 1}});
  CHECK_FALSE(is_exact(sum));
  const MonoidHom inclusion(FsMonoid::free(1), FsMonoid::free(2), intlin::IntegerMatrix{{1}, {0}});
  CHECK_FALSE(is_kummer(inclusion));
  const MonoidHom diag(FsMonoid::free(2), FsMonoid::free(2), intlin::IntegerMatrix{{2, 0}, {0, 3}});
  CHECK(is_kummer(diag));
  CHECK_THROWS_AS(MonoidHom(FsMonoid::free(1), FsMonoid::free(1), intlin::IntegerMatrix{{-1}}), Error);
}

TEST_CASE("good model charts are exact, never Kummer beyond rank 1") {
  std::size_t count = 0;
  for (std::size_t r = 1; r <= 4; ++r) {
    std::vector<long> a(r, 1);
    for (;;) {
      const auto f = good_model_chart(a);
      CHECK(is_exact(f));
      CHECK(is_kummer(f) == (r == 1));
      if (is_kummer(f)) CHECK(groupification(f.source()).rank == groupification(f.target()).rank);
      ++count;
      std::size_t i = 0;
      while (i < r && a[i] == 5) a[i++] = 1;
      if (i == r) break;
      ++a[i];
    }
  }
  CHECK(count == 780);
  CHECK_THROWS_AS(good_model_chart(std::vector<long>{}), Error);
  CHECK_THROWS_AS(good_model_chart(std::vector<long>{1, 0}), Error);
  CHECK(good_model_chart("2,3").target() == FsMonoid::free(2));
}

TEST_CASE("local Kato-Nakayama models") {
  const auto n = kn_local_model(FsMonoid::free(1));
  CHECK(n.cone_dimension == 1);
  CHECK(n.torus_rank == 1);
  CHECK(n.component_count == 1);
  CHECK(kn_local_model(FsMonoid::free(2)).torus_rank == 2);
  const auto point = kn_local_model(FsMonoid::parse(""));
  CHECK(point.cone_dimension == 0);
  CHECK(point.torus_rank == 0);
  CHECK_FALSE(kn_local_model(FsMonoid(1, {{2}, {3}})).from_saturated);
  for (const auto& p : corpus()) CHECK(kn_local_model(p).torus_rank == groupification(p).rank);
}
