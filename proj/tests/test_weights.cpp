#include <doctest.h>

#include <cmath>
#include <vector>

#include "mcz/maximal.hpp"
#include "mcz/rng.hpp"
#include "mcz/weights.hpp"

using namespace mcz;

namespace {

GridFunction random_weight(const Box& box, int levels, std::uint64_t seed) {
  Rng rng(seed);
  return GridFunction::sample(box, levels, [&](double, double = 0.0) {
    return std::exp(rng.uniform(-1.0, 1.0));
  });
}

}  // namespace

TEST_CASE("unit weight has constant exactly one") {
  const Box box(1, 1.0);
  const CubeFamily cubes(box, 4, 3.0);
  const GridFunction one(box, 6, 1.0);
  for (double p : {1.5, 2.0, 3.0}) CHECK(ap_constant(one, p, cubes) == 1.0);
  CHECK(a1_constant(one, cubes) == 1.0);

  WeightVector wv{{one, one}, {2.0, 2.0}};
  CHECK(multi_ap_constant(wv, cubes) == 1.0);
  const MultiApSides sides = multi_ap_sides(wv, cubes);
  CHECK(sides.joint == 1.0);
  CHECK(sides.nu == 1.0);
  for (double c : sides.component) CHECK(c == 1.0);
}

TEST_CASE("muckenhoupt constants are normalized and scale invariant") {
  const Box box(1, 1.0);
  const CubeFamily cubes(box, 4, 3.0);
  for (std::uint64_t seed : {101u, 102u, 103u}) {
    const GridFunction w = random_weight(box, 6, seed);
    for (double p : {1.5, 2.0, 4.0}) {
      const double c = ap_constant(w, p, cubes);
      CHECK(c >= 1.0);
      CHECK(ap_constant(w * 7.0, p, cubes) == doctest::Approx(c).epsilon(1e-12));
    }
    const double c1 = a1_constant(w, cubes);
    CHECK(c1 >= 1.0);
    CHECK(a1_constant(w * 7.0, cubes) == doctest::Approx(c1).epsilon(1e-12));
  }
}

TEST_CASE("nested exponent classes") {
  // A_p constants are nonincreasing in p on a fixed weight.
  const Box box(1, 1.0);
  const CubeFamily cubes(box, 4, 3.0);
  const GridFunction w = power_weight(box, 6, 0.4);
  double prev = HUGE_VAL;
  for (double p : {1.5, 2.0, 3.0, 4.0}) {
    const double c = ap_constant(w, p, cubes);
    CHECK(c <= prev * (1.0 + 1e-12));
    prev = c;
  }
}

TEST_CASE("power weights") {
  const Box box(1, 1.0);

  SUBCASE("exponent zero gives the unit weight") {
    const GridFunction w = power_weight(box, 5, 0.0);
    for (std::size_t i = 0; i < w.size(); ++i) CHECK(w[i] == 1.0);
  }

  SUBCASE("samples the power away from the singular cell") {
    const GridFunction w = power_weight(box, 1, 1.0);
    CHECK(w[0] == doctest::Approx(0.5));   // |x| at x = -0.5
    CHECK(w[1] == doctest::Approx(0.5));
    const GridFunction v = power_weight(box, 3, 2.0);
    CHECK(v[7] == doctest::Approx(0.875 * 0.875));
  }

  SUBCASE("integrable exponent is refinement stable") {
    std::vector<double> per_level;
    for (int L = 4; L <= 9; ++L)
      per_level.push_back(ap_constant(power_weight(box, L, 0.5), 2.0, CubeFamily(box, L, 3.0)));
    const StabilityVerdict v = classify_stability(per_level);
    CHECK_FALSE(v.divergent);
    CHECK(per_level.back() / per_level.front() < 2.0);
  }

  SUBCASE("critical exponent diverges") {
    std::vector<double> per_level;
    for (int L = 4; L <= 10; ++L)
      per_level.push_back(ap_constant(power_weight(box, L, -1.5), 2.0, CubeFamily(box, L, 3.0)));
    const StabilityVerdict v = classify_stability(per_level);
    CHECK(v.divergent);
    CHECK(v.growth > 10.0);
  }
}

TEST_CASE("stability classifier") {
  SUBCASE("flat sequences pass") {
    const std::vector<double> flat{3.0, 3.1, 3.05, 3.08};
    CHECK_FALSE(classify_stability(flat).divergent);
  }
  SUBCASE("monotone tenfold growth is flagged") {
    const std::vector<double> up{1.0, 2.5, 6.0, 15.0};
    const StabilityVerdict v = classify_stability(up);
    CHECK(v.divergent);
    CHECK(v.growth == doctest::Approx(15.0));
  }
  SUBCASE("large but non-monotone excursions are not flagged") {
    const std::vector<double> wobble{1.0, 30.0, 0.5, 20.0};
    CHECK_FALSE(classify_stability(wobble).divergent);
  }
  SUBCASE("shrinking sequences are not flagged") {
    const std::vector<double> down{10.0, 5.0, 2.0, 1.0};
    CHECK_FALSE(classify_stability(down).divergent);
  }
}

TEST_CASE("weight vectors") {
  const Box box(1, 1.0);
  const CubeFamily cubes(box, 4, 3.0);

  SUBCASE("exponent bookkeeping") {
    const GridFunction one(box, 5, 1.0);
    WeightVector wv{{one, one}, {2.0, 2.0}};
    CHECK(wv.arity() == 2);
    CHECK(wv.p_total() == doctest::Approx(1.0));
    WeightVector wv3{{one, one, one}, {3.0, 3.0, 3.0}};
    CHECK(wv3.p_total() == doctest::Approx(1.0));

    const GridFunction u = power_weight(box, 5, 0.5);
    const GridFunction v = power_weight(box, 5, -0.25);
    WeightVector mix{{u, v}, {2.0, 2.0}};
    const GridFunction nu = mix.nu();
    for (std::size_t i = 0; i < nu.size(); ++i)
      CHECK(nu[i] == doctest::Approx(std::pow(u[i], 0.5) * std::pow(v[i], 0.5)).epsilon(1e-13));
  }

  SUBCASE("single-slot constant degenerates to the classical one") {
    const GridFunction w = power_weight(box, 6, 0.4);
    WeightVector wv{{w}, {2.0}};
    const double multi = multi_ap_constant(wv, cubes);
    const double classical = ap_constant(w, 2.0, cubes);
    CHECK(multi == doctest::Approx(std::pow(classical, 0.5)).epsilon(1e-10));
  }

  SUBCASE("endpoint slots use the infimum form") {
    const Box small(1, 1.0);
    const CubeFamily tiny(small, 2, 0.0);
    const GridFunction u = random_weight(small, 4, 7);
    const GridFunction v = random_weight(small, 4, 8);
    WeightVector wv{{u, v}, {1.0, 1.0}};
    const double got = multi_ap_constant(wv, tiny);

    // Independent evaluation straight from the contract: p = 1/2, and each
    // endpoint slot contributes 1 / inf_Q w_j.
    const GridFunction nu = wv.nu();
    double want = 0.0;
    tiny.for_each([&](const DyadicCube& q, bool dilated) {
      const auto avg_of = [&](const GridFunction& g) {
        double s = 0.0;
        std::int64_t n = 0;
        const auto r = dilated ? cube_cells(g, dilate_cube(q, tiny.dilation)) : cube_cells(g, q);
        for (std::int64_t i = r[0].lo; i < r[0].hi; ++i) {
          s += g[static_cast<std::size_t>(i)];
          ++n;
        }
        return s / static_cast<double>(n);
      };
      const auto inf_of = [&](const GridFunction& g) {
        double m = HUGE_VAL;
        const auto r = dilated ? cube_cells(g, dilate_cube(q, tiny.dilation)) : cube_cells(g, q);
        for (std::int64_t i = r[0].lo; i < r[0].hi; ++i)
          m = std::min(m, g[static_cast<std::size_t>(i)]);
        return m;
      };
      want = std::max(want, std::pow(avg_of(nu), 2.0) / (inf_of(u) * inf_of(v)));
    });
    CHECK(got == doctest::Approx(want).epsilon(1e-12));
  }

  SUBCASE("factorization sides stay finite on admissible powers") {
    const GridFunction u = power_weight(box, 6, 0.4);
    const GridFunction v = power_weight(box, 6, -0.4);
    WeightVector wv{{u, v}, {2.0, 2.0}};
    const MultiApSides sides = multi_ap_sides(wv, cubes);
    CHECK(sides.joint >= 1.0);
    CHECK(sides.nu >= 1.0);
    REQUIRE(sides.component.size() == 2);
    for (double c : sides.component) CHECK(std::isfinite(c));
    CHECK(std::isfinite(sides.joint));
  }
}
