#include <doctest.h>

#include <cmath>
#include <vector>

#include "mcz/rng.hpp"
#include "mcz/varlex.hpp"
#include "mcz/weights.hpp"

using namespace mcz;

namespace {

GridFunction random_signal(const Box& box, int levels, std::uint64_t seed) {
  Rng rng(seed);
  const double a = rng.uniform(0.5, 2.0);
  const double b = rng.uniform(1.0, 6.0);
  const double c = rng.uniform(0.0, 1.0);
  return GridFunction::sample(box, levels, [&](double x, double = 0.0) {
    return a * std::sin(b * x) + c * x * x;
  });
}

}  // namespace

TEST_CASE("constant exponents reproduce classical norms") {
  const Box box(1, 1.0);
  const VarExponent p2 = make_constant_exponent(box, 7, 2.0);
  CHECK(p2.p_minus() == 2.0);
  CHECK(p2.p_plus() == 2.0);
  CHECK(p2.p_inf == 2.0);

  for (std::uint64_t seed : {1u, 2u, 3u}) {
    const GridFunction f = random_signal(box, 7, seed);
    const double classical = std::pow(box_integral(f.abs().pow(2.0)), 0.5);
    CHECK(varlex_norm(f, p2) == doctest::Approx(classical).epsilon(1e-8));
  }

  const VarExponent p35 = make_constant_exponent(box, 7, 3.5);
  const GridFunction f = random_signal(box, 7, 9);
  const double classical = std::pow(box_integral(f.abs().pow(3.5)), 1.0 / 3.5);
  CHECK(varlex_norm(f, p35) == doctest::Approx(classical).epsilon(1e-8));

  CHECK(varlex_norm(GridFunction(box, 7, 0.0), p2) == 0.0);
}

TEST_CASE("indicator norm on a cube") {
  const Box box(1, 1.0);
  const VarExponent p = make_constant_exponent(box, 6, 2.5);
  const DyadicCube q(box, 2, 1);
  const GridFunction chi = GridFunction::sample(box, 6, [&](double x, double = 0.0) {
    return (x > q.corner(0) && x < q.corner(0) + q.side()) ? 1.0 : 0.0;
  });
  CHECK(varlex_norm(chi, p) == doctest::Approx(std::pow(q.measure(), 1.0 / 2.5)).epsilon(1e-7));
  // Restriction to the cube sees the same mass.
  CHECK(varlex_norm_on(chi, p, q) == doctest::Approx(varlex_norm(chi, p)).epsilon(1e-7));
}

TEST_CASE("two-valued exponent against a scalar root") {
  // p = 2 on the left half, 3 on the right; for the indicator of the box the
  // modular is a two-term scalar equation solved independently here.
  const Box box(1, 1.0);
  const int L = 6;
  VarExponent p{GridFunction::sample(box, L, [](double x, double = 0.0) {
                  return x < 0.0 ? 2.0 : 3.0;
                }),
                3.0};
  const GridFunction one(box, L, 1.0);
  const double got = varlex_norm(one, p);

  double lo = 1e-3, hi = 10.0;
  for (int i = 0; i < 200; ++i) {
    const double mid = 0.5 * (lo + hi);
    const double modular = 1.0 / (mid * mid) + 1.0 / (mid * mid * mid);
    (modular > 1.0 ? lo : hi) = mid;
  }
  CHECK(got == doctest::Approx(0.5 * (lo + hi)).epsilon(1e-7));
}

TEST_CASE("exponent validation") {
  const Box box(1, 1.0);
  const GridFunction f = random_signal(box, 5, 4);
  const VarExponent bad{GridFunction(box, 5, 0.5), 0.5};
  CHECK_THROWS_AS(varlex_norm(f, bad), std::invalid_argument);
  const VarExponent unit{GridFunction(box, 5, 1.0), 1.0};
  CHECK_NOTHROW(varlex_norm(f, unit));
  CHECK_THROWS_AS(conjugate(unit), std::invalid_argument);
}

TEST_CASE("conjugation") {
  const Box box(1, 1.0);

  SUBCASE("fixed point at two") {
    const VarExponent p = make_constant_exponent(box, 5, 2.0);
    const VarExponent c = conjugate(p);
    for (std::size_t i = 0; i < c.p.size(); ++i) CHECK(c.p[i] == doctest::Approx(2.0));
    CHECK(c.p_inf == doctest::Approx(2.0));
  }

  SUBCASE("classical pairs") {
    const VarExponent p = make_constant_exponent(box, 5, 4.0);
    const VarExponent c = conjugate(p);
    CHECK(c.p[0] == doctest::Approx(4.0 / 3.0).epsilon(1e-14));
  }

  SUBCASE("involution on rational bumps") {
    const VarExponent p = make_rational_bump_exponent(box, 6, 2.0, 0.7);
    const VarExponent back = conjugate(conjugate(p));
    for (std::size_t i = 0; i < p.p.size(); ++i)
      CHECK(back.p[i] == doctest::Approx(p.p[i]).epsilon(1e-12));
    CHECK(back.p_inf == doctest::Approx(p.p_inf).epsilon(1e-12));
  }
}

TEST_CASE("exponent arithmetic") {
  const Box box(1, 1.0);
  const VarExponent p = make_rational_bump_exponent(box, 6, 2.0, 0.5);

  SUBCASE("rational bump shape") {
    CHECK(p.p_inf == 2.0);
    CHECK(p.p_minus() >= 2.0);
    CHECK(p.p_plus() <= 2.5);
    // Peak sits at the origin.
    const std::size_t mid = p.p.size() / 2;
    CHECK(p.p[mid] > p.p[0]);
  }

  SUBCASE("scaling") {
    const VarExponent s = scale_exponent(p, 2.0);
    for (std::size_t i = 0; i < p.p.size(); ++i) CHECK(s.p[i] == 2.0 * p.p[i]);
    CHECK(s.p_inf == 2.0 * p.p_inf);
    CHECK_THROWS_AS(scale_exponent(p, 0.0), std::invalid_argument);
  }

  SUBCASE("harmonic sums") {
    const VarExponent q = make_constant_exponent(box, 6, 4.0);
    const VarExponent r = harmonic_sum(p, q);
    for (std::size_t i = 0; i < r.p.size(); ++i)
      CHECK(1.0 / r.p[i] == doctest::Approx(1.0 / p.p[i] + 0.25).epsilon(1e-13));
    const std::vector<VarExponent> three{p, q, q};
    const VarExponent r3 = harmonic_sum(three);
    for (std::size_t i = 0; i < r3.p.size(); ++i)
      CHECK(1.0 / r3.p[i] == doctest::Approx(1.0 / p.p[i] + 0.5).epsilon(1e-13));
  }
}

TEST_CASE("log-continuity constants") {
  const Box box(1, 1.0);

  SUBCASE("constant exponents have zero constants") {
    const LogHolderConstants c = log_holder_constants(make_constant_exponent(box, 6, 2.0));
    CHECK(c.c0 == 0.0);
    CHECK(c.cinf == 0.0);
  }

  SUBCASE("rational bumps stay bounded under refinement") {
    std::vector<double> c0s;
    for (int L = 4; L <= 8; ++L)
      c0s.push_back(log_holder_constants(make_rational_bump_exponent(box, L, 2.0, 0.7)).c0);
    CHECK_FALSE(classify_stability(c0s).divergent);
    // Increments die out once the grid resolves the profile.
    CHECK(c0s.back() - c0s[c0s.size() - 2] < 0.1 * (1.0 + c0s.back()));
  }

  SUBCASE("jump exponents keep growing with refinement") {
    std::vector<double> c0s;
    const double jump = 1.0;
    for (int L = 4; L <= 9; ++L) {
      const VarExponent p{GridFunction::sample(box, L, [&](double x, double = 0.0) {
                            return x < 0.0 ? 2.0 : 2.0 + jump;
                          }),
                          2.0 + jump};
      c0s.push_back(log_holder_constants(p).c0);
    }
    // Every halving of the nearest cross-jump pair distance adds about
    // jump * log 2 to the constant: linear escape, no plateau.
    for (std::size_t i = 1; i < c0s.size(); ++i) {
      CHECK(c0s[i] > c0s[i - 1]);
      CHECK(c0s[i] - c0s[i - 1] >= 0.5 * jump * std::log(2.0));
    }
  }
}

TEST_CASE("norm identities") {
  const Box box(1, 1.0);
  const VarExponent p = make_rational_bump_exponent(box, 6, 2.0, 0.5);

  SUBCASE("power homogeneity") {
    for (std::uint64_t seed : {21u, 22u}) {
      const GridFunction f = random_signal(box, 6, seed);
      const BoundPair pair = homogeneity_check(f, p, 2.0);
      CHECK(pair.lhs == doctest::Approx(pair.rhs).epsilon(1e-6));
    }
  }

  SUBCASE("constant-exponent holder carries constant one") {
    const VarExponent p3 = make_constant_exponent(box, 6, 3.0);
    const VarExponent q15 = make_constant_exponent(box, 6, 1.5);
    for (std::uint64_t seed : {31u, 32u}) {
      const GridFunction f = random_signal(box, 6, seed);
      const GridFunction g = random_signal(box, 6, seed + 100);
      const BoundPair pair = gen_holder_check(f, g, p3, q15);
      CHECK(pair.lhs <= pair.rhs * (1.0 + 1e-6));
    }
  }

  SUBCASE("variable-exponent holder carries a two-factor constant") {
    // Pointwise Young splits the modular into two pieces, so the constant is
    // at most the number of factors rather than one.
    for (std::uint64_t seed : {33u, 34u}) {
      const GridFunction f = random_signal(box, 6, seed);
      const GridFunction g = random_signal(box, 6, seed + 100);
      const VarExponent q = make_constant_exponent(box, 6, 3.0);
      const BoundPair pair = gen_holder_check(f, g, p, q);
      CHECK(pair.lhs <= 2.0 * pair.rhs * (1.0 + 1e-6));
    }
  }

  SUBCASE("cauchy-schwarz instance is sharp on constants") {
    const GridFunction one(box, 6, 1.0);
    const VarExponent q = make_constant_exponent(box, 6, 2.0);
    const BoundPair pair = gen_holder_check(one, one, q, q);
    CHECK(pair.lhs == doctest::Approx(pair.rhs).epsilon(1e-6));
  }

  SUBCASE("three-factor holder") {
    const std::vector<GridFunction> fs{random_signal(box, 6, 41), random_signal(box, 6, 42),
                                       random_signal(box, 6, 43)};
    const std::vector<VarExponent> qs{make_constant_exponent(box, 6, 3.0),
                                      make_constant_exponent(box, 6, 3.0),
                                      make_rational_bump_exponent(box, 6, 3.0, 0.5)};
    const BoundPair pair = gen_holder_m_check(fs, qs);
    CHECK(pair.lhs <= 3.0 * pair.rhs * (1.0 + 1e-6));
    CHECK(pair.rhs > 0.0);
  }
}

TEST_CASE("variable-exponent weights") {
  const Box box(1, 1.0);

  SUBCASE("unit weight has constant one") {
    const VarExponent p = make_constant_exponent(box, 6, 2.0);
    const GridFunction one(box, 6, 1.0);
    CHECK(var_ap_constant(one, p, CubeFamily(box, 4, 3.0)) == doctest::Approx(1.0).epsilon(1e-6));
  }

  SUBCASE("mild powers are refinement stable") {
    std::vector<double> per_level;
    for (int L = 4; L <= 8; ++L) {
      const VarExponent p = make_rational_bump_exponent(box, L, 2.0, 0.5);
      per_level.push_back(
          var_ap_constant(power_weight(box, L, 0.25), p, CubeFamily(box, L, 3.0)));
    }
    CHECK_FALSE(classify_stability(per_level).divergent);
  }

  SUBCASE("strong negative powers diverge") {
    std::vector<double> per_level;
    for (int L = 4; L <= 9; ++L) {
      const VarExponent p = make_constant_exponent(box, L, 2.0);
      per_level.push_back(
          var_ap_constant(power_weight(box, L, -2.0), p, CubeFamily(box, L, 3.0)));
    }
    const StabilityVerdict v = classify_stability(per_level);
    CHECK(v.divergent);
  }

  SUBCASE("product membership sides") {
    const Box b(1, 1.0);
    const int L = 6;
    const std::vector<GridFunction> vs{power_weight(b, L, 0.25), power_weight(b, L, -0.25)};
    const std::vector<VarExponent> ps{make_constant_exponent(b, L, 4.0),
                                      make_rational_bump_exponent(b, L, 4.0, 0.5)};
    const ProductWeightSides sides = product_weight_sides(vs, ps, CubeFamily(b, 4, 3.0));
    CHECK(std::isfinite(sides.product));
    CHECK(sides.product > 0.0);
    REQUIRE(sides.factors.size() == 2);
    for (double c : sides.factors) {
      CHECK(std::isfinite(c));
      CHECK(c > 0.0);
    }
  }
}

TEST_CASE("truncation is monotone in the variable norm") {
  const Box box(1, 1.0);
  const VarExponent p = make_rational_bump_exponent(box, 6, 2.0, 0.5);
  const GridFunction f = random_signal(box, 6, 53);
  const double full = varlex_norm(f, p);
  double prev = 0.0;
  for (double frac : {0.25, 0.5, 0.75, 1.0}) {
    const double k = frac * f.max_abs();
    const GridFunction t = truncate(f, k);
    const double norm = varlex_norm(t, p);
    CHECK(norm >= prev * (1.0 - 1e-7));
    CHECK(norm <= full * (1.0 + 1e-7));
    prev = norm;
  }
  // Truncation at the peak is the identity, so the norms agree exactly.
  CHECK(varlex_norm(truncate(f, f.max_abs()), p) == full);
}
