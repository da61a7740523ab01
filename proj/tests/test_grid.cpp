#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <sstream>
#include <vector>

#include "mcz/grid.hpp"
#include "mcz/grid_io.hpp"
#include "mcz/rng.hpp"

using namespace mcz;

namespace {

// Reference average: explicit center-in-cube test and left-to-right sum,
// sharing nothing with cube_cells / dyadic_sum.
double direct_average_1d(const GridFunction& f, double lo, double hi) {
  double sum = 0.0;
  std::int64_t count = 0;
  for (std::int64_t i = 0; i < f.cells_per_axis(); ++i) {
    const double x = f.coord(0, i);
    if (x >= lo && x <= hi) {
      sum += f[static_cast<std::size_t>(i)];
      ++count;
    }
  }
  return sum / static_cast<double>(count);
}

GridFunction random_step(const Box& box, int levels, std::uint64_t seed, int pieces = 7) {
  Rng rng(seed);
  std::vector<double> cuts{-box.halfwidth, box.halfwidth};
  for (int i = 0; i + 2 < pieces; ++i) cuts.push_back(rng.uniform(-box.halfwidth, box.halfwidth));
  std::sort(cuts.begin(), cuts.end());
  std::vector<double> vals;
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) vals.push_back(rng.uniform(-3.0, 3.0));
  return GridFunction::sample(box, levels, [&](double x, double = 0.0) {
    for (std::size_t i = 0; i + 1 < cuts.size(); ++i)
      if (x <= cuts[i + 1]) return vals[i];
    return vals.back();
  });
}

}  // namespace

TEST_CASE("box and cube validation") {
  CHECK_THROWS_AS(Box(3, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(Box(1, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(Box(1, -2.0), std::invalid_argument);

  const Box box(1, 2.0);
  CHECK(box.side() == 4.0);
  CHECK(box.volume() == 4.0);
  CHECK(Box(2, 2.0).volume() == 16.0);

  CHECK_THROWS_AS(DyadicCube(box, -1, 0), std::invalid_argument);
  CHECK_THROWS_AS(DyadicCube(box, 2, 4), std::invalid_argument);
  CHECK_THROWS_AS(DyadicCube(box, 2, -1), std::invalid_argument);

  const DyadicCube q(box, 2, 3);
  CHECK(q.side() == doctest::Approx(1.0));
  CHECK(q.corner(0) == doctest::Approx(1.0));
  CHECK(q.center(0) == doctest::Approx(1.5));
  CHECK(q.measure() == doctest::Approx(1.0));

  const DyadicCube q2(Box(2, 1.0), 1, 1, 0);
  CHECK(q2.measure() == doctest::Approx(1.0));
  CHECK(q2.corner(0) == doctest::Approx(0.0));
  CHECK(q2.corner(1) == doctest::Approx(-1.0));
}

TEST_CASE("dilation clips to the box") {
  const Box box(1, 1.0);
  // Center cube away from the boundary: 3Q keeps full measure.
  const DyadicCube mid(box, 3, 4);  // [0, 0.25]
  const Cube t3 = dilate_cube(mid, 3.0);
  CHECK(t3.measure() == doctest::Approx(0.75));
  CHECK(t3.lo[0] == doctest::Approx(-0.25));
  CHECK(t3.hi[0] == doctest::Approx(0.5));

  // Corner cube: half of 2Q falls outside and is clipped.
  const DyadicCube corner(box, 1, 0);  // [-1, 0]
  const Cube t2 = dilate_cube(corner, 2.0);
  CHECK(t2.lo[0] == doctest::Approx(-1.0));
  CHECK(t2.hi[0] == doctest::Approx(0.5));
  CHECK(t2.measure() < 2.0 * corner.measure());

  CHECK_THROWS_AS(dilate_cube(mid, 0.5), std::invalid_argument);
}

TEST_CASE("family enumeration counts") {
  CHECK(enumerate_cubes(Box(1, 1.0), 0).dyadic_count() == 1);
  CHECK(enumerate_cubes(Box(1, 1.0), 3).dyadic_count() == 15);
  CHECK(enumerate_cubes(Box(2, 1.0), 2).dyadic_count() == 21);
  CHECK(enumerate_cubes(Box(1, 1.0), 3).dyadic_cubes().size() == 15);
  CHECK(enumerate_cubes(Box(2, 1.0), 2).dyadic_cubes().size() == 21);

  int plain = 0, dilated = 0;
  enumerate_cubes(Box(1, 1.0), 3, 3.0).for_each([&](const DyadicCube&, bool d) {
    (d ? dilated : plain)++;
  });
  CHECK(plain == 15);
  CHECK(dilated == 15);
  CHECK_THROWS_AS(CubeFamily(Box(1, 1.0), 2, 0.5), std::invalid_argument);
}

TEST_CASE("fixed-level cubes partition the box") {
  const Box box(2, 1.5);
  const GridFunction f(box, 4, 1.0);
  const int v = 2;
  double total_measure = 0.0;
  std::int64_t total_cells = 0;
  for (std::int64_t k0 = 0; k0 < 4; ++k0)
    for (std::int64_t k1 = 0; k1 < 4; ++k1) {
      const DyadicCube q(box, v, k0, k1);
      total_measure += q.measure();
      total_cells += cube_cell_count(f, q);
    }
  CHECK(total_measure == doctest::Approx(box.volume()));
  CHECK(total_cells == static_cast<std::int64_t>(f.size()));
}

TEST_CASE("cube averages against direct summation") {
  const Box box(1, 2.0);

  SUBCASE("constant is reproduced exactly") {
    const GridFunction f(box, 6, 3.25);
    CHECK(cube_average(f, DyadicCube(box, 3, 5)) == 3.25);
    Cube c;
    c.box = box;
    c.lo[0] = -1.3;
    c.hi[0] = 0.7;
    CHECK(cube_average(f, c) == 3.25);
  }

  SUBCASE("odd function averages to zero on symmetric cubes") {
    const GridFunction f = GridFunction::sample(box, 6, [](double x, double = 0.0) { return x; });
    CHECK(cube_average(f, DyadicCube(box, 0, 0)) == doctest::Approx(0.0).epsilon(1e-15));
  }

  SUBCASE("random steps match the reference loop") {
    for (std::uint64_t seed : {11u, 12u, 13u, 14u}) {
      const GridFunction f = random_step(box, 8, seed);
      for (int v : {0, 1, 3, 5}) {
        const std::int64_t n = std::int64_t{1} << v;
        for (std::int64_t k = 0; k < n; k += (v == 0 ? 1 : n / 2 + 1)) {
          const DyadicCube q(box, v, k);
          const double want = direct_average_1d(f, q.corner(0), q.corner(0) + q.side());
          CHECK(cube_average(f, q) == doctest::Approx(want).epsilon(1e-12));
        }
      }
      // Non-aligned cube with unambiguous boundaries.
      Cube c;
      c.box = box;
      c.lo[0] = -1.234567;
      c.hi[0] = 0.876543;
      CHECK(cube_average(f, c) == doctest::Approx(direct_average_1d(f, c.lo[0], c.hi[0])).epsilon(1e-12));
    }
  }

  SUBCASE("2-d average matches the reference loop") {
    const Box sq(2, 1.0);
    const GridFunction f = GridFunction::sample(sq, 5, [](double x, double y = 0.0) {
      return std::sin(3.0 * x) + 0.5 * std::cos(2.0 * y) + x * y;
    });
    const DyadicCube q(sq, 2, 1, 2);
    double sum = 0.0;
    std::int64_t count = 0;
    for (std::int64_t i = 0; i < f.cells_per_axis(); ++i)
      for (std::int64_t j = 0; j < f.cells_per_axis(); ++j) {
        const double x = f.coord(0, i), y = f.coord(1, j);
        if (x >= q.corner(0) && x <= q.corner(0) + q.side() && y >= q.corner(1) &&
            y <= q.corner(1) + q.side()) {
          sum += f.at(i, j);
          ++count;
        }
      }
    CHECK(cube_average(f, q) == doctest::Approx(sum / static_cast<double>(count)).epsilon(1e-12));
  }
}

TEST_CASE("dyadic sums nest exactly") {
  const Box box(1, 1.0);
  const GridFunction f = random_step(box, 9, 77, 13);
  for (int v : {0, 2, 4}) {
    const std::int64_t n = std::int64_t{1} << v;
    for (std::int64_t k = 0; k < n; ++k) {
      const DyadicCube q(box, v, k);
      const DyadicCube c0(box, v + 1, 2 * k);
      const DyadicCube c1(box, v + 1, 2 * k + 1);
      const auto id = [](double t) { return t; };
      // The fixed association tree makes this an identity of doubles, not an
      // approximation.
      CHECK(cube_transform_sum(f, q, id) ==
            cube_transform_sum(f, c0, id) + cube_transform_sum(f, c1, id));
    }
  }

  const Box sq(2, 1.0);
  const GridFunction g = GridFunction::sample(sq, 6, [](double x, double y = 0.0) {
    return std::exp(x) * std::sin(5.0 * y);
  });
  const DyadicCube q(sq, 1, 0, 1);
  const auto id = [](double t) { return t; };
  double child_sum = 0.0;
  for (int a = 0; a < 2; ++a)
    for (int b = 0; b < 2; ++b)
      child_sum += cube_transform_sum(g, DyadicCube(sq, 2, 2 * q.kappa[0] + a, 2 * q.kappa[1] + b), id);
  CHECK(cube_transform_sum(g, q, id) == doctest::Approx(child_sum).epsilon(1e-15));
}

TEST_CASE("integrals and discrete measure") {
  const Box box(1, 1.0);
  const GridFunction f(box, 4, 2.0);
  const DyadicCube q(box, 2, 1);
  CHECK(cube_discrete_measure(f, q) == doctest::Approx(q.measure()));
  CHECK(cube_integral(f, q) == doctest::Approx(2.0 * q.measure()));
  CHECK(box_integral(f) == doctest::Approx(4.0));
  CHECK(cube_cell_count(f, q) == 4);

  const GridFunction g = GridFunction::sample(box, 10, [](double x, double = 0.0) {
    return x * x;
  });
  CHECK(box_integral(g) == doctest::Approx(2.0 / 3.0).epsilon(1e-5));
}

TEST_CASE("grid finer than the data is rejected") {
  const Box box(1, 1.0);
  const GridFunction f(box, 2, 1.0);
  CHECK_THROWS_AS(cube_cells(f, DyadicCube(box, 3, 0)), resolution_error);
  CHECK_NOTHROW(cube_cells(f, DyadicCube(box, 2, 3)));
}

TEST_CASE("grid function arithmetic") {
  const Box box(1, 1.0);
  const GridFunction f = random_step(box, 6, 5);
  const GridFunction g = random_step(box, 6, 6);

  SUBCASE("pointwise operations match sample loops") {
    const GridFunction sum = f + g;
    const GridFunction prod = f * g;
    const GridFunction scaled = 2.5 * f;
    for (std::size_t i = 0; i < f.size(); ++i) {
      CHECK(sum[i] == f[i] + g[i]);
      CHECK(prod[i] == f[i] * g[i]);
      CHECK(scaled[i] == 2.5 * f[i]);
    }
  }

  SUBCASE("abs and pow") {
    const GridFunction a = f.abs();
    for (std::size_t i = 0; i < f.size(); ++i) CHECK(a[i] == std::fabs(f[i]));
    const GridFunction p = a.pow(0.5);
    for (std::size_t i = 0; i < f.size(); ++i)
      CHECK(p[i] == doctest::Approx(std::sqrt(a[i])).epsilon(1e-15));
    // Roundtrip through a fractional power.
    const GridFunction back = p.pow(2.0);
    for (std::size_t i = 0; i < f.size(); ++i)
      CHECK(back[i] == doctest::Approx(a[i]).epsilon(1e-12));
    CHECK_THROWS_AS(f.pow(0.5), std::invalid_argument);  // f takes negative values
    CHECK_NOTHROW(f.pow(2.0));
  }

  SUBCASE("extrema") {
    double lo = f[0], hi = f[0], amax = std::fabs(f[0]);
    for (std::size_t i = 0; i < f.size(); ++i) {
      lo = std::min(lo, f[i]);
      hi = std::max(hi, f[i]);
      amax = std::max(amax, std::fabs(f[i]));
    }
    CHECK(f.min_value() == lo);
    CHECK(f.max_value() == hi);
    CHECK(f.max_abs() == amax);
  }

  SUBCASE("incompatible shapes are rejected") {
    GridFunction h(box, 5, 0.0);
    CHECK_FALSE(h.compatible_with(f));
    CHECK_THROWS_AS(h += f, std::invalid_argument);
  }
}

TEST_CASE("serialization round trips") {
  const Box box(1, 1.5);
  GridFunction f = random_step(box, 7, 99);
  f[3] = 1e-321;  // subnormal survives the trip
  f[4] = -0.0;

  for (GridEncoding enc : {GridEncoding::csv, GridEncoding::raw}) {
    std::stringstream ss;
    write_grid(f, ss, enc);
    const GridFunction back = read_grid(ss);
    REQUIRE(back.compatible_with(f));
    for (std::size_t i = 0; i < f.size(); ++i) CHECK(back[i] == f[i]);
  }

  const Box sq(2, 1.0);
  const GridFunction g = GridFunction::sample(sq, 3, [](double x, double y = 0.0) { return x - y; });
  std::stringstream ss;
  write_grid(g, ss, GridEncoding::raw);
  const GridFunction back = read_grid(ss);
  REQUIRE(back.dim() == 2);
  for (std::size_t i = 0; i < g.size(); ++i) CHECK(back[i] == g[i]);

  std::stringstream junk("not a grid header\n");
  CHECK_THROWS(read_grid(junk));
}

TEST_CASE("cube_containing returns the enclosing dyadic cube") {
  const Box box(1, 2.0);
  const GridFunction f(box, 6, 0.0);
  for (std::int64_t i : {std::int64_t{0}, std::int64_t{17}, std::int64_t{63}}) {
    for (int v : {0, 2, 5}) {
      const DyadicCube q = cube_containing(box, v, 6, i);
      const double x = f.coord(0, i);
      CHECK(q.level == v);
      CHECK(x >= q.corner(0));
      CHECK(x <= q.corner(0) + q.side());
    }
  }

  const Box sq(2, 1.0);
  const DyadicCube q = cube_containing(sq, 2, 4, 9, 3);
  const GridFunction g(sq, 4, 0.0);
  CHECK(g.coord(0, 9) >= q.corner(0));
  CHECK(g.coord(0, 9) <= q.corner(0) + q.side());
  CHECK(g.coord(1, 3) >= q.corner(1));
  CHECK(g.coord(1, 3) <= q.corner(1) + q.side());
}
