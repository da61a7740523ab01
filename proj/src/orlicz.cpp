#include "mcz/orlicz.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace mcz {

double phi(double t) {
  if (t < 0.0) throw std::invalid_argument("phi: negative argument");
  if (t == 0.0) return 0.0;
  return t * (1.0 + std::max(std::log(t), 0.0));
}

double phi_iter(double t, int m) {
  if (m < 1) throw std::invalid_argument("phi_iter: m must be >= 1");
  double v = t;
  for (int i = 0; i < m; ++i) v = phi(v);
  return v;
}

namespace {

// Shared bisection core over an arbitrary cell visitor.
template <class SumAbs, class SumPhi, class MaxAbs>
double orlicz_core(std::int64_t count, SumAbs&& sum_abs, MaxAbs&& max_abs, SumPhi&& sum_phi,
                   double tol) {
  if (count <= 0) throw std::invalid_argument("orlicz_average: empty cube");
  if (!(tol > 0.0)) throw std::invalid_argument("orlicz_average: tol must be positive");
  const double hi0 = max_abs();
  if (hi0 == 0.0) return 0.0;
  double lo = sum_abs() / static_cast<double>(count);
  double hi = hi0;
  if (lo == hi) return lo;  // |f| constant on the cube

  auto modular = [&](double lambda) { return sum_phi(lambda) / static_cast<double>(count); };
  // Guard the bracket; with phi convex and phi(1) = 1 it holds by Jensen,
  // widen geometrically if floating point disagrees at the edges.
  int guard = 0;
  while (modular(lo) < 1.0 && guard++ < 64) lo *= 0.5;
  guard = 0;
  while (modular(hi) > 1.0 && guard++ < 64) hi *= 2.0;

  while (hi - lo > tol * lo) {
    const double mid = 0.5 * (lo + hi);
    // Subnormal brackets make tol * lo underflow to zero; once the midpoint
    // rounds onto an endpoint no further refinement is representable.
    if (mid <= lo || mid >= hi) break;
    if (modular(mid) > 1.0)
      lo = mid;
    else
      hi = mid;
  }
  return 0.5 * (lo + hi);
}

}  // namespace

double orlicz_average(const GridFunction& f, const DyadicCube& q, int m, double tol) {
  const std::int64_t count = cube_cell_count(f, q);
  return orlicz_core(
      count, [&] { return cube_transform_sum(f, q, [](double v) { return std::fabs(v); }); },
      [&] {
        double mx = 0.0;
        cube_transform_sum(f, q, [&](double v) {
          mx = std::max(mx, std::fabs(v));
          return 0.0;
        });
        return mx;
      },
      [&](double lambda) {
        return cube_transform_sum(f, q,
                                  [&](double v) { return phi_iter(std::fabs(v) / lambda, m); });
      },
      tol);
}

double orlicz_average(const GridFunction& f, const Cube& c, int m, double tol) {
  const auto r = cube_cells(f, c);
  const std::int64_t count = f.dim() == 1 ? r[0].count() : r[0].count() * r[1].count();
  if (count == 0) return 0.0;
  return orlicz_core(
      count, [&] { return cube_transform_sum(f, c, [](double v) { return std::fabs(v); }); },
      [&] {
        double mx = 0.0;
        cube_transform_sum(f, c, [&](double v) {
          mx = std::max(mx, std::fabs(v));
          return 0.0;
        });
        return mx;
      },
      [&](double lambda) {
        return cube_transform_sum(f, c,
                                  [&](double v) { return phi_iter(std::fabs(v) / lambda, m); });
      },
      tol);
}

GridFunction m_loglog(const GridFunction& f, const CubeFamily& cubes, double tol) {
  const FamilyValues vals = sweep_family(cubes, [&](const DyadicCube& q, bool dil) {
    return dil ? orlicz_average(f, dilate_cube(q, cubes.dilation), 1, tol)
               : orlicz_average(f, q, 1, tol);
  });
  return sup_over_family(f.box(), f.levels(), vals);
}

namespace {

double oscillation(const GridFunction& b, const DyadicCube& q) {
  const double mean = cube_average(b, q);
  const std::int64_t count = cube_cell_count(b, q);
  return cube_transform_sum(b, q, [&](double v) { return std::fabs(v - mean); }) /
         static_cast<double>(count);
}

double oscillation(const GridFunction& b, const Cube& c) {
  const auto r = cube_cells(b, c);
  const std::int64_t count = b.dim() == 1 ? r[0].count() : r[0].count() * r[1].count();
  if (count == 0) return 0.0;
  const double mean = cube_average(b, c);
  return cube_transform_sum(b, c, [&](double v) { return std::fabs(v - mean); }) /
         static_cast<double>(count);
}

}  // namespace

double bmo_norm(const GridFunction& b, const CubeFamily& cubes) {
  const FamilyValues vals = sweep_family(cubes, [&](const DyadicCube& q, bool dil) {
    return dil ? oscillation(b, dilate_cube(q, cubes.dilation)) : oscillation(b, q);
  });
  return family_max(vals);
}

BoundPair bmo_holder_check(const GridFunction& b, const GridFunction& f, const DyadicCube& q,
                           double bmo, double tol) {
  if (!b.compatible_with(f)) throw std::invalid_argument("bmo_holder_check: grid mismatch");
  const double mean_b = cube_average(b, q);
  const std::int64_t count = cube_cell_count(b, q);
  double lhs = 0.0;
  {
    // avg_Q |b - b_Q| |f| needs both grids cell by cell; walk the index box.
    const auto r = cube_cells(b, q);
    if (b.dim() == 1) {
      for (std::int64_t i = r[0].lo; i < r[0].hi; ++i)
        lhs += std::fabs(b[static_cast<std::size_t>(i)] - mean_b) *
               std::fabs(f[static_cast<std::size_t>(i)]);
    } else {
      for (std::int64_t i = r[0].lo; i < r[0].hi; ++i)
        for (std::int64_t j = r[1].lo; j < r[1].hi; ++j)
          lhs += std::fabs(b.at(i, j) - mean_b) * std::fabs(f.at(i, j));
    }
    lhs /= static_cast<double>(count);
  }
  return BoundPair{lhs, bmo * orlicz_average(f, q, 1, tol)};
}

BoundPair bmo_dilate_bound_check(const GridFunction& b, const DyadicCube& q, double t,
                                 double bmo) {
  const Cube big = dilate_cube(q, t);
  const double lhs = std::fabs(cube_average(b, q) - cube_average(b, big));
  return BoundPair{lhs, std::log(t + 1.0) * bmo};
}

BoundPair bmo_dilated_oscillation_check(const GridFunction& b, const DyadicCube& q, double t,
                                        double r, double bmo) {
  if (!(r >= 1.0)) throw std::invalid_argument("bmo_dilated_oscillation_check: r must be >= 1");
  const Cube big = dilate_cube(q, t);
  const double mean_big = cube_average(b, big);
  const std::int64_t count = cube_cell_count(b, q);
  const double power_mean =
      cube_transform_sum(b, q,
                         [&](double v) { return std::pow(std::fabs(v - mean_big), r); }) /
      static_cast<double>(count);
  return BoundPair{std::pow(power_mean, 1.0 / r), (1.0 + std::log(t)) * bmo};
}

GridFunction truncate(const GridFunction& b, double k) {
  if (!(k >= 0.0)) throw std::invalid_argument("truncate: k must be >= 0");
  return b.map([k](double v) { return std::clamp(v, -k, k); });
}

}  // namespace mcz
