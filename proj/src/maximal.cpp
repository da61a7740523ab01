#include "mcz/maximal.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <vector>

namespace mcz {

namespace {

double abs_average(const GridFunction& f, const DyadicCube& q) {
  return cube_transform_sum(f, q, [](double v) { return std::fabs(v); }) /
         static_cast<double>(cube_cell_count(f, q));
}

double abs_average(const GridFunction& f, const Cube& c) {
  const auto r = cube_cells(f, c);
  const std::int64_t count = f.dim() == 1 ? r[0].count() : r[0].count() * r[1].count();
  if (count == 0) return 0.0;
  return cube_transform_sum(f, c, [](double v) { return std::fabs(v); }) /
         static_cast<double>(count);
}

double power_average(const GridFunction& f, const DyadicCube& q, double r) {
  const double mean = cube_transform_sum(f, q, [r](double v) {
                        return std::pow(std::fabs(v), r);
                      }) /
                      static_cast<double>(cube_cell_count(f, q));
  return std::pow(mean, 1.0 / r);
}

double power_average(const GridFunction& f, const Cube& c, double r) {
  const auto cells = cube_cells(f, c);
  const std::int64_t count = f.dim() == 1 ? cells[0].count() : cells[0].count() * cells[1].count();
  if (count == 0) return 0.0;
  const double mean =
      cube_transform_sum(f, c, [r](double v) { return std::pow(std::fabs(v), r); }) /
      static_cast<double>(count);
  return std::pow(mean, 1.0 / r);
}

double sharp_oscillation(const GridFunction& f, const DyadicCube& q) {
  const double mean = cube_average(f, q);
  return cube_transform_sum(f, q, [mean](double v) { return std::fabs(v - mean); }) /
         static_cast<double>(cube_cell_count(f, q));
}

double sharp_oscillation(const GridFunction& f, const Cube& c) {
  const auto cells = cube_cells(f, c);
  const std::int64_t count = f.dim() == 1 ? cells[0].count() : cells[0].count() * cells[1].count();
  if (count == 0) return 0.0;
  const double mean = cube_average(f, c);
  return cube_transform_sum(f, c, [mean](double v) { return std::fabs(v - mean); }) /
         static_cast<double>(count);
}

void require_family(std::span<const GridFunction> fs) {
  if (fs.empty()) throw std::invalid_argument("multilinear maximal: no functions");
  for (const auto& f : fs)
    if (!f.compatible_with(fs.front()))
      throw std::invalid_argument("multilinear maximal: grid mismatch");
}

}  // namespace

GridFunction hl_maximal(const GridFunction& f, const CubeFamily& cubes) {
  const FamilyValues vals = sweep_family(cubes, [&](const DyadicCube& q, bool dil) {
    return dil ? abs_average(f, dilate_cube(q, cubes.dilation)) : abs_average(f, q);
  });
  return sup_over_family(f.box(), f.levels(), vals);
}

GridFunction m_delta(const GridFunction& f, double delta, const CubeFamily& cubes) {
  if (!(delta > 0.0)) throw std::invalid_argument("m_delta: delta must be positive");
  const FamilyValues vals = sweep_family(cubes, [&](const DyadicCube& q, bool dil) {
    return dil ? power_average(f, dilate_cube(q, cubes.dilation), delta)
               : power_average(f, q, delta);
  });
  return sup_over_family(f.box(), f.levels(), vals);
}

GridFunction sharp_maximal(const GridFunction& f, const CubeFamily& cubes) {
  const FamilyValues vals = sweep_family(cubes, [&](const DyadicCube& q, bool dil) {
    return dil ? sharp_oscillation(f, dilate_cube(q, cubes.dilation)) : sharp_oscillation(f, q);
  });
  return sup_over_family(f.box(), f.levels(), vals);
}

GridFunction sharp_maximal_delta(const GridFunction& f, double delta, const CubeFamily& cubes) {
  if (!(delta > 0.0)) throw std::invalid_argument("sharp_maximal_delta: delta must be positive");
  GridFunction powered = f.abs().pow(delta);
  GridFunction sharp = sharp_maximal(powered, cubes);
  return sharp.pow(1.0 / delta);
}

namespace {

template <class PerCube>
GridFunction multilinear_sup(std::span<const GridFunction> fs, const CubeFamily& cubes,
                             PerCube&& per_cube) {
  require_family(fs);
  std::vector<FamilyValues> parts;
  parts.reserve(fs.size());
  for (std::size_t j = 0; j < fs.size(); ++j)
    parts.push_back(sweep_family(cubes, [&, j](const DyadicCube& q, bool dil) {
      return per_cube(fs[j], q, dil, j);
    }));
  std::vector<const FamilyValues*> ptrs;
  for (const auto& p : parts) ptrs.push_back(&p);
  return sup_over_family(fs.front().box(), fs.front().levels(), ptrs);
}

}  // namespace

GridFunction multilinear_m(std::span<const GridFunction> fs, const CubeFamily& cubes) {
  return multilinear_sup(fs, cubes,
                         [&](const GridFunction& f, const DyadicCube& q, bool dil, std::size_t) {
                           return dil ? abs_average(f, dilate_cube(q, cubes.dilation))
                                      : abs_average(f, q);
                         });
}

GridFunction multilinear_m_r(std::span<const GridFunction> fs, double r,
                             const CubeFamily& cubes) {
  if (!(r > 1.0)) throw std::invalid_argument("multilinear_m_r: r must exceed 1");
  return multilinear_sup(fs, cubes,
                         [&](const GridFunction& f, const DyadicCube& q, bool dil, std::size_t) {
                           return dil ? power_average(f, dilate_cube(q, cubes.dilation), r)
                                      : power_average(f, q, r);
                         });
}

GridFunction m_i_loglog(std::span<const GridFunction> fs, std::size_t i, const CubeFamily& cubes,
                        double tol) {
  if (i >= fs.size()) throw std::invalid_argument("m_i_loglog: slot index out of range");
  return multilinear_sup(
      fs, cubes, [&](const GridFunction& f, const DyadicCube& q, bool dil, std::size_t j) {
        if (j == i)
          return dil ? orlicz_average(f, dilate_cube(q, cubes.dilation), 1, tol)
                     : orlicz_average(f, q, 1, tol);
        return dil ? abs_average(f, dilate_cube(q, cubes.dilation)) : abs_average(f, q);
      });
}

GridFunction m_loglog_multi(std::span<const GridFunction> fs, const CubeFamily& cubes,
                            double tol) {
  return multilinear_sup(fs, cubes,
                         [&](const GridFunction& f, const DyadicCube& q, bool dil, std::size_t) {
                           return dil ? orlicz_average(f, dilate_cube(q, cubes.dilation), 1, tol)
                                      : orlicz_average(f, q, 1, tol);
                         });
}

double weak_lq_norm(const GridFunction& f, double q, const DyadicCube& Q) {
  if (!(q > 0.0)) throw std::invalid_argument("weak_lq_norm: q must be positive");
  const auto cells = cube_cells(f, Q);
  std::vector<double> vals;
  vals.reserve(static_cast<std::size_t>(cube_cell_count(f, Q)));
  if (f.dim() == 1) {
    for (std::int64_t i = cells[0].lo; i < cells[0].hi; ++i)
      vals.push_back(std::fabs(f[static_cast<std::size_t>(i)]));
  } else {
    for (std::int64_t i = cells[0].lo; i < cells[0].hi; ++i)
      for (std::int64_t j = cells[1].lo; j < cells[1].hi; ++j)
        vals.push_back(std::fabs(f.at(i, j)));
  }
  std::sort(vals.begin(), vals.end(), std::greater<>());
  const double cell = f.cell_measure();
  double best = 0.0;
  for (std::size_t k = 0; k < vals.size(); ++k) {
    if (vals[k] == 0.0) break;
    best = std::max(best, vals[k] * std::pow(cell * static_cast<double>(k + 1), 1.0 / q));
  }
  return best;
}

KolmogorovResult kolmogorov_check(const GridFunction& f, double p, double q,
                                  const DyadicCube& Q) {
  if (!(p > 0.0 && q > p))
    throw std::invalid_argument("kolmogorov_check: requires 0 < p < q");
  KolmogorovResult res;
  res.constant = std::pow(q / (q - p), 1.0 / p);
  const double measure = cube_discrete_measure(f, Q);
  const double lp = std::pow(
      cube_transform_sum(f, Q, [p](double v) { return std::pow(std::fabs(v), p); }) *
          f.cell_measure(),
      1.0 / p);
  res.lhs = std::pow(measure, -1.0 / p) * lp;
  res.rhs = res.constant * std::pow(measure, -1.0 / q) * weak_lq_norm(f, q, Q);
  return res;
}

double weak_phi_sup(const GridFunction& g, const GridFunction& w, double p) {
  if (!g.compatible_with(w)) throw std::invalid_argument("weak_phi_sup: grid mismatch");
  std::vector<std::size_t> order(g.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(),
            [&](std::size_t a, std::size_t b) { return std::fabs(g[a]) > std::fabs(g[b]); });
  const double cell = g.cell_measure();
  double wsum = 0.0;
  double best = 0.0;
  for (std::size_t k = 0; k < order.size(); ++k) {
    const double level = std::fabs(g[order[k]]);
    wsum += w[order[k]] * cell;
    if (level == 0.0) break;
    best = std::max(best, std::pow(level, p) * wsum);
  }
  return best;
}

BoundPair fefferman_stein_check(const GridFunction& f, double delta, double p,
                                const GridFunction& w, const CubeFamily& cubes) {
  if (!(p > 0.0)) throw std::invalid_argument("fefferman_stein_check: p must be positive");
  const GridFunction md = m_delta(f, delta, cubes);
  const GridFunction ms = sharp_maximal_delta(f, delta, cubes);
  return BoundPair{box_integral(md.pow(p) * w), box_integral(ms.pow(p) * w)};
}

BoundPair fs_weak_check(const GridFunction& f, double delta, double p, const GridFunction& w,
                        const CubeFamily& cubes) {
  if (!(p > 0.0)) throw std::invalid_argument("fs_weak_check: p must be positive");
  const GridFunction md = m_delta(f, delta, cubes);
  const GridFunction ms = sharp_maximal_delta(f, delta, cubes);
  return BoundPair{weak_phi_sup(md, w, p), weak_phi_sup(ms, w, p)};
}

}  // namespace mcz
