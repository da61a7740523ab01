#include "mcz/weights.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "mcz/maximal.hpp"

namespace mcz {

namespace {

void require_positive(const GridFunction& w, const char* who) {
  if (w.min_value() <= 0.0)
    throw std::invalid_argument(std::string(who) + ": weight must be strictly positive");
}

template <class CubeT>
double mean_of(const GridFunction& f, const CubeT& q) {
  return cube_average(f, q);
}

template <class CubeT>
double mean_pow(const GridFunction& f, const CubeT& q, double e) {
  const auto cells = cube_cells(f, q);
  const std::int64_t count = f.dim() == 1 ? cells[0].count() : cells[0].count() * cells[1].count();
  if (count == 0) return 0.0;
  return cube_transform_sum(f, q, [e](double v) { return std::pow(v, e); }) /
         static_cast<double>(count);
}

template <class CubeT>
double min_on(const GridFunction& f, const CubeT& q) {
  double m = HUGE_VAL;
  cube_transform_sum(f, q, [&m](double v) {
    m = std::min(m, v);
    return 0.0;
  });
  return m;
}

}  // namespace

double ap_constant(const GridFunction& w, double p, const CubeFamily& cubes) {
  if (!(p > 1.0)) throw std::invalid_argument("ap_constant: p must exceed 1 (use a1_constant)");
  require_positive(w, "ap_constant");
  const double pc = p / (p - 1.0);
  const FamilyValues vals = sweep_family(cubes, [&](const DyadicCube& q, bool dil) {
    if (dil) {
      const Cube c = dilate_cube(q, cubes.dilation);
      return mean_of(w, c) * std::pow(mean_pow(w, c, 1.0 - pc), p - 1.0);
    }
    return mean_of(w, q) * std::pow(mean_pow(w, q, 1.0 - pc), p - 1.0);
  });
  return family_max(vals);
}

double a1_constant(const GridFunction& w, const CubeFamily& cubes) {
  require_positive(w, "a1_constant");
  const GridFunction mw = hl_maximal(w, cubes);
  double best = 0.0;
  for (std::size_t i = 0; i < w.size(); ++i) best = std::max(best, mw[i] / w[i]);
  return best;
}

double WeightVector::p_total() const {
  if (w.empty() || w.size() != p.size())
    throw std::invalid_argument("WeightVector: mismatched slots");
  double inv = 0.0;
  for (double pj : p) {
    if (!(pj >= 1.0)) throw std::invalid_argument("WeightVector: exponents must be >= 1");
    inv += 1.0 / pj;
  }
  return 1.0 / inv;
}

GridFunction WeightVector::nu() const {
  const double pt = p_total();
  GridFunction out(w.front().box(), w.front().levels(), 1.0);
  for (std::size_t j = 0; j < w.size(); ++j) {
    if (!w[j].compatible_with(w.front()))
      throw std::invalid_argument("WeightVector: grid mismatch");
    require_positive(w[j], "WeightVector::nu");
    const double e = pt / p[j];
    for (std::size_t i = 0; i < out.size(); ++i) out[i] *= std::pow(w[j][i], e);
  }
  return out;
}

double multi_ap_constant(const WeightVector& wv, const CubeFamily& cubes) {
  const double pt = wv.p_total();
  const GridFunction nu = wv.nu();
  const FamilyValues vals = sweep_family(cubes, [&](const DyadicCube& q, bool dil) {
    auto eval = [&](const auto& cube) {
      double prod = std::pow(mean_of(nu, cube), 1.0 / pt);
      for (std::size_t j = 0; j < wv.arity(); ++j) {
        const double pj = wv.p[j];
        if (pj > 1.0) {
          const double pjc = pj / (pj - 1.0);
          prod *= std::pow(mean_pow(wv.w[j], cube, 1.0 - pjc), 1.0 / pjc);
        } else {
          prod /= min_on(wv.w[j], cube);
        }
      }
      return prod;
    };
    return dil ? eval(dilate_cube(q, cubes.dilation)) : eval(q);
  });
  return family_max(vals);
}

MultiApSides multi_ap_sides(const WeightVector& wv, const CubeFamily& cubes) {
  MultiApSides out;
  out.joint = multi_ap_constant(wv, cubes);
  const double m = static_cast<double>(wv.arity());
  for (std::size_t j = 0; j < wv.arity(); ++j) {
    const double pj = wv.p[j];
    if (pj > 1.0) {
      const double pjc = pj / (pj - 1.0);
      const GridFunction transformed = wv.w[j].pow(1.0 - pjc);
      out.component.push_back(ap_constant(transformed, m * pjc, cubes));
    } else {
      out.component.push_back(a1_constant(wv.w[j].pow(1.0 / m), cubes));
    }
  }
  const double mp = m * wv.p_total();
  const GridFunction nu = wv.nu();
  out.nu = mp > 1.0 ? ap_constant(nu, mp, cubes) : a1_constant(nu, cubes);
  return out;
}

GridFunction power_weight(const Box& box, int levels, double a) {
  GridFunction g(box, levels);
  const double floor_r = 0.5 * g.cell_size();
  const std::int64_t n = g.cells_per_axis();
  if (box.dim == 1) {
    for (std::int64_t i = 0; i < n; ++i) {
      const double r = std::max(std::fabs(g.coord(0, i)), floor_r);
      g[static_cast<std::size_t>(i)] = std::pow(r, a);
    }
  } else {
    for (std::int64_t i = 0; i < n; ++i)
      for (std::int64_t j = 0; j < n; ++j) {
        const double r = std::max(std::hypot(g.coord(0, i), g.coord(1, j)), floor_r);
        g.at(i, j) = std::pow(r, a);
      }
  }
  return g;
}

StabilityVerdict classify_stability(std::span<const double> per_level) {
  StabilityVerdict v;
  if (per_level.size() < 2) return v;
  const double first = per_level.front();
  const double last = per_level.back();
  v.growth = first > 0.0 ? last / first : HUGE_VAL;
  bool monotone = true;
  for (std::size_t i = 1; i < per_level.size(); ++i)
    if (per_level[i] < per_level[i - 1] * 0.999) monotone = false;
  v.divergent = monotone && v.growth > 10.0;
  return v;
}

}  // namespace mcz
