#include "mcz/varlex.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "mcz/parallel.hpp"

namespace mcz {

VarExponent make_constant_exponent(const Box& box, int levels, double value) {
  if (!(value >= 1.0)) throw std::invalid_argument("make_constant_exponent: value must be >= 1");
  return VarExponent{GridFunction(box, levels, value), value};
}

VarExponent make_rational_bump_exponent(const Box& box, int levels, double base, double amp) {
  if (!(base >= 1.0)) throw std::invalid_argument("make_rational_bump_exponent: base must be >= 1");
  GridFunction g(box, levels);
  const std::int64_t n = g.cells_per_axis();
  if (box.dim == 1) {
    for (std::int64_t i = 0; i < n; ++i) {
      const double x = g.coord(0, i);
      g[static_cast<std::size_t>(i)] = base + amp / (1.0 + x * x);
    }
  } else {
    for (std::int64_t i = 0; i < n; ++i)
      for (std::int64_t j = 0; j < n; ++j) {
        const double x = g.coord(0, i), y = g.coord(1, j);
        g.at(i, j) = base + amp / (1.0 + x * x + y * y);
      }
  }
  VarExponent p{std::move(g), base};
  if (!(p.p_minus() >= 1.0))
    throw std::invalid_argument("make_rational_bump_exponent: exponent dips below 1");
  return p;
}

namespace {

// Luxemburg bisection over explicit (|value|, exponent) cell lists.
double luxemburg(const std::vector<double>& av, const std::vector<double>& pv, double cell,
                 double tol) {
  if (!(tol > 0.0)) throw std::invalid_argument("varlex_norm: tol must be positive");
  double max_av = 0.0;
  for (double a : av) max_av = std::max(max_av, a);
  if (max_av == 0.0) return 0.0;

  auto modular = [&](double lambda) {
    double s = 0.0;
    for (std::size_t i = 0; i < av.size(); ++i)
      if (av[i] > 0.0) s += std::pow(av[i] / lambda, pv[i]);
    return s * cell;
  };

  double hi = max_av;
  int guard = 0;
  while (modular(hi) > 1.0 && guard++ < 200) hi *= 2.0;
  if (modular(hi) > 1.0) throw std::runtime_error("varlex_norm: bracket expansion failed");
  double lo = hi;
  guard = 0;
  while (modular(lo * 0.5) <= 1.0 && guard++ < 200) lo *= 0.5;
  lo *= 0.5;

  while (hi - lo > tol * lo) {
    const double mid = 0.5 * (lo + hi);
    if (modular(mid) > 1.0)
      lo = mid;
    else
      hi = mid;
  }
  return 0.5 * (lo + hi);
}

void gather_all(const GridFunction& f, const VarExponent& p, std::vector<double>& av,
                std::vector<double>& pv) {
  if (!f.compatible_with(p.p)) throw std::invalid_argument("varlex_norm: exponent grid mismatch");
  av.resize(f.size());
  pv.resize(f.size());
  for (std::size_t i = 0; i < f.size(); ++i) {
    av[i] = std::fabs(f[i]);
    pv[i] = p.p[i];
  }
}

template <class CubeT>
void gather_cube(const GridFunction& f, const VarExponent& p, const CubeT& q,
                 std::vector<double>& av, std::vector<double>& pv) {
  if (!f.compatible_with(p.p)) throw std::invalid_argument("varlex_norm: exponent grid mismatch");
  const auto cells = cube_cells(f, q);
  av.clear();
  pv.clear();
  if (f.dim() == 1) {
    for (std::int64_t i = cells[0].lo; i < cells[0].hi; ++i) {
      av.push_back(std::fabs(f[static_cast<std::size_t>(i)]));
      pv.push_back(p.p[static_cast<std::size_t>(i)]);
    }
  } else {
    for (std::int64_t i = cells[0].lo; i < cells[0].hi; ++i)
      for (std::int64_t j = cells[1].lo; j < cells[1].hi; ++j) {
        av.push_back(std::fabs(f.at(i, j)));
        pv.push_back(p.p.at(i, j));
      }
  }
}

void require_exponent_class(const VarExponent& p, const char* who) {
  if (!(p.p_minus() >= 1.0))
    throw std::invalid_argument(std::string(who) + ": exponent must stay >= 1");
}

}  // namespace

double varlex_norm(const GridFunction& f, const VarExponent& p, double tol) {
  require_exponent_class(p, "varlex_norm");
  std::vector<double> av, pv;
  gather_all(f, p, av, pv);
  return luxemburg(av, pv, f.cell_measure(), tol);
}

double varlex_norm_on(const GridFunction& f, const VarExponent& p, const DyadicCube& q,
                      double tol) {
  require_exponent_class(p, "varlex_norm_on");
  std::vector<double> av, pv;
  gather_cube(f, p, q, av, pv);
  return luxemburg(av, pv, f.cell_measure(), tol);
}

double varlex_norm_on(const GridFunction& f, const VarExponent& p, const Cube& c, double tol) {
  require_exponent_class(p, "varlex_norm_on");
  std::vector<double> av, pv;
  gather_cube(f, p, c, av, pv);
  return luxemburg(av, pv, f.cell_measure(), tol);
}

VarExponent conjugate(const VarExponent& p) {
  if (!(p.p_minus() > 1.0)) throw std::invalid_argument("conjugate: requires p_minus > 1");
  VarExponent out;
  out.p = p.p.map([](double v) { return v / (v - 1.0); });
  out.p_inf = p.p_inf / (p.p_inf - 1.0);
  return out;
}

VarExponent scale_exponent(const VarExponent& p, double s) {
  if (!(s > 0.0)) throw std::invalid_argument("scale_exponent: s must be positive");
  VarExponent out;
  out.p = p.p.map([s](double v) { return s * v; });
  out.p_inf = s * p.p_inf;
  return out;
}

VarExponent harmonic_sum(const VarExponent& p, const VarExponent& q) {
  const std::vector<VarExponent> pair{p, q};
  return harmonic_sum(std::span<const VarExponent>(pair));
}

VarExponent harmonic_sum(std::span<const VarExponent> ps) {
  if (ps.empty()) throw std::invalid_argument("harmonic_sum: no exponents");
  GridFunction inv(ps.front().p.box(), ps.front().p.levels());
  double inv_inf = 0.0;
  for (const auto& p : ps) {
    if (!p.p.compatible_with(inv)) throw std::invalid_argument("harmonic_sum: grid mismatch");
    for (std::size_t i = 0; i < inv.size(); ++i) inv[i] += 1.0 / p.p[i];
    inv_inf += 1.0 / p.p_inf;
  }
  VarExponent out;
  out.p = inv.map([](double v) { return 1.0 / v; });
  out.p_inf = 1.0 / inv_inf;
  return out;
}

LogHolderConstants log_holder_constants(const VarExponent& p) {
  const GridFunction& g = p.p;
  const std::int64_t n = g.cells_per_axis();
  const std::size_t total = g.size();
  LogHolderConstants out;

  std::vector<double> row_best(total, 0.0);
  parallel_for(total, [&](std::size_t a) {
    double best = 0.0;
    const double xa0 = g.dim() == 1 ? g.coord(0, static_cast<std::int64_t>(a))
                                    : g.coord(0, static_cast<std::int64_t>(a) / n);
    const double xa1 = g.dim() == 1 ? 0.0 : g.coord(1, static_cast<std::int64_t>(a) % n);
    for (std::size_t b = a + 1; b < total; ++b) {
      const double xb0 = g.dim() == 1 ? g.coord(0, static_cast<std::int64_t>(b))
                                      : g.coord(0, static_cast<std::int64_t>(b) / n);
      const double xb1 = g.dim() == 1 ? 0.0 : g.coord(1, static_cast<std::int64_t>(b) % n);
      const double dist =
          g.dim() == 1 ? std::fabs(xa0 - xb0) : std::hypot(xa0 - xb0, xa1 - xb1);
      if (dist <= 0.0 || dist > 0.5) continue;
      best = std::max(best, std::fabs(g[a] - g[b]) * (-std::log(dist)));
    }
    row_best[a] = best;
  });
  for (double v : row_best) out.c0 = std::max(out.c0, v);

  for (std::size_t a = 0; a < total; ++a) {
    const double x0 = g.dim() == 1 ? g.coord(0, static_cast<std::int64_t>(a))
                                   : g.coord(0, static_cast<std::int64_t>(a) / n);
    const double x1 = g.dim() == 1 ? 0.0 : g.coord(1, static_cast<std::int64_t>(a) % n);
    const double r = g.dim() == 1 ? std::fabs(x0) : std::hypot(x0, x1);
    out.cinf = std::max(out.cinf, std::fabs(g[a] - p.p_inf) * std::log(std::exp(1.0) + r));
  }
  return out;
}

BoundPair homogeneity_check(const GridFunction& f, const VarExponent& p, double s, double tol) {
  const double lhs = varlex_norm(f.abs().pow(s), p, tol);
  const double rhs = std::pow(varlex_norm(f, scale_exponent(p, s), tol), s);
  return BoundPair{lhs, rhs};
}

BoundPair gen_holder_check(const GridFunction& f, const GridFunction& g, const VarExponent& p,
                           const VarExponent& q, double tol) {
  const VarExponent r = harmonic_sum(p, q);
  require_exponent_class(r, "gen_holder_check");
  const double lhs = varlex_norm(f * g, r, tol);
  const double rhs = varlex_norm(f, p, tol) * varlex_norm(g, q, tol);
  return BoundPair{lhs, rhs};
}

BoundPair gen_holder_m_check(std::span<const GridFunction> fs, std::span<const VarExponent> qs,
                             double tol) {
  if (fs.size() != qs.size() || fs.empty())
    throw std::invalid_argument("gen_holder_m_check: slot mismatch");
  const VarExponent q = harmonic_sum(qs);
  require_exponent_class(q, "gen_holder_m_check");
  GridFunction prod = fs.front();
  for (std::size_t j = 1; j < fs.size(); ++j) prod *= fs[j];
  double rhs = 1.0;
  for (std::size_t j = 0; j < fs.size(); ++j) rhs *= varlex_norm(fs[j], qs[j], tol);
  return BoundPair{varlex_norm(prod, q, tol), rhs};
}

double var_ap_constant(const GridFunction& v, const VarExponent& p, const CubeFamily& cubes,
                       double tol) {
  if (v.min_value() <= 0.0)
    throw std::invalid_argument("var_ap_constant: weight must be strictly positive");
  const VarExponent pc = conjugate(p);
  const GridFunction vinv = v.map([](double x) { return 1.0 / x; });
  const double cell = v.cell_measure();
  const FamilyValues vals = sweep_family(cubes, [&](const DyadicCube& q, bool dil) {
    auto eval = [&](const auto& cube) {
      const auto cells = cube_cells(v, cube);
      const std::int64_t count =
          v.dim() == 1 ? cells[0].count() : cells[0].count() * cells[1].count();
      if (count == 0) return 0.0;
      const double measure = static_cast<double>(count) * cell;
      return varlex_norm_on(v, p, cube, tol) * varlex_norm_on(vinv, pc, cube, tol) / measure;
    };
    return dil ? eval(dilate_cube(q, cubes.dilation)) : eval(q);
  });
  return family_max(vals);
}

ProductWeightSides product_weight_sides(std::span<const GridFunction> vs,
                                        std::span<const VarExponent> ps, const CubeFamily& cubes,
                                        double tol) {
  if (vs.size() != ps.size() || vs.empty())
    throw std::invalid_argument("product_weight_sides: slot mismatch");
  const double m = static_cast<double>(vs.size());
  GridFunction prod = vs.front();
  for (std::size_t j = 1; j < vs.size(); ++j) prod *= vs[j];
  const VarExponent p = harmonic_sum(ps);
  ProductWeightSides out;
  out.product = var_ap_constant(prod.pow(1.0 / m), scale_exponent(p, m), cubes, tol);
  for (std::size_t j = 0; j < vs.size(); ++j)
    out.factors.push_back(var_ap_constant(vs[j], ps[j], cubes, tol));
  return out;
}

}  // namespace mcz
