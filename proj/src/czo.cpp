#include "mcz/czo.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdlib>
#include <functional>
#include <stdexcept>
#include <string>
#include <utility>

#include "mcz/parallel.hpp"

namespace mcz {

std::vector<KernelTuple> sample_kernel_tuples(const Box& box, int arity, int count,
                                              double min_sep, Rng& rng) {
  if (box.dim != 1) throw std::invalid_argument("sample_kernel_tuples: kernels run on the line");
  if (arity < 1 || count < 1) throw std::invalid_argument("sample_kernel_tuples: bad arguments");
  std::vector<KernelTuple> out;
  out.reserve(static_cast<std::size_t>(count));
  const double R = box.halfwidth;
  while (out.size() < static_cast<std::size_t>(count)) {
    KernelTuple t;
    t.x = rng.uniform(-R, R);
    t.y.resize(static_cast<std::size_t>(arity));
    bool ok = true;
    for (auto& y : t.y) {
      y = rng.uniform(-R, R);
      if (std::fabs(t.x - y) < min_sep) ok = false;
    }
    if (ok) out.push_back(std::move(t));
  }
  return out;
}

namespace {

double separation(const KernelTuple& t) {
  double s = 0.0;
  for (double y : t.y) s += std::fabs(t.x - y);
  return s;
}

double max_distance(const KernelTuple& t) {
  double d = 0.0;
  for (double y : t.y) d = std::max(d, std::fabs(t.x - y));
  return d;
}

// Given raw oscillation ratios and their displacement fractions, fit
// c1 * omega(c2 r): amplitude shrinks as the scale grows, so report the
// smallest scale on the ladder whose amplitude is within a factor 2 of the
// large-scale limit.
KernelFit fit_modulus(const Modulus& omega, const std::vector<std::pair<double, double>>& data,
                      int used, int skipped) {
  KernelFit fit;
  fit.used = used;
  fit.skipped = skipped;
  if (data.empty()) return fit;
  auto amplitude = [&](double c2) {
    double c1 = 0.0;
    for (const auto& [raw, r] : data) {
      const double w = omega(c2 * r);
      if (w > 0.0) c1 = std::max(c1, raw / w);
    }
    return c1;
  };
  const double scales[] = {1, 2, 4, 8, 16, 32, 64};
  const double limit = amplitude(scales[std::size(scales) - 1]);
  for (double c2 : scales) {
    const double c1 = amplitude(c2);
    if (c1 <= 2.0 * limit) {
      fit.c1 = c1;
      fit.c2 = c2;
      return fit;
    }
  }
  fit.c1 = limit;
  fit.c2 = scales[std::size(scales) - 1];
  return fit;
}

}  // namespace

KernelFit kernel_size_check(const Kernel& k, std::span<const KernelTuple> tuples) {
  KernelFit fit;
  const double power = static_cast<double>(k.arity);  // m * n with n = 1
  for (const auto& t : tuples) {
    const double sep = separation(t);
    if (sep <= 0.0) {
      ++fit.skipped;
      continue;
    }
    fit.c1 = std::max(fit.c1, std::fabs(k.eval(t.x, t.y)) * std::pow(sep, power));
    ++fit.used;
  }
  return fit;
}

KernelFit kernel_reg_x_check(const Kernel& k, std::span<const KernelTuple> tuples, Rng& rng) {
  const double power = static_cast<double>(k.arity);
  std::vector<std::pair<double, double>> data;
  int used = 0, skipped = 0;
  for (const auto& t : tuples) {
    const double sep = separation(t);
    const double dmax = max_distance(t);
    if (sep <= 0.0 || dmax <= 0.0) {
      ++skipped;
      continue;
    }
    const double d = (rng.coin() ? 1.0 : -1.0) * rng.uniform(0.05, 1.0) *
                     kKernelDisplacementFraction * dmax;
    KernelTuple moved = t;
    moved.x = t.x + d;
    const double raw = std::fabs(k.eval(t.x, t.y) - k.eval(moved.x, moved.y)) *
                       std::pow(sep, power);
    data.emplace_back(raw, std::fabs(d) / sep);
    ++used;
  }
  return fit_modulus(k.omega, data, used, skipped);
}

KernelFit kernel_reg_y_check(const Kernel& k, std::span<const KernelTuple> tuples, int slot,
                             Rng& rng) {
  if (slot < 0 || slot >= k.arity) throw std::invalid_argument("kernel_reg_y_check: bad slot");
  const double power = static_cast<double>(k.arity);
  std::vector<std::pair<double, double>> data;
  int used = 0, skipped = 0;
  for (const auto& t : tuples) {
    const double sep = separation(t);
    const double dmax = max_distance(t);
    if (sep <= 0.0 || dmax <= 0.0) {
      ++skipped;
      continue;
    }
    const double d = (rng.coin() ? 1.0 : -1.0) * rng.uniform(0.05, 1.0) *
                     kKernelDisplacementFraction * dmax;
    KernelTuple moved = t;
    moved.y[static_cast<std::size_t>(slot)] += d;
    const double raw = std::fabs(k.eval(t.x, t.y) - k.eval(moved.x, moved.y)) *
                       std::pow(sep, power);
    data.emplace_back(raw, std::fabs(d) / sep);
    ++used;
  }
  return fit_modulus(k.omega, data, used, skipped);
}

namespace {

void require_inputs(std::size_t arity, std::span<const GridFunction> fs, const char* who) {
  if (fs.size() != arity) throw std::invalid_argument(std::string(who) + ": arity mismatch");
  for (const auto& f : fs)
    if (!f.compatible_with(fs.front()))
      throw std::invalid_argument(std::string(who) + ": grid mismatch");
}

}  // namespace

std::vector<double> apply_kernel_operator_at(const Kernel& k, std::span<const GridFunction> fs,
                                             std::span<const std::int64_t> cells, int exclusion) {
  require_inputs(static_cast<std::size_t>(k.arity), fs, "apply_kernel_operator");
  const GridFunction& f0 = fs[0];
  if (f0.dim() != 1)
    throw std::invalid_argument("apply_kernel_operator: kernel quadrature runs on the line");
  const std::int64_t n = f0.cells_per_axis();
  const double h = f0.cell_size();

  // Only cells where an input is nonzero contribute; the quadrature walks
  // those lists instead of the full grid.
  std::vector<std::vector<std::int64_t>> support(fs.size());
  for (std::size_t j = 0; j < fs.size(); ++j)
    for (std::int64_t i = 0; i < n; ++i)
      if (fs[j][static_cast<std::size_t>(i)] != 0.0) support[j].push_back(i);

  std::vector<double> out(cells.size(), 0.0);
  parallel_for(cells.size(), [&](std::size_t ci) {
    const std::int64_t i = cells[ci];
    const double x = f0.coord(0, i);
    std::vector<double> ys(fs.size());
    std::vector<std::size_t> pos(fs.size(), 0);
    double acc = 0.0;
    // Depth-first product over the support lists, fixed order.
    std::vector<std::size_t> stack;
    std::function<void(std::size_t, double)> descend = [&](std::size_t slot, double prod) {
      if (slot == fs.size()) {
        acc += k.eval(x, ys) * prod;
        return;
      }
      for (std::int64_t j : support[slot]) {
        if (std::llabs(j - i) <= exclusion) continue;
        ys[slot] = f0.coord(0, j);
        descend(slot + 1, prod * fs[slot][static_cast<std::size_t>(j)]);
      }
    };
    descend(0, 1.0);
    out[ci] = acc * std::pow(h, static_cast<double>(fs.size()));
  });
  return out;
}

GridFunction apply_kernel_operator(const Kernel& k, std::span<const GridFunction> fs,
                                   int exclusion) {
  const GridFunction& f0 = fs[0];
  std::vector<std::int64_t> cells(static_cast<std::size_t>(f0.cells_per_axis()));
  for (std::size_t i = 0; i < cells.size(); ++i) cells[i] = static_cast<std::int64_t>(i);
  const std::vector<double> vals = apply_kernel_operator_at(k, fs, cells, exclusion);
  GridFunction out(f0.box(), f0.levels());
  for (std::size_t i = 0; i < vals.size(); ++i) out[i] = vals[i];
  return out;
}

GridFunction MultilinearOperator::operator()(std::span<const GridFunction> fs) const {
  if (!apply_) throw std::logic_error("MultilinearOperator: empty");
  if (fs.size() != arity_) throw std::invalid_argument("MultilinearOperator: arity mismatch");
  return apply_(fs);
}

GridFunction MultilinearOperator::operator()(const GridFunction& f) const {
  std::vector<GridFunction> fs{f};
  return (*this)(std::span<const GridFunction>(fs));
}

GridFunction MultilinearOperator::operator()(const GridFunction& f,
                                             const GridFunction& g) const {
  std::vector<GridFunction> fs{f, g};
  return (*this)(std::span<const GridFunction>(fs));
}

MultilinearOperator commutator_j(const MultilinearOperator& T, const GridFunction& b,
                                 std::size_t j) {
  if (j >= T.arity()) throw std::invalid_argument("commutator_j: slot out of range");
  return MultilinearOperator(
      T.arity(), [T, b, j](std::span<const GridFunction> fs) {
        std::vector<GridFunction> scaled(fs.begin(), fs.end());
        scaled[j] *= b;
        return b * T(fs) - T(std::span<const GridFunction>(scaled));
      });
}

MultilinearOperator commutator_sigma(const MultilinearOperator& T,
                                     std::span<const GridFunction> bs) {
  if (bs.size() != T.arity()) throw std::invalid_argument("commutator_sigma: arity mismatch");
  std::vector<GridFunction> bcopy(bs.begin(), bs.end());
  return MultilinearOperator(T.arity(), [T, bcopy](std::span<const GridFunction> fs) {
    GridFunction total = commutator_j(T, bcopy[0], 0)(fs);
    for (std::size_t j = 1; j < bcopy.size(); ++j) total += commutator_j(T, bcopy[j], j)(fs);
    return total;
  });
}

MultilinearOperator commutator_pi(const MultilinearOperator& T, std::span<const GridFunction> bs,
                                  std::span<const std::size_t> sigma) {
  if (bs.size() != T.arity()) throw std::invalid_argument("commutator_pi: arity mismatch");
  std::vector<std::size_t> slots(sigma.begin(), sigma.end());
  std::sort(slots.begin(), slots.end());
  if (std::adjacent_find(slots.begin(), slots.end()) != slots.end())
    throw std::invalid_argument("commutator_pi: repeated slot");
  for (std::size_t s : slots)
    if (s >= T.arity()) throw std::invalid_argument("commutator_pi: slot out of range");
  std::vector<GridFunction> bcopy(bs.begin(), bs.end());

  return MultilinearOperator(T.arity(), [T, bcopy, slots](std::span<const GridFunction> fs) {
    const std::size_t k = slots.size();
    GridFunction total(fs[0].box(), fs[0].levels());
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << k); ++mask) {
      std::vector<GridFunction> inputs(fs.begin(), fs.end());
      GridFunction outside(fs[0].box(), fs[0].levels(), 1.0);
      for (std::size_t i = 0; i < k; ++i) {
        const std::size_t slot = slots[i];
        if (mask & (std::uint64_t{1} << i))
          inputs[slot] *= bcopy[slot];
        else
          outside *= bcopy[slot];
      }
      const double sign = (std::popcount(mask) % 2 == 0) ? 1.0 : -1.0;
      total += sign * (outside * T(std::span<const GridFunction>(inputs)));
    }
    return total;
  });
}

MultilinearOperator commutator_pi(const MultilinearOperator& T,
                                  std::span<const GridFunction> bs) {
  std::vector<std::size_t> all(T.arity());
  for (std::size_t i = 0; i < all.size(); ++i) all[i] = i;
  return commutator_pi(T, bs, all);
}

namespace {

std::vector<double> bmo_norms(std::span<const GridFunction> bs, const CubeFamily& cubes) {
  std::vector<double> out;
  out.reserve(bs.size());
  for (const auto& b : bs) out.push_back(bmo_norm(b, cubes));
  return out;
}

}  // namespace

PointwiseSides sharp_bound_sides(const MultilinearOperator& T, std::span<const GridFunction> bs,
                                 std::span<const GridFunction> fs, double delta, double eps,
                                 const CubeFamily& cubes, double tol) {
  const std::size_t m = T.arity();
  if (!(0.0 < delta && delta < eps && eps < 1.0 / static_cast<double>(m)))
    throw std::invalid_argument("sharp_bound_sides: need 0 < delta < eps < 1/m");
  require_inputs(m, fs, "sharp_bound_sides");
  if (bs.size() != m) throw std::invalid_argument("sharp_bound_sides: symbol count mismatch");

  const std::vector<double> bmo = bmo_norms(bs, cubes);
  double bmo_all = 1.0;
  for (double v : bmo) bmo_all *= v;

  const MultilinearOperator full = commutator_pi(T, bs);
  PointwiseSides out{sharp_maximal_delta(full(fs), delta, cubes),
                     GridFunction(fs[0].box(), fs[0].levels())};

  out.rhs = bmo_all * (m_loglog_multi(fs, cubes, tol) + m_delta(T(fs), eps, cubes));
  // Lower-order commutators: every proper nonempty slot subset sigma
  // contributes prod_{i in sigma} bmo_i * M_eps(T_{Pi b_sigma'} f).
  for (std::uint64_t mask = 1; mask + 1 < (std::uint64_t{1} << m); ++mask) {
    double coeff = 1.0;
    std::vector<std::size_t> complement;
    for (std::size_t i = 0; i < m; ++i) {
      if (mask & (std::uint64_t{1} << i))
        coeff *= bmo[i];
      else
        complement.push_back(i);
    }
    const MultilinearOperator partial = commutator_pi(T, bs, complement);
    out.rhs += coeff * m_delta(partial(fs), eps, cubes);
  }
  return out;
}

BoundPair strong_weighted_sides(const MultilinearOperator& T, std::span<const GridFunction> bs,
                                std::span<const GridFunction> fs, double p,
                                const GridFunction& w, const CubeFamily& cubes, double tol) {
  if (!(p > 0.0)) throw std::invalid_argument("strong_weighted_sides: p must be positive");
  const std::vector<double> bmo = bmo_norms(bs, cubes);
  double bmo_all = 1.0;
  for (double v : bmo) bmo_all *= v;
  const GridFunction tval = commutator_pi(T, bs)(fs);
  const GridFunction mll = m_loglog_multi(fs, cubes, tol);
  return BoundPair{box_integral(tval.abs().pow(p) * w),
                   std::pow(bmo_all, p) * box_integral(mll.pow(p) * w)};
}

namespace {

// sup over the t-grid of w({ |g| > t^m }) / phi_iter(1/t, m).
double weak_orlicz_scan(const GridFunction& g, const GridFunction& w, int m, double tmin,
                        double tmax, int points) {
  const double cell = g.cell_measure();
  double best = 0.0;
  for (int i = 0; i < points; ++i) {
    const double t =
        tmin * std::pow(tmax / tmin, static_cast<double>(i) / static_cast<double>(points - 1));
    const double threshold = std::pow(t, m);
    double measure = 0.0;
    for (std::size_t idx = 0; idx < g.size(); ++idx)
      if (std::fabs(g[idx]) > threshold) measure += w[idx] * cell;
    best = std::max(best, measure / phi_iter(1.0 / t, m));
  }
  return best;
}

std::pair<double, double> positive_range(const GridFunction& a, const GridFunction& b) {
  double lo = HUGE_VAL, hi = 0.0;
  auto scan = [&](const GridFunction& g) {
    for (std::size_t i = 0; i < g.size(); ++i) {
      const double v = std::fabs(g[i]);
      if (v > 0.0) {
        lo = std::min(lo, v);
        hi = std::max(hi, v);
      }
    }
  };
  scan(a);
  scan(b);
  if (!(hi > 0.0)) return {1.0, 1.0};
  return {lo, hi};
}

}  // namespace

BoundPair weak_endpoint_sides(const MultilinearOperator& T, std::span<const GridFunction> bs,
                              std::span<const GridFunction> fs, const GridFunction& w,
                              const CubeFamily& cubes, double tol) {
  const int m = static_cast<int>(T.arity());
  const GridFunction tval = commutator_pi(T, bs)(fs);
  const GridFunction mll = m_loglog_multi(fs, cubes, tol);
  const auto [vlo, vhi] = positive_range(tval, mll);
  const double tmin = 0.5 * std::pow(vlo, 1.0 / m);
  const double tmax = 2.0 * std::pow(vhi, 1.0 / m);
  const int points = 161;
  return BoundPair{weak_orlicz_scan(tval, w, m, tmin, tmax, points),
                   weak_orlicz_scan(mll, w, m, tmin, tmax, points)};
}

BoundPair multiweight_strong_sides_at(const GridFunction& tval, std::span<const GridFunction> bs,
                                      std::span<const GridFunction> fs, const WeightVector& wv,
                                      const CubeFamily& cubes) {
  if (wv.arity() != fs.size() || fs.empty())
    throw std::invalid_argument("multiweight_strong_sides: arity mismatch");
  const double p = wv.p_total();
  const GridFunction nu = wv.nu();
  const double lhs = std::pow(box_integral(tval.abs().pow(p) * nu), 1.0 / p);
  double rhs = 1.0;
  for (double v : bmo_norms(bs, cubes)) rhs *= v;
  for (std::size_t j = 0; j < fs.size(); ++j)
    rhs *= std::pow(box_integral(fs[j].abs().pow(wv.p[j]) * wv.w[j]), 1.0 / wv.p[j]);
  return BoundPair{lhs, rhs};
}

BoundPair multiweight_strong_sides(const MultilinearOperator& T, std::span<const GridFunction> bs,
                                   std::span<const GridFunction> fs, const WeightVector& wv,
                                   const CubeFamily& cubes) {
  if (wv.arity() != T.arity() || fs.size() != T.arity())
    throw std::invalid_argument("multiweight_strong_sides: arity mismatch");
  return multiweight_strong_sides_at(commutator_pi(T, bs)(fs), bs, fs, wv, cubes);
}

BoundPair multiweight_weak_sides_at(const GridFunction& tval, std::span<const GridFunction> fs,
                                    const WeightVector& wv, double lambda) {
  if (!(lambda > 0.0)) throw std::invalid_argument("multiweight_weak_sides: lambda must be > 0");
  if (wv.arity() != fs.size() || fs.empty())
    throw std::invalid_argument("multiweight_weak_sides: arity mismatch");
  const int m = static_cast<int>(fs.size());
  const GridFunction nu = wv.nu();
  const double threshold = std::pow(lambda, m);
  const double cell = tval.cell_measure();
  double lhs = 0.0;
  for (std::size_t i = 0; i < tval.size(); ++i)
    if (std::fabs(tval[i]) > threshold) lhs += nu[i] * cell;
  double rhs = 1.0;
  for (std::size_t j = 0; j < fs.size(); ++j) {
    double integral = 0.0;
    for (std::size_t i = 0; i < fs[j].size(); ++i)
      integral += phi_iter(std::fabs(fs[j][i]) / lambda, m) * wv.w[j][i] * cell;
    rhs *= std::pow(integral, 1.0 / m);
  }
  return BoundPair{lhs, rhs};
}

BoundPair multiweight_weak_sides(const MultilinearOperator& T, std::span<const GridFunction> bs,
                                 std::span<const GridFunction> fs, const WeightVector& wv,
                                 double lambda) {
  if (fs.size() != T.arity())
    throw std::invalid_argument("multiweight_weak_sides: arity mismatch");
  return multiweight_weak_sides_at(commutator_pi(T, bs)(fs), fs, wv, lambda);
}

VarLexSides varlex_bound_sides_at(const GridFunction& tval, std::span<const GridFunction> bs,
                                  std::span<const GridFunction> fs,
                                  std::span<const VarExponent> ps,
                                  std::span<const GridFunction> vs, const CubeFamily& cubes,
                                  double tol) {
  if (ps.size() != fs.size() || vs.size() != fs.size() || fs.empty())
    throw std::invalid_argument("varlex_bound_sides: arity mismatch");
  const VarExponent p = harmonic_sum(ps);
  GridFunction v = vs[0];
  for (std::size_t j = 1; j < vs.size(); ++j) v *= vs[j];
  VarLexSides out;
  for (double b : bmo_norms(bs, cubes)) out.bmo_product *= b;
  out.lhs = varlex_norm(tval * v, p, tol);
  out.rhs = out.bmo_product;
  for (std::size_t j = 0; j < fs.size(); ++j)
    out.rhs *= varlex_norm(fs[j] * vs[j], ps[j], tol);
  return out;
}

VarLexSides varlex_bound_sides(const MultilinearOperator& T, std::span<const GridFunction> bs,
                               std::span<const GridFunction> fs, std::span<const VarExponent> ps,
                               std::span<const GridFunction> vs, const CubeFamily& cubes,
                               double tol) {
  if (ps.size() != T.arity() || vs.size() != T.arity())
    throw std::invalid_argument("varlex_bound_sides: arity mismatch");
  return varlex_bound_sides_at(commutator_pi(T, bs)(fs), bs, fs, ps, vs, cubes, tol);
}

}  // namespace mcz
