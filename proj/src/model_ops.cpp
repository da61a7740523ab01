#include "mcz/model_ops.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <memory>
#include <numbers>
#include <stdexcept>
#include <string>

#include "mcz/parallel.hpp"

namespace mcz {

double molecule_profile(MoleculeShape shape, double u) {
  if (u <= 0.0 || u >= 1.0) return 0.0;
  switch (shape) {
    case MoleculeShape::bump:
      return std::exp(4.0) * std::exp(-1.0 / (u * (1.0 - u)));
    case MoleculeShape::tent:
      return 1.0 - std::fabs(2.0 * u - 1.0);
  }
  return 0.0;
}

double molecule_profile_zero_mean(MoleculeShape shape, double u) {
  return molecule_profile(shape, 2.0 * u) - molecule_profile(shape, 2.0 * u - 1.0);
}

double molecule_spec_profile(const MoleculeSpec& spec, double u) {
  return spec.zero_mean ? molecule_profile_zero_mean(spec.shape, u)
                        : molecule_profile(spec.shape, u);
}

GridFunction molecule(const MoleculeSpec& spec, const DyadicCube& q, int grid_levels) {
  if (q.box.dim != 1) throw std::invalid_argument("molecule: profiles live on the line");
  if (q.level > grid_levels)
    throw resolution_error("molecule: cube finer than the grid");
  GridFunction g(q.box, grid_levels);
  const std::int64_t cells = std::int64_t{1} << (grid_levels - q.level);
  const std::int64_t base = q.kappa[0] * cells;
  const double norm = 1.0 / std::sqrt(q.side());
  for (std::int64_t i = 0; i < cells; ++i) {
    const double u = (static_cast<double>(i) + 0.5) / static_cast<double>(cells);
    g[static_cast<std::size_t>(base + i)] = norm * molecule_spec_profile(spec, u);
  }
  return g;
}

double molecule_l2_norm(const MoleculeSpec& spec, std::int64_t samples_per_cube) {
  if (samples_per_cube < 1) throw std::invalid_argument("molecule_l2_norm: empty cube");
  double s = 0.0;
  for (std::int64_t i = 0; i < samples_per_cube; ++i) {
    const double u = (static_cast<double>(i) + 0.5) / static_cast<double>(samples_per_cube);
    const double v = molecule_spec_profile(spec, u);
    s += v * v;
  }
  return std::sqrt(s / static_cast<double>(samples_per_cube));
}

MoleculeCheck molecule_check(const MoleculeSpec& spec, const Modulus& theta, int probes,
                             Rng& rng) {
  if (probes < 1) throw std::invalid_argument("molecule_check: probes must be positive");
  MoleculeCheck out;
  const double n_dec = static_cast<double>(spec.decay_order);
  auto decay = [&](double u) { return std::pow(1.0 + std::fabs(u - 0.5), -n_dec); };

  // Size constant over a deterministic grid through and beyond the support.
  const int grid_points = 4 * probes;
  for (int i = 0; i <= grid_points; ++i) {
    const double u = -1.0 + 3.0 * static_cast<double>(i) / static_cast<double>(grid_points);
    out.size_constant =
        std::max(out.size_constant, std::fabs(molecule_spec_profile(spec, u)) / decay(u));
  }

  for (int i = 0; i < probes; ++i) {
    const double u = rng.uniform(-1.0, 2.0);
    const double reach = 0.5 * (1.0 + std::fabs(u - 0.5));
    const double d = (rng.coin() ? 1.0 : -1.0) * rng.uniform(0.0, 1.0) * reach;
    if (d == 0.0) continue;
    const double w = u + d;
    const double osc =
        std::fabs(molecule_spec_profile(spec, u) - molecule_spec_profile(spec, w));
    const double denom = theta(std::fabs(d)) * (decay(u) + decay(w));
    if (denom > 0.0) {
      out.regularity_constant = std::max(out.regularity_constant, osc / denom);
      ++out.pairs;
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Paraproduct
// ---------------------------------------------------------------------------

Paraproduct::Paraproduct(const ParaproductSpec& spec, const Box& box)
    : spec_(spec), box_(box) {
  if (box.dim != 1) throw std::invalid_argument("Paraproduct: box must be one-dimensional");
  if (spec.max_level < 0) throw std::invalid_argument("Paraproduct: negative max_level");
}

GridFunction Paraproduct::apply(const GridFunction& f, const GridFunction& g) const {
  if (!f.compatible_with(g)) throw std::invalid_argument("Paraproduct: grid mismatch");
  if (!(f.box() == box_)) throw std::invalid_argument("Paraproduct: wrong box");
  if (spec_.max_level > f.levels())
    throw resolution_error("Paraproduct: cubes finer than the grid");

  const std::int64_t n = f.cells_per_axis();
  const double h = f.cell_size();
  GridFunction out(box_, f.levels());

  for (int v = 0; v <= spec_.max_level; ++v) {
    const std::int64_t cells = n >> v;
    const double side = box_.side() * std::ldexp(1.0, -v);
    const double norm = 1.0 / std::sqrt(side);
    std::vector<double> p1(static_cast<std::size_t>(cells)),
        p2(static_cast<std::size_t>(cells)), p3(static_cast<std::size_t>(cells));
    for (std::int64_t i = 0; i < cells; ++i) {
      const double u = (static_cast<double>(i) + 0.5) / static_cast<double>(cells);
      p1[static_cast<std::size_t>(i)] = norm * molecule_spec_profile(spec_.left, u);
      p2[static_cast<std::size_t>(i)] = norm * molecule_spec_profile(spec_.right, u);
      p3[static_cast<std::size_t>(i)] = norm * molecule_spec_profile(spec_.out, u);
    }
    const std::int64_t count = std::int64_t{1} << v;
    for (std::int64_t kappa = 0; kappa < count; ++kappa) {
      const std::size_t base = static_cast<std::size_t>(kappa * cells);
      double ip1 = 0.0, ip2 = 0.0;
      for (std::int64_t i = 0; i < cells; ++i) {
        ip1 += f[base + static_cast<std::size_t>(i)] * p1[static_cast<std::size_t>(i)];
        ip2 += g[base + static_cast<std::size_t>(i)] * p2[static_cast<std::size_t>(i)];
      }
      const double coeff = norm * (h * ip1) * (h * ip2);
      for (std::int64_t i = 0; i < cells; ++i)
        out[base + static_cast<std::size_t>(i)] += coeff * p3[static_cast<std::size_t>(i)];
    }
  }
  return out;
}

Kernel Paraproduct::kernel() const {
  Kernel k;
  k.arity = 2;
  k.omega = spec_.regularity;
  const ParaproductSpec spec = spec_;
  const Box box = box_;
  k.eval = [spec, box](double x, std::span<const double> ys) {
    const double R = box.halfwidth;
    double total = 0.0;
    for (int v = 0; v <= spec.max_level; ++v) {
      const std::int64_t count = std::int64_t{1} << v;
      const double side = box.side() * std::ldexp(1.0, -v);
      auto locate = [&](double pt) {
        auto idx = static_cast<std::int64_t>(std::floor((pt + R) / side));
        return std::clamp(idx, std::int64_t{0}, count - 1);
      };
      const std::int64_t kx = locate(x);
      if (locate(ys[0]) != kx || locate(ys[1]) != kx) continue;
      const double corner = -R + static_cast<double>(kx) * side;
      total += std::pow(side, -2.0) *
               molecule_spec_profile(spec.left, (ys[0] - corner) / side) *
               molecule_spec_profile(spec.right, (ys[1] - corner) / side) *
               molecule_spec_profile(spec.out, (x - corner) / side);
    }
    return total;
  };
  return k;
}

MultilinearOperator Paraproduct::as_operator() const {
  const Paraproduct self = *this;
  return MultilinearOperator(
      2, [self](std::span<const GridFunction> fs) { return self.apply(fs[0], fs[1]); });
}

// ---------------------------------------------------------------------------
// Fourier transform on the midpoint grid
// ---------------------------------------------------------------------------

namespace {

// T[r] = exp(i pi r / n) for r in [0, 2n): all phase factors below are
// (-1)^k T[(k (2i+1)) mod 2n].
std::vector<std::complex<double>> phase_table(std::int64_t n) {
  std::vector<std::complex<double>> t(static_cast<std::size_t>(2 * n));
  for (std::int64_t r = 0; r < 2 * n; ++r) {
    const double a = std::numbers::pi * static_cast<double>(r) / static_cast<double>(n);
    t[static_cast<std::size_t>(r)] = {std::cos(a), std::sin(a)};
  }
  return t;
}

std::complex<double> phase(const std::vector<std::complex<double>>& table, std::int64_t n,
                           std::int64_t k, std::int64_t i) {
  std::int64_t r = (k * (2 * i + 1)) % (2 * n);
  if (r < 0) r += 2 * n;
  const std::complex<double> e = table[static_cast<std::size_t>(r)];
  return k % 2 == 0 ? e : -e;
}

void require_line(const GridFunction& f, const char* who) {
  if (f.dim() != 1) throw std::invalid_argument(std::string(who) + ": needs a 1-d grid");
}

}  // namespace

std::vector<double> bpdo_frequencies(const Box& box, int levels) {
  if (box.dim != 1) throw std::invalid_argument("bpdo_frequencies: needs a 1-d box");
  const std::int64_t n = std::int64_t{1} << levels;
  std::vector<double> xi(static_cast<std::size_t>(n));
  for (std::int64_t j = 0; j < n; ++j)
    xi[static_cast<std::size_t>(j)] =
        static_cast<double>(j - n / 2) * std::numbers::pi / box.halfwidth;
  return xi;
}

std::vector<std::complex<double>> fourier_coefficients(const GridFunction& f) {
  require_line(f, "fourier_coefficients");
  const std::int64_t n = f.cells_per_axis();
  const auto table = phase_table(n);
  std::vector<std::complex<double>> c(static_cast<std::size_t>(n));
  parallel_for(static_cast<std::size_t>(n), [&](std::size_t j) {
    const std::int64_t k = static_cast<std::int64_t>(j) - n / 2;
    std::complex<double> acc = 0.0;
    for (std::int64_t i = 0; i < n; ++i)
      acc += f[static_cast<std::size_t>(i)] * std::conj(phase(table, n, k, i));
    c[j] = acc / static_cast<double>(n);
  });
  return c;
}

GridFunction fourier_synthesis(const Box& box, int levels,
                               std::span<const std::complex<double>> c) {
  if (box.dim != 1) throw std::invalid_argument("fourier_synthesis: needs a 1-d box");
  const std::int64_t n = std::int64_t{1} << levels;
  if (c.size() != static_cast<std::size_t>(n))
    throw std::invalid_argument("fourier_synthesis: coefficient count mismatch");
  const auto table = phase_table(n);
  GridFunction out(box, levels);
  parallel_for(static_cast<std::size_t>(n), [&](std::size_t i) {
    std::complex<double> acc = 0.0;
    for (std::int64_t j = 0; j < n; ++j)
      acc += c[static_cast<std::size_t>(j)] *
             phase(table, n, j - n / 2, static_cast<std::int64_t>(i));
    out[i] = acc.real();
  });
  return out;
}

double aliasing_fraction(const GridFunction& f) {
  const auto c = fourier_coefficients(f);
  const std::int64_t n = f.cells_per_axis();
  double total = 0.0, tail = 0.0;
  for (std::int64_t j = 0; j < n; ++j) {
    const std::int64_t k = j - n / 2;
    const double m = std::norm(c[static_cast<std::size_t>(j)]);
    total += m;
    if (std::llabs(k) >= n / 4) tail += m;
  }
  return total > 0.0 ? tail / total : 0.0;
}

namespace {

void require_symbol(const Symbol& sigma) {
  if (!sigma.freq_part)
    throw std::invalid_argument("Symbol: the frequency part is required");
}

double symbol_x(const Symbol& sigma, double x) {
  return sigma.x_part ? sigma.x_part(x) : 1.0;
}

}  // namespace

namespace {

// s(xi_k, xi_l) on the level's frequency lattice; bpdo_operator keeps one
// alive across applies, since sweeps reuse the symbol thousands of times.
struct FreqTable {
  std::int64_t n = 0;
  std::vector<double> s;  // row j1, column j2
};

void fill_freq_table(const Symbol& sigma, std::int64_t n, double R, FreqTable& t) {
  if (t.n == n) return;
  t.n = n;
  t.s.assign(static_cast<std::size_t>(n * n), 0.0);
  parallel_for(static_cast<std::size_t>(n), [&](std::size_t j1) {
    const double xi =
        static_cast<double>(static_cast<std::int64_t>(j1) - n / 2) * std::numbers::pi / R;
    for (std::int64_t j2 = 0; j2 < n; ++j2) {
      const double eta = static_cast<double>(j2 - n / 2) * std::numbers::pi / R;
      t.s[j1 * static_cast<std::size_t>(n) + static_cast<std::size_t>(j2)] =
          sigma.freq_part(xi, eta);
    }
  });
}

GridFunction bpdo_apply_impl(const Symbol& sigma, const GridFunction& f, const GridFunction& g,
                             FreqTable& freq) {
  require_symbol(sigma);
  require_line(f, "bpdo_apply");
  if (!f.compatible_with(g)) throw std::invalid_argument("bpdo_apply: grid mismatch");
  const std::int64_t n = f.cells_per_axis();
  const double R = f.box().halfwidth;
  fill_freq_table(sigma, n, R, freq);
  const auto c1 = fourier_coefficients(f);
  const auto c2 = fourier_coefficients(g);

  // Collapse the double sum along diagonals k + l = s.
  std::vector<std::complex<double>> diag(static_cast<std::size_t>(2 * n - 1));
  for (std::int64_t j1 = 0; j1 < n; ++j1)
    for (std::int64_t j2 = 0; j2 < n; ++j2)
      diag[static_cast<std::size_t>(j1 + j2)] +=
          freq.s[static_cast<std::size_t>(j1 * n + j2)] * c1[static_cast<std::size_t>(j1)] *
          c2[static_cast<std::size_t>(j2)];

  const auto table = phase_table(n);
  GridFunction out(f.box(), f.levels());
  parallel_for(static_cast<std::size_t>(n), [&](std::size_t i) {
    std::complex<double> acc = 0.0;
    for (std::int64_t js = 0; js < 2 * n - 1; ++js)
      acc += diag[static_cast<std::size_t>(js)] *
             phase(table, n, js - n, static_cast<std::int64_t>(i));
    out[i] = symbol_x(sigma, out.coord(0, static_cast<std::int64_t>(i))) * acc.real();
  });
  return out;
}

}  // namespace

GridFunction bpdo_apply(const Symbol& sigma, const GridFunction& f, const GridFunction& g) {
  FreqTable local;
  return bpdo_apply_impl(sigma, f, g, local);
}

GridFunction bpdo_apply_direct(const Symbol& sigma, const GridFunction& f,
                               const GridFunction& g) {
  require_symbol(sigma);
  require_line(f, "bpdo_apply_direct");
  if (!f.compatible_with(g)) throw std::invalid_argument("bpdo_apply_direct: grid mismatch");
  const std::int64_t n = f.cells_per_axis();
  const double R = f.box().halfwidth;
  const auto c1 = fourier_coefficients(f);
  const auto c2 = fourier_coefficients(g);
  const auto table = phase_table(n);
  GridFunction out(f.box(), f.levels());
  parallel_for(static_cast<std::size_t>(n), [&](std::size_t i) {
    const auto cell = static_cast<std::int64_t>(i);
    std::complex<double> acc = 0.0;
    for (std::int64_t j1 = 0; j1 < n; ++j1) {
      const double xi = static_cast<double>(j1 - n / 2) * std::numbers::pi / R;
      const std::complex<double> left =
          c1[static_cast<std::size_t>(j1)] * phase(table, n, j1 - n / 2, cell);
      for (std::int64_t j2 = 0; j2 < n; ++j2) {
        const double eta = static_cast<double>(j2 - n / 2) * std::numbers::pi / R;
        acc += sigma.freq_part(xi, eta) * left * c2[static_cast<std::size_t>(j2)] *
               phase(table, n, j2 - n / 2, cell);
      }
    }
    out[i] = symbol_x(sigma, out.coord(0, cell)) * acc.real();
  });
  return out;
}

MultilinearOperator bpdo_operator(const Symbol& sigma) {
  require_symbol(sigma);
  auto cache = std::make_shared<FreqTable>();
  return MultilinearOperator(2, [sigma, cache](std::span<const GridFunction> fs) {
    return bpdo_apply_impl(sigma, fs[0], fs[1], *cache);
  });
}

namespace {

double binomial(int n, int k) {
  double b = 1.0;
  for (int i = 0; i < k; ++i) b = b * static_cast<double>(n - i) / static_cast<double>(i + 1);
  return b;
}

// Undivided difference of order (a, b) with step d in each frequency slot.
template <class F>
double freq_difference(F&& fn, double xi, double eta, int a, int b, double d) {
  double acc = 0.0;
  for (int ja = 0; ja <= a; ++ja)
    for (int jb = 0; jb <= b; ++jb) {
      const double sign = ((a - ja) + (b - jb)) % 2 == 0 ? 1.0 : -1.0;
      acc += sign * binomial(a, ja) * binomial(b, jb) *
             fn(xi + static_cast<double>(ja) * d, eta + static_cast<double>(jb) * d);
    }
  return acc;
}

}  // namespace

SymbolClassReport symbol_class_check(const Symbol& sigma, const Box& box, int levels,
                                     int max_order, int probes, Rng& rng) {
  require_symbol(sigma);
  if (box.dim != 1) throw std::invalid_argument("symbol_class_check: needs a 1-d box");
  if (max_order < 0 || probes < 1)
    throw std::invalid_argument("symbol_class_check: bad arguments");
  const std::int64_t n = std::int64_t{1} << levels;
  const double d = std::numbers::pi / box.halfwidth;  // lattice spacing
  SymbolClassReport out;
  out.probes = probes;
  for (int trial = 0; trial < probes; ++trial) {
    const double xi =
        static_cast<double>(static_cast<std::int64_t>(rng.integer(n)) - n / 2) * d;
    const double eta =
        static_cast<double>(static_cast<std::int64_t>(rng.integer(n)) - n / 2) * d;
    const double x = rng.uniform(-box.halfwidth, box.halfwidth);
    const double step = (rng.coin() ? 1.0 : -1.0) *
                        std::exp(rng.uniform(std::log(1.0 / 4096.0), std::log(0.5)));
    const double grow = 1.0 + std::fabs(xi) + std::fabs(eta);
    const double envelope = sigma.growth ? sigma.growth(std::fabs(xi) + std::fabs(eta)) : 1.0;
    const double xdenom = sigma.theta(std::fabs(step)) * envelope;
    for (int a = 0; a <= max_order; ++a)
      for (int b = 0; a + b <= max_order; ++b) {
        const double weight = std::pow(grow, static_cast<double>(a + b));
        const double fixed = freq_difference(
            [&](double u, double v) { return symbol_x(sigma, x) * sigma.freq_part(u, v); },
            xi, eta, a, b, d);
        out.freq_constant = std::max(out.freq_constant, std::fabs(fixed) * weight);
        if (xdenom > 0.0) {
          const double moved = freq_difference(
              [&](double u, double v) {
                return (symbol_x(sigma, x + step) - symbol_x(sigma, x)) * sigma.freq_part(u, v);
              },
              xi, eta, a, b, d);
          out.x_constant = std::max(out.x_constant, std::fabs(moved) * weight / xdenom);
        }
      }
  }
  return out;
}

double modulus_growth_sup(const Modulus& theta, const std::function<double(double)>& growth,
                          double a, int max_k) {
  if (!(a >= 0.0 && a < 1.0))
    throw std::invalid_argument("modulus_growth_sup: need 0 <= a < 1");
  double best = 0.0;
  for (int k = 0; k <= max_k; ++k) {
    const double t = std::ldexp(1.0, -k);
    const double envelope = growth ? growth(1.0 / t) : 1.0;
    best = std::max(best, std::pow(theta(t), 1.0 - a) * envelope);
  }
  return best;
}

}  // namespace mcz
