#include "mcz/modulus.hpp"

#include <cmath>
#include <stdexcept>

namespace mcz {

Modulus Modulus::power(double e) {
  if (!(e > 0.0 && e <= 1.0)) throw std::invalid_argument("Modulus::power: need 0 < e <= 1");
  return Modulus(ModulusKind::power, e);
}

Modulus Modulus::lipschitz() { return Modulus(ModulusKind::lipschitz, 1.0); }

Modulus Modulus::log_power(double b) {
  if (!(b > 0.0)) throw std::invalid_argument("Modulus::log_power: need b > 0");
  return Modulus(ModulusKind::log_power, b);
}

double Modulus::operator()(double t) const {
  if (t < 0.0) throw std::invalid_argument("Modulus: negative argument");
  if (t == 0.0) return 0.0;
  switch (kind_) {
    case ModulusKind::power:
      return std::pow(t, param_);
    case ModulusKind::lipschitz:
      return t < 1.0 ? t : 1.0;
    case ModulusKind::log_power:
      if (t >= 1.0) return 1.0;
      return std::pow(std::log(std::exp(1.0) / t), -param_);
  }
  return 0.0;
}

std::string Modulus::name() const {
  switch (kind_) {
    case ModulusKind::power:
      return "power(" + std::to_string(param_) + ")";
    case ModulusKind::lipschitz:
      return "lipschitz";
    case ModulusKind::log_power:
      return "log-power(" + std::to_string(param_) + ")";
  }
  return "?";
}

bool Modulus::midpoint_concave_on_ladder(int kmax) const {
  const Modulus& w = *this;
  for (int k = 1; k < kmax; ++k) {
    const double a = std::ldexp(1.0, -(k + 1));
    const double b = std::ldexp(1.0, -(k - 1));
    const double mid = 0.5 * (a + b);
    if (w(mid) + 1e-12 < 0.5 * (w(a) + w(b))) return false;
  }
  return true;
}

namespace {

// Composite Simpson on [0, U] with mesh doubling until 1e-8 relative change.
template <class Fn>
double simpson_adaptive(Fn&& g, double U) {
  int n = 64;
  auto simpson = [&](int panels) {
    const double h = U / panels;
    double s = g(0.0) + g(U);
    for (int i = 1; i < panels; ++i) s += (i % 2 == 1 ? 4.0 : 2.0) * g(i * h);
    return s * h / 3.0;
  };
  double prev = simpson(n);
  for (int iter = 0; iter < 14; ++iter) {
    n *= 2;
    const double cur = simpson(n);
    if (std::fabs(cur - prev) <= 1e-8 * std::fabs(cur) + 1e-16) return cur;
    prev = cur;
  }
  return prev;
}

// Domain ladder U = 40 * 4^k.  The integrand lives on [0, inf) after the
// t = e^-u substitution; divergence shows up as growth along the ladder, not
// as a mesh refinement failure.
template <class Fn>
DiniResult ladder_integral(Fn&& g) {
  DiniResult res;
  double first = 0.0, prev = 0.0;
  bool monotone = true;
  double U = 40.0;
  for (int rung = 0; rung < 8; ++rung, U *= 4.0) {
    const double cur = simpson_adaptive(g, U);
    if (rung == 0) {
      first = cur;
    } else {
      if (std::fabs(cur - prev) <= 1e-8 * std::fabs(cur) + 1e-14) {
        res.value = cur;
        res.converged = true;
        res.growth = first != 0.0 ? cur / first : 1.0;
        return res;
      }
      if (cur < prev * 0.999) monotone = false;
    }
    prev = cur;
  }
  res.value = prev;
  res.growth = first != 0.0 ? prev / first : 1.0;
  res.divergent = monotone && res.growth > 10.0;
  res.converged = false;
  return res;
}

}  // namespace

DiniResult dini_integral(const Modulus& omega, double a) {
  if (!(a > 0.0)) throw std::invalid_argument("dini_integral: a must be positive");
  return ladder_integral([&](double u) { return std::pow(omega(std::exp(-u)), a); });
}

DiniResult log_dini_integral(const Modulus& omega, int m) {
  if (m < 0) throw std::invalid_argument("log_dini_integral: m must be >= 0");
  return ladder_integral(
      [&](double u) { return omega(std::exp(-u)) * std::pow(1.0 + u, m); });
}

double dyadic_series(const Modulus& omega, int m, int kmax) {
  if (kmax < 1) throw std::invalid_argument("dyadic_series: kmax must be >= 1");
  double s = 0.0;
  for (int k = 1; k <= kmax; ++k)
    s += std::pow(static_cast<double>(k), m) * omega(std::ldexp(1.0, -k));
  return s;
}

}  // namespace mcz
