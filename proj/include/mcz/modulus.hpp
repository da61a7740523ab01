#pragma once

#include <string>

namespace mcz {

enum class ModulusKind { power, lipschitz, log_power };

// Modulus of continuity on [0, inf): nondecreasing, 0 at 0.  Three shapes:
//   power(e):      t^e, 0 < e <= 1
//   lipschitz():   min(t, 1)
//   log_power(b):  (log(e/t))^(-b) on (0, 1], extended by 1 beyond 1
// Only arguments <= 1 arise in the kernel checks; the extension keeps the
// function total and monotone.
class Modulus {
 public:
  static Modulus power(double e);
  static Modulus lipschitz();
  static Modulus log_power(double b);

  double operator()(double t) const;

  ModulusKind kind() const { return kind_; }
  double param() const { return param_; }
  std::string name() const;

  // Midpoint concavity probed on the dyadic ladder t = 2^-k.  The power and
  // lipschitz shapes are concave outright; the log-power shape is not near
  // t = 1, so callers record this instead of assuming it.
  bool midpoint_concave_on_ladder(int kmax = 30) const;

 private:
  Modulus(ModulusKind k, double p) : kind_(k), param_(p) {}
  ModulusKind kind_;
  double param_;
};

// Result of a truncated singular integral in log coordinates.  The value is
// the integral over the largest probed range; converged reports whether the
// domain ladder settled (Cauchy at 1e-8 relative) or merely stopped growing;
// divergent flags monotone tenfold growth across the ladder.
struct DiniResult {
  double value = 0.0;
  bool converged = false;
  bool divergent = false;
  double growth = 0.0;  // last partial / first partial across the ladder
};

// integral_0^1 omega(t)^a dt/t     (substituted t = e^-u).
DiniResult dini_integral(const Modulus& omega, double a);

// integral_0^1 (omega(t)/t) (1 + log(1/t))^m dt.
DiniResult log_dini_integral(const Modulus& omega, int m);

// sum_{k=1}^{kmax} k^m omega(2^-k).
double dyadic_series(const Modulus& omega, int m, int kmax);

}  // namespace mcz
