#pragma once

#include <functional>
#include <memory>
#include <optional>
#include <span>
#include <vector>

#include "mcz/grid.hpp"
#include "mcz/maximal.hpp"
#include "mcz/modulus.hpp"
#include "mcz/orlicz.hpp"
#include "mcz/rng.hpp"
#include "mcz/varlex.hpp"
#include "mcz/weights.hpp"

namespace mcz {

// m-linear kernel on the line: evaluation at (x, y_1..y_m) off the diagonal,
// together with the modulus its regularity is measured against and a size
// constant (declared up front or fitted by the checks).
struct Kernel {
  int arity = 1;
  std::function<double(double, std::span<const double>)> eval;
  Modulus omega = Modulus::lipschitz();
  double size_constant = 1.0;
};

struct KernelTuple {
  double x = 0.0;
  std::vector<double> y;
};

// Random tuples in the box with every |x - y_j| at least min_sep.
std::vector<KernelTuple> sample_kernel_tuples(const Box& box, int arity, int count,
                                              double min_sep, Rng& rng);

// Displacement fraction for the regularity checks: perturbed points stay
// within half the largest distance to the y's.
inline constexpr double kKernelDisplacementFraction = 0.5;

struct KernelFit {
  double c1 = 0.0;  // fitted amplitude
  double c2 = 1.0;  // fitted argument scale in omega(c2 t); 1 for size checks
  int used = 0;
  int skipped = 0;
};

// max over tuples of |K| * (sum_j |x - y_j|)^(m n); c1 is the fitted size
// constant.  Tuples on the diagonal are skipped and counted.
KernelFit kernel_size_check(const Kernel& k, std::span<const KernelTuple> tuples);

// Regularity in x: each tuple is perturbed to x' with
// |x - x'| <= kKernelDisplacementFraction * max_j |x - y_j| and the fit bounds
// |K(x,y) - K(x',y)| * (sum |x - y_j|)^(m n) by c1 * omega(c2 r) with
// r = |x - x'| / sum |x - y_j|.  c2 runs over a dyadic ladder; the smallest
// scale whose amplitude is within a factor 2 of the asymptote is reported.
KernelFit kernel_reg_x_check(const Kernel& k, std::span<const KernelTuple> tuples, Rng& rng);

// Regularity in a y slot, same protocol.
KernelFit kernel_reg_y_check(const Kernel& k, std::span<const KernelTuple> tuples, int slot,
                             Rng& rng);

// Midpoint quadrature of the kernel against f_1..f_m, skipping cells within
// `exclusion` cells of any diagonal y_j = x.  Exact only away from supports;
// the library uses it to cross-check model operators at points off the
// support, so evaluation at a subset of cells is the common call.
GridFunction apply_kernel_operator(const Kernel& k, std::span<const GridFunction> fs,
                                   int exclusion = 1);
std::vector<double> apply_kernel_operator_at(const Kernel& k, std::span<const GridFunction> fs,
                                             std::span<const std::int64_t> cells,
                                             int exclusion = 1);

// An m-linear operator as a value: arity plus an apply callback.
class MultilinearOperator {
 public:
  using Apply = std::function<GridFunction(std::span<const GridFunction>)>;

  MultilinearOperator() = default;
  MultilinearOperator(std::size_t arity, Apply apply)
      : arity_(arity), apply_(std::move(apply)) {}

  std::size_t arity() const { return arity_; }

  GridFunction operator()(std::span<const GridFunction> fs) const;
  GridFunction operator()(const GridFunction& f) const;
  GridFunction operator()(const GridFunction& f, const GridFunction& g) const;

 private:
  std::size_t arity_ = 0;
  Apply apply_;
};

// [b, T]_j : two-term commutator in slot j (0-based).
MultilinearOperator commutator_j(const MultilinearOperator& T, const GridFunction& b,
                                 std::size_t j);

// Sum over slots of single commutators.
MultilinearOperator commutator_sigma(const MultilinearOperator& T,
                                     std::span<const GridFunction> bs);

// Iterated commutator over the slot subset sigma, computed by the expanded
// inclusion-exclusion sum
//   sum_{S subset sigma} (-1)^|S| (prod_{i in sigma\S} b_i) T(..., b_i f_i for i in S, ...)
// rather than by nesting single commutators; the nesting identity is a test
// against this form, not its implementation.
MultilinearOperator commutator_pi(const MultilinearOperator& T, std::span<const GridFunction> bs,
                                  std::span<const std::size_t> sigma);
MultilinearOperator commutator_pi(const MultilinearOperator& T, std::span<const GridFunction> bs);

// Both sides of the pointwise sharp-maximal bound for the iterated
// commutator: lhs = M#_delta(T_Pib(f)), rhs as the three-block majorant with
// the comparison constant left to the caller.  Requires 0 < delta < eps < 1/m.
struct PointwiseSides {
  GridFunction lhs;
  GridFunction rhs;
};
PointwiseSides sharp_bound_sides(const MultilinearOperator& T, std::span<const GridFunction> bs,
                                 std::span<const GridFunction> fs, double delta, double eps,
                                 const CubeFamily& cubes, double tol = 1e-8);

// Strong comparison under a single weight:
// lhs = integral |T_Pib(f)|^p w, rhs = (prod_j bmo_j)^p integral M_LlogL(f)^p w.
BoundPair strong_weighted_sides(const MultilinearOperator& T, std::span<const GridFunction> bs,
                                std::span<const GridFunction> fs, double p,
                                const GridFunction& w, const CubeFamily& cubes,
                                double tol = 1e-8);

// Endpoint comparison: each side is
//   sup_t (1 / phi_iter(1/t, m)) * w({ side > t^m })
// scanned over a logarithmic t-grid spanning the data.
BoundPair weak_endpoint_sides(const MultilinearOperator& T, std::span<const GridFunction> bs,
                              std::span<const GridFunction> fs, const GridFunction& w,
                              const CubeFamily& cubes, double tol = 1e-8);

// Multiple-weight strong bound:
// lhs = || T_Pib(f) ||_{L^p(nu)}, rhs = prod_j bmo_j * prod_j ||f_j||_{L^{p_j}(w_j)}.
// The _at form takes the commutator output directly, so sweeps that vary only
// the weights can reuse one operator application.
BoundPair multiweight_strong_sides_at(const GridFunction& tval, std::span<const GridFunction> bs,
                                      std::span<const GridFunction> fs, const WeightVector& wv,
                                      const CubeFamily& cubes);
BoundPair multiweight_strong_sides(const MultilinearOperator& T, std::span<const GridFunction> bs,
                                   std::span<const GridFunction> fs, const WeightVector& wv,
                                   const CubeFamily& cubes);

// Endpoint multiple-weight bound at threshold lambda:
// lhs = nu({ |T_Pib(f)| > lambda^m }),
// rhs = prod_j ( integral phi_iter(|f_j| / lambda, m) w_j )^(1/m);
// the comparison constant absorbs the dependence on the b's.
BoundPair multiweight_weak_sides_at(const GridFunction& tval, std::span<const GridFunction> fs,
                                    const WeightVector& wv, double lambda);
BoundPair multiweight_weak_sides(const MultilinearOperator& T, std::span<const GridFunction> bs,
                                 std::span<const GridFunction> fs, const WeightVector& wv,
                                 double lambda);

struct VarLexSides {
  double lhs = 0.0;
  double rhs = 0.0;
  double bmo_product = 1.0;
};

// Variable-exponent weighted bound:
// lhs = || T_Pib(f) * prod_j v_j ||_{p()},
// rhs = prod_j bmo_j * prod_j || f_j v_j ||_{p_j()}.
VarLexSides varlex_bound_sides_at(const GridFunction& tval, std::span<const GridFunction> bs,
                                  std::span<const GridFunction> fs,
                                  std::span<const VarExponent> ps,
                                  std::span<const GridFunction> vs, const CubeFamily& cubes,
                                  double tol = 1e-8);
VarLexSides varlex_bound_sides(const MultilinearOperator& T, std::span<const GridFunction> bs,
                               std::span<const GridFunction> fs, std::span<const VarExponent> ps,
                               std::span<const GridFunction> vs, const CubeFamily& cubes,
                               double tol = 1e-8);

}  // namespace mcz
