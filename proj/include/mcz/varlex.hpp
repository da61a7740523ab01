#pragma once

#include <span>
#include <vector>

#include "mcz/cube_sweep.hpp"
#include "mcz/grid.hpp"
#include "mcz/orlicz.hpp"

namespace mcz {

// Variable exponent: samples of p(x) together with the limiting value p_inf
// the generator prescribes (the box never reaches infinity, so the limit is
// data, not something measurable from samples).
struct VarExponent {
  GridFunction p;
  double p_inf = 0.0;

  double p_minus() const { return p.min_value(); }
  double p_plus() const { return p.max_value(); }
};

VarExponent make_constant_exponent(const Box& box, int levels, double value);

// p(x) = base + amp / (1 + |x|^2); p_inf = base.
VarExponent make_rational_bump_exponent(const Box& box, int levels, double base, double amp);

// Luxemburg norm: the lambda at which integral (|f|/lambda)^p(x) dx crosses 1,
// bisected to relative tolerance tol; 0 for the zero function.  Requires
// p_minus >= 1.
double varlex_norm(const GridFunction& f, const VarExponent& p, double tol = 1e-8);

// Same norm with f restricted to a cube (samples outside contribute nothing).
double varlex_norm_on(const GridFunction& f, const VarExponent& p, const DyadicCube& q,
                      double tol = 1e-8);
double varlex_norm_on(const GridFunction& f, const VarExponent& p, const Cube& c,
                      double tol = 1e-8);

// Pointwise conjugate p'(x) = p(x)/(p(x)-1); requires p_minus > 1.
VarExponent conjugate(const VarExponent& p);

// Exponent scaled by s > 0 (for the |f|^s homogeneity identity).
VarExponent scale_exponent(const VarExponent& p, double s);

// Pointwise harmonic combination 1/r = 1/p + 1/q (and its m-fold variant).
VarExponent harmonic_sum(const VarExponent& p, const VarExponent& q);
VarExponent harmonic_sum(std::span<const VarExponent> ps);

// Continuity-at-scale constants: c0 = max over sample pairs with
// 0 < |x-y| <= 1/2 of |p(x)-p(y)| * log(1/|x-y|); cinf = max over samples of
// |p(x)-p_inf| * log(e+|x|).  Finiteness plus refinement stability is the
// membership proxy; the caller classifies across levels.
struct LogHolderConstants {
  double c0 = 0.0;
  double cinf = 0.0;
};
LogHolderConstants log_holder_constants(const VarExponent& p);

// || |f|^s ||_{p()}  vs  ||f||^s_{s p()}.
BoundPair homogeneity_check(const GridFunction& f, const VarExponent& p, double s,
                            double tol = 1e-8);

// ||f g||_{r()}  vs  ||f||_{p()} ||g||_{q()} with 1/r = 1/p + 1/q.
BoundPair gen_holder_check(const GridFunction& f, const GridFunction& g, const VarExponent& p,
                           const VarExponent& q, double tol = 1e-8);

// || prod f_j ||_{q()}  vs  prod ||f_j||_{q_j()} with 1/q = sum 1/q_j.
BoundPair gen_holder_m_check(std::span<const GridFunction> fs, std::span<const VarExponent> qs,
                             double tol = 1e-8);

// Variable-exponent Muckenhoupt constant:
// sup_B |B|^(-1) ||v chi_B||_{p()} ||v^(-1) chi_B||_{p'()}, discrete measure.
double var_ap_constant(const GridFunction& v, const VarExponent& p, const CubeFamily& cubes,
                       double tol = 1e-8);

// Both sides of the product-weight membership: the constant of
// (prod v_j)^(1/m) in A_{m p()} with 1/p = sum 1/p_j, and each factor's
// constant in A_{p_j()}.
struct ProductWeightSides {
  double product = 0.0;
  std::vector<double> factors;
};
ProductWeightSides product_weight_sides(std::span<const GridFunction> vs,
                                        std::span<const VarExponent> ps, const CubeFamily& cubes,
                                        double tol = 1e-8);

}  // namespace mcz
