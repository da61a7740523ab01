#pragma once

#include <span>

#include "mcz/cube_sweep.hpp"
#include "mcz/grid.hpp"
#include "mcz/orlicz.hpp"

namespace mcz {

// Hardy-Littlewood maximal function over the family: sup of avg_Q |f|.
GridFunction hl_maximal(const GridFunction& f, const CubeFamily& cubes);

// M_delta f = (M(|f|^delta))^(1/delta), 0 < delta.
GridFunction m_delta(const GridFunction& f, double delta, const CubeFamily& cubes);

// Sharp maximal function realized with the cube mean as the centering
// constant: sup of avg_Q |f - f_Q|.  Comparable within a factor of 2 to the
// inf-over-constants form.
GridFunction sharp_maximal(const GridFunction& f, const CubeFamily& cubes);

// (M#(|f|^delta))^(1/delta).
GridFunction sharp_maximal_delta(const GridFunction& f, double delta, const CubeFamily& cubes);

// Multilinear maximal functions: sup over cubes of per-slot cube averages
// multiplied across slots.
GridFunction multilinear_m(std::span<const GridFunction> fs, const CubeFamily& cubes);

// Slots averaged in L^r: product of (avg_Q |f_j|^r)^(1/r), r > 1.
GridFunction multilinear_m_r(std::span<const GridFunction> fs, double r, const CubeFamily& cubes);

// Slot i takes the Orlicz average, every other slot the plain average.
GridFunction m_i_loglog(std::span<const GridFunction> fs, std::size_t i, const CubeFamily& cubes,
                        double tol = 1e-8);

// Every slot takes the Orlicz average.
GridFunction m_loglog_multi(std::span<const GridFunction> fs, const CubeFamily& cubes,
                            double tol = 1e-8);

// sup over lambda > 0 of lambda * |{x in Q : |f(x)| > lambda}|^(1/q) with the
// discrete measure; the sup is attained approaching a sample value from
// below, so it is computed exactly from the sorted samples.
double weak_lq_norm(const GridFunction& f, double q, const DyadicCube& Q);

struct KolmogorovResult {
  double lhs = 0.0;      // |Q|^(-1/p) * ||f||_{L^p(Q)}
  double rhs = 0.0;      // C_{p,q} * |Q|^(-1/q) * ||f||_{L^{q,inf}(Q)}
  double constant = 0.0; // C_{p,q} = (q / (q - p))^(1/p)
  bool holds() const { return lhs <= rhs * (1.0 + 1e-12); }
};

// Requires 0 < p < q; throws otherwise.
KolmogorovResult kolmogorov_check(const GridFunction& f, double p, double q, const DyadicCube& Q);

// Weighted comparison of M_delta and its sharp variant over the box:
// lhs = integral (M_delta f)^p w, rhs = integral (M#_delta f)^p w.
BoundPair fefferman_stein_check(const GridFunction& f, double delta, double p,
                                const GridFunction& w, const CubeFamily& cubes);

// Weak form with phi(lambda) = lambda^p:
// each side is sup over lambda of lambda^p * w({side > lambda}).
BoundPair fs_weak_check(const GridFunction& f, double delta, double p, const GridFunction& w,
                        const CubeFamily& cubes);

// sup over lambda of lambda^p * w({g > lambda}), exact from sorted samples.
double weak_phi_sup(const GridFunction& g, const GridFunction& w, double p);

}  // namespace mcz
