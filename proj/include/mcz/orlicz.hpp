#pragma once

#include "mcz/cube_sweep.hpp"
#include "mcz/grid.hpp"

namespace mcz {

// phi(t) = t * (1 + log+ t), natural log.  Convex, increasing, phi(1) = 1.
double phi(double t);

// m-fold composition phi(phi(...)); m >= 1.
double phi_iter(double t, int m);

// Luxemburg-type average over a cube: the lambda > 0 at which the cube mean
// of phi_iter(|f| / lambda, m) crosses 1, located by bisection to relative
// tolerance tol.  Zero samples give 0.  Since phi_iter is convex with value 1
// at 1, [mean |f|, max |f|] always brackets the crossing.
double orlicz_average(const GridFunction& f, const DyadicCube& q, int m = 1, double tol = 1e-8);
double orlicz_average(const GridFunction& f, const Cube& c, int m = 1, double tol = 1e-8);

// Pointwise sup over the family of the per-cube Orlicz average of |f|.
GridFunction m_loglog(const GridFunction& f, const CubeFamily& cubes, double tol = 1e-8);

// Mean oscillation sup: max over member cubes of avg_Q |b - b_Q|.
double bmo_norm(const GridFunction& b, const CubeFamily& cubes);

struct BoundPair {
  double lhs = 0.0;
  double rhs = 0.0;
  double ratio() const { return rhs != 0.0 ? lhs / rhs : (lhs == 0.0 ? 0.0 : HUGE_VAL); }
};

// avg_Q |b - b_Q| |f|  vs  bmo * orlicz_average(f, Q).  The comparison
// constant is left to the caller (fitted over a family, never assumed).
BoundPair bmo_holder_check(const GridFunction& b, const GridFunction& f, const DyadicCube& q,
                           double bmo, double tol = 1e-8);

// |b_Q - b_{tQ}|  vs  log(t + 1) * bmo.
BoundPair bmo_dilate_bound_check(const GridFunction& b, const DyadicCube& q, double t, double bmo);

// (avg_Q |b - b_{tQ}|^r)^(1/r)  vs  (1 + log t) * bmo.
BoundPair bmo_dilated_oscillation_check(const GridFunction& b, const DyadicCube& q, double t,
                                        double r, double bmo);

// Samplewise clamp of b to [-k, k].
GridFunction truncate(const GridFunction& b, double k);

}  // namespace mcz
