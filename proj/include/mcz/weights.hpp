#pragma once

#include <span>
#include <vector>

#include "mcz/cube_sweep.hpp"
#include "mcz/grid.hpp"

namespace mcz {

// Muckenhoupt constant over the family, p > 1:
// sup_Q (avg_Q w) (avg_Q w^(1-p'))^(p-1).  Scale-invariant and >= 1.
double ap_constant(const GridFunction& w, double p, const CubeFamily& cubes);

// A_1 constant: max over samples of Mw / w.
double a1_constant(const GridFunction& w, const CubeFamily& cubes);

// A weight per slot with its exponent; exponents p_j >= 1.
struct WeightVector {
  std::vector<GridFunction> w;
  std::vector<double> p;

  std::size_t arity() const { return w.size(); }
  // 1/p = sum_j 1/p_j.
  double p_total() const;
  // nu = prod_j w_j^(p/p_j), samplewise.
  GridFunction nu() const;
};

// Multiple-weight constant:
// sup_Q (avg_Q nu)^(1/p) * prod_j (avg_Q w_j^(1-p_j'))^(1/p_j'),
// where a slot with p_j = 1 contributes (inf_Q w_j)^(-1).
double multi_ap_constant(const WeightVector& wv, const CubeFamily& cubes);

// Both sides of the componentwise factorization of the multiple-weight
// condition: the joint constant, per-slot constants of w_j^(1-p_j') in
// A_{m p_j'} (for p_j = 1, of w_j^(1/m) in A_1), and the constant of nu in
// A_{mp}.  Stability across refinement levels is classified by the caller.
struct MultiApSides {
  double joint = 0.0;
  std::vector<double> component;
  double nu = 0.0;
};
MultiApSides multi_ap_sides(const WeightVector& wv, const CubeFamily& cubes);

// Samples |x|^a; the value in cells nearest the singularity is what the
// midpoint rule sees at |x| >= h/2, additionally clamped there for safety.
GridFunction power_weight(const Box& box, int levels, double a);

// Refinement-based divergence classifier shared by every box-truncated
// constant: a sequence of constants, one per level, is flagged divergent when
// it grows monotonically (within slack) and the last exceeds the first
// tenfold.
struct StabilityVerdict {
  bool divergent = false;
  double growth = 0.0;  // last / first
};
StabilityVerdict classify_stability(std::span<const double> per_level);

}  // namespace mcz
