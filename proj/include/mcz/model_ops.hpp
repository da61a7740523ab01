#pragma once

#include <complex>
#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "mcz/czo.hpp"
#include "mcz/grid.hpp"
#include "mcz/modulus.hpp"
#include "mcz/rng.hpp"

namespace mcz {

// ---------------------------------------------------------------------------
// Molecules: unit profiles on (0, 1), placed on dyadic cubes with L^2-type
// normalization side^(-1/2) psi((x - corner) / side).
// ---------------------------------------------------------------------------

enum class MoleculeShape { bump, tent };

// Unit profile: smooth bump e^4 exp(-1/(u(1-u))) or tent 1 - |2u - 1|, both
// vanishing outside (0, 1) and peaking at 1.
double molecule_profile(MoleculeShape shape, double u);

// Mean-zero variant psi(2u) - psi(2u - 1): two half-size copies of opposite
// sign.  On a grid with an even number of cells per cube the two halves hit
// the same sample offsets, so the discrete mean vanishes exactly.
double molecule_profile_zero_mean(MoleculeShape shape, double u);

struct MoleculeSpec {
  MoleculeShape shape = MoleculeShape::bump;
  bool zero_mean = false;
  int decay_order = 11;  // N in the (1 + |u - 1/2|)^-N decay bound
};

double molecule_spec_profile(const MoleculeSpec& spec, double u);

// side^(-1/2) psi((x - corner)/side) sampled on the grid.  The cube must not
// be finer than the grid.
GridFunction molecule(const MoleculeSpec& spec, const DyadicCube& q, int grid_levels);

// Discrete L^2 norm of the normalized molecule, computed on the unit profile
// with `samples_per_cube` midpoint samples.  Every cube of a level shares the
// same offsets, so the sampled molecule's norm equals this for each kappa.
double molecule_l2_norm(const MoleculeSpec& spec, std::int64_t samples_per_cube);

// Molecule conditions measured on the unit profile over a probe grid plus
// random pairs: the size constant sup |psi(u)| (1 + |u - 1/2|)^N and the
// smallest A with |psi(u) - psi(w)| <= A theta(|u - w|)
// [(1 + |u-1/2|)^-N + (1 + |w-1/2|)^-N] over pairs |u - w| <= (1 + |u-1/2|)/2.
struct MoleculeCheck {
  double size_constant = 0.0;
  double regularity_constant = 0.0;
  int pairs = 0;
};
MoleculeCheck molecule_check(const MoleculeSpec& spec, const Modulus& theta, int probes,
                             Rng& rng);

// ---------------------------------------------------------------------------
// Dyadic paraproduct: Pi(f, g) = sum over cubes up to max_level of
// |Q|^(-1/2) <f, phi1_Q> <g, phi2_Q> phi3_Q.
// ---------------------------------------------------------------------------

struct ParaproductSpec {
  MoleculeSpec left;                          // phi1, paired with f
  MoleculeSpec right;                         // phi2, paired with g
  MoleculeSpec out;                           // phi3
  int max_level = 8;
  Modulus regularity = Modulus::lipschitz();  // modulus the kernel checks run against
};

class Paraproduct {
 public:
  Paraproduct(const ParaproductSpec& spec, const Box& box);

  const ParaproductSpec& spec() const { return spec_; }
  const Box& box() const { return box_; }

  // Accumulates level by level, cube by cube, in a fixed order — reruns are
  // byte-identical.
  GridFunction apply(const GridFunction& f, const GridFunction& g) const;

  // The bilinear kernel K(x, y1, y2) = sum_Q |Q|^(-1/2) phi1(y1) phi2(y2)
  // phi3(x), evaluated from the analytic profiles (no grid).  A term
  // contributes only when all three points land in the same cube.
  Kernel kernel() const;

  MultilinearOperator as_operator() const;

 private:
  ParaproductSpec spec_;
  Box box_;
};

// ---------------------------------------------------------------------------
// Bilinear Fourier-multiplier operator on the periodized box: frequencies
// xi_k = k pi / R, k in [-N/2, N/2), and
//   T(f, g)(x) = g_x(x) Re sum_{k,l} s(xi_k, xi_l) c1_k c2_l e^{i(xi_k+xi_l)x}.
// The symbol is separable: an x-part times a frequency part.
// ---------------------------------------------------------------------------

struct Symbol {
  std::function<double(double)> x_part;             // null means identically 1
  std::function<double(double, double)> freq_part;  // s(xi, eta), required
  Modulus theta = Modulus::lipschitz();             // x-regularity modulus
  std::function<double(double)> growth;             // Omega envelope; null means 1
};

std::vector<double> bpdo_frequencies(const Box& box, int levels);

// c_k = (h / 2R) sum_i f_i e^{-i xi_k x_i}, k ascending from -N/2.
std::vector<std::complex<double>> fourier_coefficients(const GridFunction& f);

// Re sum_k c_k e^{i xi_k x_i}.  Midpoint sampling makes this the exact
// inverse of fourier_coefficients, up to rounding.
GridFunction fourier_synthesis(const Box& box, int levels,
                               std::span<const std::complex<double>> c);

// Fraction of squared coefficient mass at |k| >= N/4; near 1/2 the discrete
// frequency sums stop resembling their continuum counterparts.
double aliasing_fraction(const GridFunction& f);

// Separable fast path: the double frequency sum collapses along diagonals
// k + l = s, at O(N^2).
GridFunction bpdo_apply(const Symbol& sigma, const GridFunction& f, const GridFunction& g);

// Literal triple loop over (x, k, l); O(N^3), for cross-checks at small N.
GridFunction bpdo_apply_direct(const Symbol& sigma, const GridFunction& f,
                               const GridFunction& g);

MultilinearOperator bpdo_operator(const Symbol& sigma);

// Symbol-class constants from undivided finite differences on the frequency
// lattice (step pi / R), orders alpha + beta <= max_order:
//   freq_constant = sup |D^alpha_xi D^beta_eta sigma| (1 + |xi| + |eta|)^(alpha+beta),
//   x_constant    = the same applied to sigma(x', ., .) - sigma(x, ., .),
//                   divided by theta(|x' - x|) Omega(|xi| + |eta|).
struct SymbolClassReport {
  double freq_constant = 0.0;
  double x_constant = 0.0;
  int probes = 0;
};
SymbolClassReport symbol_class_check(const Symbol& sigma, const Box& box, int levels,
                                     int max_order, int probes, Rng& rng);

// sup over t = 2^-k, k = 0..max_k, of theta(t)^(1-a) * Omega(1/t): the
// compatibility functional tying the x-modulus to the frequency growth.
double modulus_growth_sup(const Modulus& theta, const std::function<double(double)>& growth,
                          double a, int max_k);

}  // namespace mcz
