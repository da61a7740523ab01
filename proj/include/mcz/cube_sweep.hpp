#pragma once

#include <cmath>
#include <vector>

#include "mcz/grid.hpp"
#include "mcz/parallel.hpp"

namespace mcz {

// One scalar per member cube of a family, laid out per level with the cell
// index flattened row-major.  Computed once and reused by every pointwise
// supremum that runs over the family.
struct FamilyValues {
  CubeFamily family;
  std::vector<std::vector<double>> dyadic;   // [level][flat kappa]
  std::vector<std::vector<double>> dilated;  // same shape; empty if no dilation

  double value(int level, std::int64_t flat, bool dil) const {
    return dil ? dilated[static_cast<std::size_t>(level)][static_cast<std::size_t>(flat)]
               : dyadic[static_cast<std::size_t>(level)][static_cast<std::size_t>(flat)];
  }
};

// fn(const DyadicCube&, bool dilated) -> double, evaluated for every member.
template <class Fn>
FamilyValues sweep_family(const CubeFamily& fam, Fn&& fn) {
  FamilyValues out;
  out.family = fam;
  out.dyadic.resize(static_cast<std::size_t>(fam.max_level) + 1);
  if (fam.dilation > 0.0) out.dilated.resize(static_cast<std::size_t>(fam.max_level) + 1);
  for (int v = 0; v <= fam.max_level; ++v) {
    const std::int64_t n = std::int64_t{1} << v;
    const std::int64_t total = fam.box.dim == 1 ? n : n * n;
    auto& level_vals = out.dyadic[static_cast<std::size_t>(v)];
    level_vals.resize(static_cast<std::size_t>(total));
    std::vector<double>* dil_vals = nullptr;
    if (fam.dilation > 0.0) {
      dil_vals = &out.dilated[static_cast<std::size_t>(v)];
      dil_vals->resize(static_cast<std::size_t>(total));
    }
    parallel_for(static_cast<std::size_t>(total), [&](std::size_t flat) {
      const std::int64_t k = static_cast<std::int64_t>(flat);
      DyadicCube q = fam.box.dim == 1 ? DyadicCube(fam.box, v, k)
                                      : DyadicCube(fam.box, v, k / n, k % n);
      level_vals[flat] = fn(q, false);
      if (dil_vals) (*dil_vals)[flat] = fn(q, true);
    });
  }
  return out;
}

// Largest value over every member cube.
double family_max(const FamilyValues& vals);

// Pointwise supremum over the family: at each sample of a grid with the given
// resolution, the max over member cubes containing that sample of the product
// of the parts' per-cube values.  Samples contained in no member (possible
// only for dilated-only families) get 0.
GridFunction sup_over_family(const Box& box, int grid_levels,
                             const std::vector<const FamilyValues*>& parts);

inline GridFunction sup_over_family(const Box& box, int grid_levels, const FamilyValues& vals) {
  return sup_over_family(box, grid_levels, std::vector<const FamilyValues*>{&vals});
}

}  // namespace mcz
