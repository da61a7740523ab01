#include "mcz/cube_sweep.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace mcz {

double family_max(const FamilyValues& vals) {
  double best = -std::numeric_limits<double>::infinity();
  for (const auto& level : vals.dyadic)
    for (double v : level) best = std::max(best, v);
  for (const auto& level : vals.dilated)
    for (double v : level) best = std::max(best, v);
  return best;
}

namespace {

// Does the sample with axis indices (gi, gj) on a grid with cell size h lie
// in the t-dilation of the level-v cube with flat index k?  Uses the same
// center-in-interval rule as cube_cells.
bool sample_in_dilated(const Box& box, int v, std::int64_t k0, std::int64_t k1, double t,
                       double h, std::int64_t cells, std::int64_t gi, std::int64_t gj) {
  const DyadicCube q = box.dim == 1 ? DyadicCube(box, v, k0) : DyadicCube(box, v, k0, k1);
  const Cube c = dilate_cube(q, t);
  const auto r0 = detail::interval_cells(c.lo[0], c.hi[0], box.halfwidth, h, cells);
  if (gi < r0.lo || gi >= r0.hi) return false;
  if (box.dim == 1) return true;
  const auto r1 = detail::interval_cells(c.lo[1], c.hi[1], box.halfwidth, h, cells);
  return gj >= r1.lo && gj < r1.hi;
}

}  // namespace

GridFunction sup_over_family(const Box& box, int grid_levels,
                             const std::vector<const FamilyValues*>& parts) {
  if (parts.empty()) throw std::invalid_argument("sup_over_family: no parts");
  const CubeFamily& fam = parts.front()->family;
  for (const auto* p : parts)
    if (!(p->family.box == fam.box) || p->family.max_level != fam.max_level ||
        p->family.dilation != fam.dilation)
      throw std::invalid_argument("sup_over_family: parts over different families");
  if (!(fam.box == box)) throw std::invalid_argument("sup_over_family: box mismatch");

  GridFunction out(box, grid_levels);
  const std::int64_t cells = out.cells_per_axis();
  const double h = out.cell_size();
  // Dilation t reaches at most ceil((t + 1) / 2) cube widths from the cube
  // whose column the sample sits in.
  const std::int64_t reach =
      fam.dilation > 0.0 ? static_cast<std::int64_t>(std::ceil((fam.dilation + 1.0) / 2.0)) : 0;

  const std::int64_t rows = box.dim == 1 ? cells : cells;
  parallel_for(static_cast<std::size_t>(rows), [&](std::size_t row) {
    const std::int64_t gi = static_cast<std::int64_t>(row);
    const std::int64_t jmax = box.dim == 1 ? 1 : cells;
    for (std::int64_t gj = 0; gj < jmax; ++gj) {
      double best = -std::numeric_limits<double>::infinity();
      bool found = false;
      for (int v = 0; v <= fam.max_level && v <= grid_levels; ++v) {
        const int shift = grid_levels - v;
        const std::int64_t n = std::int64_t{1} << v;
        const std::int64_t k0 = gi >> shift;
        const std::int64_t k1 = box.dim == 2 ? (gj >> shift) : 0;
        {
          const std::int64_t flat = box.dim == 1 ? k0 : k0 * n + k1;
          double prod = 1.0;
          for (const auto* p : parts) prod *= p->value(v, flat, false);
          if (!found || prod > best) best = prod;
          found = true;
        }
        if (reach > 0) {
          for (std::int64_t d0 = -reach; d0 <= reach; ++d0) {
            const std::int64_t c0 = k0 + d0;
            if (c0 < 0 || c0 >= n) continue;
            const std::int64_t d1max = box.dim == 2 ? reach : 0;
            for (std::int64_t d1 = -d1max; d1 <= d1max; ++d1) {
              const std::int64_t c1 = k1 + d1;
              if (box.dim == 2 && (c1 < 0 || c1 >= n)) continue;
              if (!sample_in_dilated(box, v, c0, c1, fam.dilation, h, cells, gi, gj)) continue;
              const std::int64_t flat = box.dim == 1 ? c0 : c0 * n + c1;
              double prod = 1.0;
              for (const auto* p : parts) prod *= p->value(v, flat, true);
              if (!found || prod > best) best = prod;
              found = true;
            }
          }
        }
      }
      if (box.dim == 1)
        out[static_cast<std::size_t>(gi)] = found ? best : 0.0;
      else
        out.at(gi, gj) = found ? best : 0.0;
    }
  });
  return out;
}

}  // namespace mcz
