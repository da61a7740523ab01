#pragma once

#include <iosfwd>
#include <string>

#include "mcz/grid.hpp"

namespace mcz {

// On-disk format: one JSON header line {"dim","halfwidth","levels","encoding"}
// followed by the payload.  encoding "csv" stores "index,value" rows in
// row-major index order; encoding "raw" stores the samples as little-endian
// IEEE-754 doubles, row-major.  Readers accept either.
enum class GridEncoding { csv, raw };

void write_grid(const GridFunction& f, std::ostream& out, GridEncoding enc);
void write_grid_file(const GridFunction& f, const std::string& path, GridEncoding enc);

GridFunction read_grid(std::istream& in);
GridFunction read_grid_file(const std::string& path);

}  // namespace mcz
