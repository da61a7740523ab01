#include "mcz/grid_io.hpp"

#include <bit>
#include <cstdint>
#include <cstdlib>
#include <cstring>
#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

namespace mcz {

using nlohmann::json;

static_assert(sizeof(double) == 8);

namespace {

std::uint64_t to_le_bits(double v) {
  std::uint64_t bits;
  std::memcpy(&bits, &v, 8);
  if constexpr (std::endian::native == std::endian::big) {
    bits = __builtin_bswap64(bits);
  }
  return bits;
}

double from_le_bits(std::uint64_t bits) {
  if constexpr (std::endian::native == std::endian::big) {
    bits = __builtin_bswap64(bits);
  }
  double v;
  std::memcpy(&v, &bits, 8);
  return v;
}

}  // namespace

void write_grid(const GridFunction& f, std::ostream& out, GridEncoding enc) {
  json header = {{"dim", f.dim()},
                 {"halfwidth", f.box().halfwidth},
                 {"levels", f.levels()},
                 {"encoding", enc == GridEncoding::csv ? "csv" : "raw"}};
  out << header.dump() << '\n';
  if (enc == GridEncoding::csv) {
    std::ostringstream row;
    row.precision(17);
    for (std::size_t i = 0; i < f.size(); ++i) {
      row.str("");
      row << i << ',' << f[i] << '\n';
      out << row.str();
    }
  } else {
    for (std::size_t i = 0; i < f.size(); ++i) {
      const std::uint64_t bits = to_le_bits(f[i]);
      char buf[8];
      std::memcpy(buf, &bits, 8);
      out.write(buf, 8);
    }
  }
  if (!out) throw std::runtime_error("write_grid: stream failure");
}

void write_grid_file(const GridFunction& f, const std::string& path, GridEncoding enc) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("write_grid_file: cannot open " + path);
  write_grid(f, out, enc);
}

GridFunction read_grid(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) throw std::runtime_error("read_grid: missing header");
  json header;
  try {
    header = json::parse(line);
  } catch (const json::exception& e) {
    throw std::runtime_error(std::string("read_grid: bad header: ") + e.what());
  }
  const Box box(header.at("dim").get<int>(), header.at("halfwidth").get<double>());
  const int levels = header.at("levels").get<int>();
  const std::string enc = header.at("encoding").get<std::string>();
  GridFunction f(box, levels);
  if (enc == "csv") {
    for (std::size_t k = 0; k < f.size(); ++k) {
      if (!std::getline(in, line)) throw std::runtime_error("read_grid: truncated csv payload");
      const auto comma = line.find(',');
      if (comma == std::string::npos) throw std::runtime_error("read_grid: malformed csv row");
      const std::size_t idx = std::stoull(line.substr(0, comma));
      if (idx >= f.size()) throw std::runtime_error("read_grid: csv index out of range");
      // strtod, not stod: stod throws on subnormals (ERANGE), losing values
      // the writer emits exactly.
      const std::string text = line.substr(comma + 1);
      char* end = nullptr;
      const double value = std::strtod(text.c_str(), &end);
      if (end == text.c_str()) throw std::runtime_error("read_grid: malformed csv value");
      f[idx] = value;
    }
  } else if (enc == "raw") {
    for (std::size_t k = 0; k < f.size(); ++k) {
      char buf[8];
      in.read(buf, 8);
      if (in.gcount() != 8) throw std::runtime_error("read_grid: truncated raw payload");
      std::uint64_t bits;
      std::memcpy(&bits, buf, 8);
      f[k] = from_le_bits(bits);
    }
  } else {
    throw std::runtime_error("read_grid: unknown encoding '" + enc + "'");
  }
  return f;
}

GridFunction read_grid_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("read_grid_file: cannot open " + path);
  return read_grid(in);
}

}  // namespace mcz
