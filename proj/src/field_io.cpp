#include "ell/field_io.hpp"

#include <cstdint>
#include <cstring>
#include <fstream>
#include <iomanip>
#include <sstream>

#include "ell/error.hpp"

namespace ell {

namespace {

constexpr char kMagic[4] = {'E', 'L', 'L', '1'};

void write_header(std::ofstream& out, const GridSpec& g, bool complex) {
  const std::uint32_t h[3] = {std::uint32_t(g.dim()), std::uint32_t(g.n()), complex ? 1u : 0u};
  out.write(kMagic, 4);
  out.write(reinterpret_cast<const char*>(h), sizeof h);
}

std::ofstream open_out(const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorKind::Io, "cannot write " + path.string());
  return out;
}

struct Header {
  GridSpec grid;
  bool complex;
};

Header read_header(std::ifstream& in, const std::filesystem::path& path) {
  char magic[4];
  std::uint32_t h[3];
  in.read(magic, 4);
  in.read(reinterpret_cast<char*>(h), sizeof h);
  if (!in || std::memcmp(magic, kMagic, 4) != 0)
    throw Error(ErrorKind::Io, path.string() + " is not a field container");
  return {GridSpec(int(h[0]), int(h[1])), h[2] != 0};
}

template <class T>
Field<T> read_payload(const std::filesystem::path& path, bool want_complex) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::Io, "cannot read " + path.string());
  const Header hdr = read_header(in, path);
  if (hdr.complex != want_complex)
    throw Error(ErrorKind::Io, path.string() + (want_complex ? " holds a real field" : " holds a complex field"));
  Field<T> f(hdr.grid);
  in.read(reinterpret_cast<char*>(f.data()), std::streamsize(f.size() * sizeof(T)));
  if (!in) throw Error(ErrorKind::Io, path.string() + " is truncated");
  return f;
}

}  // namespace

void write_field(const std::filesystem::path& path, const RealField& f) {
  auto out = open_out(path);
  write_header(out, f.grid, false);
  out.write(reinterpret_cast<const char*>(f.data()), std::streamsize(f.size() * sizeof(double)));
}

void write_field(const std::filesystem::path& path, const ComplexField& f) {
  auto out = open_out(path);
  write_header(out, f.grid, true);
  out.write(reinterpret_cast<const char*>(f.data()), std::streamsize(f.size() * sizeof(cplx)));
}

RealField read_real_field(const std::filesystem::path& path) { return read_payload<double>(path, false); }

ComplexField read_complex_field(const std::filesystem::path& path) { return read_payload<cplx>(path, true); }

void write_points_csv(const std::filesystem::path& path, const PointConfiguration& c) {
  std::ofstream out(path);
  if (!out) throw Error(ErrorKind::Io, "cannot write " + path.string());
  out << std::setprecision(17);
  for (const Point& p : c.x) {
    for (int a = 0; a < c.d; ++a) out << (a ? "," : "") << p[std::size_t(a)];
    out << '\n';
  }
}

PointConfiguration read_points_csv(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::Io, "cannot read " + path.string());
  PointConfiguration c;
  c.d = 0;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::stringstream ss(line);
    std::string cell;
    Point p{0.0, 0.0, 0.0};
    int a = 0;
    while (std::getline(ss, cell, ',')) {
      if (a >= 3) throw Error(ErrorKind::Io, "too many columns in " + path.string());
      p[std::size_t(a++)] = std::stod(cell);
    }
    if (c.d == 0) c.d = a;
    if (a != c.d) throw Error(ErrorKind::Io, "ragged rows in " + path.string());
    c.x.push_back(p);
  }
  c.validate();
  return c;
}

}  // namespace ell
