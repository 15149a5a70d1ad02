#pragma once

#include <filesystem>

#include "ell/coulomb.hpp"
#include "ell/field.hpp"

namespace ell {

// Binary field container, little-endian:
//   "ELL1" | u32 d | u32 n | u32 complex flag | f64 payload
// Payload is in storage order (axis 1 fastest); complex values are (re, im).
void write_field(const std::filesystem::path& path, const RealField& f);
void write_field(const std::filesystem::path& path, const ComplexField& f);
/// Complex containers are rejected by read_real_field and vice versa (Io).
RealField read_real_field(const std::filesystem::path& path);
ComplexField read_complex_field(const std::filesystem::path& path);

/// One row per point, d columns, 17 significant digits, no header.
void write_points_csv(const std::filesystem::path& path, const PointConfiguration& c);
PointConfiguration read_points_csv(const std::filesystem::path& path);

}  // namespace ell
