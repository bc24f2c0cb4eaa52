#pragma once

// Serialization of lattice functions.
//
// JSON:   {"orders":[m_1,...], "re":[...], "im":[...]}
// Binary: "RLZ1", u32 N, N x u32 orders, then size x (f64 re, f64 im), all little-endian.

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "riesz/lattice.hpp"

namespace riesz::io {

enum class Format { Json, Binary };

std::string to_json(const LatticeFunction& f);
LatticeFunction from_json(const std::string& text);

std::vector<unsigned char> to_binary(const LatticeFunction& f);
LatticeFunction from_binary(std::span<const unsigned char> bytes);

void write_function(const std::filesystem::path& path, const LatticeFunction& f, Format format);

/// Format is sniffed from the magic bytes.
LatticeFunction read_function(const std::filesystem::path& path);

/// "%.17g" with the C locale.
std::string format_double(double x);

} // namespace riesz::io
