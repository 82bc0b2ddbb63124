#pragma once

#include <filesystem>
#include <iosfwd>

#include "lpb/field.hpp"

namespace lpb {

/// BSNAP1 binary snapshot, little-endian:
///   "BSNAP1" | u8 n | u32 N | f64 L | u8 c | c * N^n complex128 (re, im) in field storage order.
void write_bsnap(std::ostream& os, const SpectralField& f);
SpectralField read_bsnap(std::istream& is);

void save_bsnap(const std::filesystem::path& path, const SpectralField& f);
SpectralField load_bsnap(const std::filesystem::path& path);

}  // namespace lpb
