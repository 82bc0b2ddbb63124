#include "lpb/snapshot.hpp"

#include <array>
#include <bit>
#include <cstring>
#include <fstream>
#include <istream>
#include <ostream>

namespace lpb {
namespace {

constexpr char kMagic[6] = {'B', 'S', 'N', 'A', 'P', '1'};

template <class U>
void put_le(std::ostream& os, U value) {
  std::array<char, sizeof(U)> bytes{};
  for (std::size_t i = 0; i < sizeof(U); ++i) bytes[i] = static_cast<char>((value >> (8 * i)) & 0xFF);
  os.write(bytes.data(), bytes.size());
}

template <class U>
U get_le(std::istream& is) {
  std::array<unsigned char, sizeof(U)> bytes{};
  is.read(reinterpret_cast<char*>(bytes.data()), bytes.size());
  if (!is) throw std::runtime_error("BSNAP1: truncated stream");
  U value = 0;
  for (std::size_t i = 0; i < sizeof(U); ++i) value |= static_cast<U>(bytes[i]) << (8 * i);
  return value;
}

void put_f64(std::ostream& os, double v) { put_le<std::uint64_t>(os, std::bit_cast<std::uint64_t>(v)); }
double get_f64(std::istream& is) { return std::bit_cast<double>(get_le<std::uint64_t>(is)); }

}  // namespace

void write_bsnap(std::ostream& os, const SpectralField& f) {
  os.write(kMagic, sizeof(kMagic));
  put_le<std::uint8_t>(os, static_cast<std::uint8_t>(f.grid().n));
  put_le<std::uint32_t>(os, static_cast<std::uint32_t>(f.grid().N));
  put_f64(os, f.grid().L);
  put_le<std::uint8_t>(os, static_cast<std::uint8_t>(f.components()));
  for (const auto& c : f.data()) {
    put_f64(os, c.real());
    put_f64(os, c.imag());
  }
  if (!os) throw std::runtime_error("BSNAP1: write failed");
}

SpectralField read_bsnap(std::istream& is) {
  char magic[6];
  is.read(magic, sizeof(magic));
  if (!is || std::memcmp(magic, kMagic, sizeof(kMagic)) != 0) throw std::runtime_error("BSNAP1: bad magic");
  GridSpec grid;
  grid.n = get_le<std::uint8_t>(is);
  grid.N = static_cast<int>(get_le<std::uint32_t>(is));
  grid.L = get_f64(is);
  int comps = get_le<std::uint8_t>(is);
  grid.validate();
  SpectralField f(grid, comps);
  for (auto& c : f.data()) {
    double re = get_f64(is);
    double im = get_f64(is);
    c = cplx(re, im);
  }
  return f;
}

void save_bsnap(const std::filesystem::path& path, const SpectralField& f) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw std::runtime_error("cannot open " + path.string() + " for writing");
  write_bsnap(os, f);
}

SpectralField load_bsnap(const std::filesystem::path& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw std::runtime_error("cannot open " + path.string());
  return read_bsnap(is);
}

}  // namespace lpb
