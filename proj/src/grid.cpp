#include "lpb/grid.hpp"

#include <cmath>
#include <map>
#include <mutex>
#include <sstream>

namespace lpb {

bool is_power_of_two(long long v) { return v > 0 && (v & (v - 1)) == 0; }

void GridSpec::validate() const {
  if (n != 2 && n != 3) throw std::invalid_argument("grid.n must be 2 or 3");
  if (!is_power_of_two(N) || N < 4) throw std::invalid_argument("grid.N must be a power of two >= 4");
  if (!(L > 0.0) || !std::isfinite(L)) throw std::invalid_argument("grid.L must be positive");
}

std::size_t GridSpec::points() const {
  std::size_t p = 1;
  for (int a = 0; a < n; ++a) p *= static_cast<std::size_t>(N);
  return p;
}

double GridSpec::cell_volume() const { return std::pow(spacing(), n); }
double GridSpec::volume() const { return std::pow(L, n); }
double GridSpec::k_max() const { return std::sqrt(static_cast<double>(n)) * kPi * N / L; }

ModeTable::ModeTable(const GridSpec& grid) : grid_(grid) {
  grid_.validate();
  const std::size_t total = grid_.points();
  m2_.resize(total);
  modes_.assign(total * 3, 0);
  retained_.assign(total, 1);
  const int N = grid_.N;
  for (std::size_t idx = 0; idx < total; ++idx) {
    std::size_t rest = idx;
    std::int32_t m2 = 0;
    for (int a = grid_.n - 1; a >= 0; --a) {
      int i = static_cast<int>(rest % static_cast<std::size_t>(N));
      rest /= static_cast<std::size_t>(N);
      int m = grid_.mode(i);
      modes_[idx * 3 + a] = static_cast<std::int16_t>(m);
      m2 += m * m;
      if (3 * std::abs(m) > N) retained_[idx] = 0;
    }
    m2_[idx] = m2;
    max_m2_ = std::max(max_m2_, m2);
  }
}

bool ModeTable::nyquist(std::size_t idx) const {
  for (int a = 0; a < grid_.n; ++a)
    if (modes_[idx * 3 + a] == -grid_.N / 2) return true;
  return false;
}

std::size_t ModeTable::partner(std::size_t idx) const {
  const int N = grid_.N;
  std::size_t out = 0;
  for (int a = 0; a < grid_.n; ++a) {
    int m = -modes_[idx * 3 + a];
    int i = ((m % N) + N) % N;
    out = out * static_cast<std::size_t>(N) + static_cast<std::size_t>(i);
  }
  return out;
}

std::shared_ptr<const ModeTable> mode_table(const GridSpec& grid) {
  static std::mutex mutex;
  static std::map<std::pair<int, int>, std::shared_ptr<const ModeTable>> cache;
  std::lock_guard lock(mutex);
  auto key = std::make_pair(grid.n, grid.N);
  auto it = cache.find(key);
  if (it != cache.end()) return it->second;
  auto table = std::make_shared<const ModeTable>(grid);
  cache.emplace(key, table);
  return table;
}

Lebesgue::Lebesgue(double p) : p_(p) {
  if (std::isnan(p) || p < 1.0) throw std::invalid_argument("Lebesgue exponent must lie in [1, inf]");
}

Lebesgue Lebesgue::conjugate() const {
  if (is_infinite()) return Lebesgue(1.0);
  if (p_ == 1.0) return infinity();
  return Lebesgue(p_ / (p_ - 1.0));
}

Lebesgue Lebesgue::from_inverse(double inv) {
  if (!(inv >= 0.0) || inv > 1.0 + 1e-15)
    throw std::invalid_argument("reciprocal exponent must lie in [0, 1]");
  if (inv == 0.0) return infinity();
  return Lebesgue(std::max(1.0, 1.0 / inv));
}

std::string Lebesgue::str() const {
  if (is_infinite()) return "inf";
  std::ostringstream os;
  os << p_;
  return os.str();
}

}  // namespace lpb
