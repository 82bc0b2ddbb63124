#include "fft.hpp"

#include <fftw3.h>

#include <map>
#include <mutex>
#include <tuple>

namespace lpb::detail {
namespace {

// FFTW planning is not thread-safe; execution with new arrays is.
std::mutex& planner_mutex() {
  static std::mutex m;
  return m;
}

fftw_plan plan_for(const GridSpec& grid, int sign) {
  static std::map<std::tuple<int, int, int>, fftw_plan> plans;
  std::lock_guard lock(planner_mutex());
  auto key = std::make_tuple(grid.n, grid.N, sign);
  auto it = plans.find(key);
  if (it != plans.end()) return it->second;

  std::size_t total = grid.points();
  auto* scratch = static_cast<fftw_complex*>(fftw_malloc(sizeof(fftw_complex) * total));
  int dims[3] = {grid.N, grid.N, grid.N};
  fftw_plan plan = fftw_plan_dft(grid.n, dims, scratch, scratch, sign < 0 ? FFTW_FORWARD : FFTW_BACKWARD,
                                 FFTW_ESTIMATE);
  fftw_free(scratch);
  if (plan == nullptr) throw std::runtime_error("FFTW planning failed");
  plans.emplace(key, plan);
  return plan;
}

}  // namespace

void fft_inplace(const GridSpec& grid, std::span<cplx> data, int sign) {
  if (data.size() != grid.points()) throw std::invalid_argument("fft_inplace: size mismatch");
  fftw_plan plan = plan_for(grid, sign);
  auto* p = reinterpret_cast<fftw_complex*>(data.data());
  fftw_execute_dft(plan, p, p);
}

}  // namespace lpb::detail
