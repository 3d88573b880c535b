#include <fftw3.h>

#include <cmath>
#include <map>
#include <mutex>
#include <tuple>

#include "sgate/field.hpp"

namespace sgate {

namespace {

// FFTW planning is not thread-safe; execution of an existing plan on new
// arrays is. Plans are created once per (sizes, dim, direction) under a lock
// and executed with fftw_execute_dft afterwards.
using PlanKey = std::tuple<int, int, int, int, std::size_t, int>;

struct PlanCache {
  std::mutex mu;
  std::map<PlanKey, fftw_plan> plans;

  ~PlanCache() {
    for (auto& [key, plan] : plans) fftw_destroy_plan(plan);
  }

  fftw_plan get(const Grid& grid, std::size_t dim, int sign, cplx* sample) {
    const auto& n = grid.sizes();
    const PlanKey key{grid.d(), n[0], n[1], n[2], dim, sign};
    std::lock_guard lock(mu);
    if (auto it = plans.find(key); it != plans.end()) return it->second;
    auto* buf = reinterpret_cast<fftw_complex*>(sample);
    const int howmany = static_cast<int>(dim);
    fftw_plan p = fftw_plan_many_dft(grid.d(), n.data(), howmany, buf, nullptr, howmany, 1, buf,
                                     nullptr, howmany, 1, sign, FFTW_ESTIMATE | FFTW_UNALIGNED);
    plans.emplace(key, p);
    return p;
  }
};

PlanCache& cache() {
  static PlanCache c;
  return c;
}

}  // namespace

void transform_inplace(const Grid& grid, std::size_t dim, std::span<cplx> data, Direction direction) {
  if (data.empty()) return;
  const int sign = direction == Direction::Forward ? FFTW_FORWARD : FFTW_BACKWARD;
  fftw_plan p = cache().get(grid, dim, sign, data.data());
  auto* buf = reinterpret_cast<fftw_complex*>(data.data());
  fftw_execute_dft(p, buf, buf);
  const double scale = 1.0 / std::sqrt(static_cast<double>(grid.points()));
  for (auto& v : data) v *= scale;
}

}  // namespace sgate
