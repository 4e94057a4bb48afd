#include "inls/fft.hpp"

#include <map>
#include <mutex>
#include <stdexcept>
#include <tuple>
#include <vector>

#include <fftw3.h>

#include "inls/kernels.hpp"
#include "inls/parallel.hpp"

namespace inls {

namespace {

// FFTW's planner is not thread-safe.
std::mutex& planner_mutex() {
  static std::mutex m;
  return m;
}

void init_fftw_threads() {
  static const bool done = [] {
    parallel::configure_threads();
    fftw_init_threads();
    fftw_plan_with_nthreads(parallel::thread_count());
    return true;
  }();
  (void)done;
}

fftw_complex* as_fftw(cplx* p) { return reinterpret_cast<fftw_complex*>(p); }

}  // namespace

struct FftPlan::Plans {
  fftw_plan forward = nullptr;
  fftw_plan backward = nullptr;
};

FftPlan::FftPlan(const GridSpec& grid) : plans_(std::make_unique<Plans>()), size_(grid.size()) {
  if (grid.kind() != GridKind::tensor) throw std::logic_error("FFT plans exist for tensor grids only");
  std::vector<int> dims(grid.dim(), static_cast<int>(grid.points()));
  std::vector<cplx> scratch(size_);
  std::lock_guard lock(planner_mutex());
  init_fftw_threads();
  const unsigned flags = FFTW_ESTIMATE | FFTW_UNALIGNED;
  plans_->forward = fftw_plan_dft(grid.dim(), dims.data(), as_fftw(scratch.data()), as_fftw(scratch.data()),
                                  FFTW_FORWARD, flags);
  plans_->backward = fftw_plan_dft(grid.dim(), dims.data(), as_fftw(scratch.data()), as_fftw(scratch.data()),
                                   FFTW_BACKWARD, flags);
  if (plans_->forward == nullptr || plans_->backward == nullptr) throw std::runtime_error("FFTW planning failed");
}

FftPlan::~FftPlan() {
  std::lock_guard lock(planner_mutex());
  if (plans_->forward != nullptr) fftw_destroy_plan(plans_->forward);
  if (plans_->backward != nullptr) fftw_destroy_plan(plans_->backward);
}

void FftPlan::forward(std::span<cplx> data) const {
  if (data.size() != size_) throw std::invalid_argument("FFT size mismatch");
  fftw_execute_dft(plans_->forward, as_fftw(data.data()), as_fftw(data.data()));
}

void FftPlan::backward(std::span<cplx> data) const {
  if (data.size() != size_) throw std::invalid_argument("FFT size mismatch");
  fftw_execute_dft(plans_->backward, as_fftw(data.data()), as_fftw(data.data()));
  const double inv = 1.0 / static_cast<double>(size_);
  const auto n = static_cast<std::ptrdiff_t>(data.size());
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t i = 0; i < n; ++i) data[i] *= inv;
}

std::shared_ptr<const FftPlan> FftPlan::for_grid(const GridSpec& grid) {
  static std::mutex cache_mutex;
  static std::map<std::tuple<int, std::size_t>, std::shared_ptr<const FftPlan>> cache;
  std::lock_guard lock(cache_mutex);
  auto key = std::make_tuple(grid.dim(), grid.points());
  auto it = cache.find(key);
  if (it != cache.end()) return it->second;
  auto plan = std::make_shared<const FftPlan>(grid);
  cache.emplace(key, plan);
  return plan;
}

}  // namespace inls
