#pragma once

#include <memory>
#include <span>

#include "inls/grid.hpp"

namespace inls {

/// Unnormalized forward/backward complex DFT over a tensor grid. Plans are
/// shared per grid shape; executing a plan is thread-safe.
class FftPlan {
 public:
  explicit FftPlan(const GridSpec& grid);
  ~FftPlan();
  FftPlan(const FftPlan&) = delete;
  FftPlan& operator=(const FftPlan&) = delete;

  void forward(std::span<cplx> data) const;
  /// Inverse transform including the 1/N^n normalization.
  void backward(std::span<cplx> data) const;

  std::size_t size() const { return size_; }

  /// Cached plan for the grid's shape.
  static std::shared_ptr<const FftPlan> for_grid(const GridSpec& grid);

 private:
  struct Plans;
  std::unique_ptr<Plans> plans_;
  std::size_t size_;
};

}  // namespace inls
