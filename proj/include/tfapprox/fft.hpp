#pragma once

#include <complex>
#include <span>
#include <vector>

namespace tfapprox {

/// In-place multidimensional complex DFT of fixed shape (row-major).
///
/// Forward: X[k] = sum_n x[n] exp(-2 pi i k.n / N); backward uses +i and is
/// unnormalized. Plans are built with FFTW_ESTIMATE so results do not depend
/// on timing. Planning is serialized internally; a plan itself must not be
/// shared across threads.
class FftPlan {
public:
  enum class Direction { Forward, Backward };

  FftPlan(std::vector<int> shape, Direction dir);
  ~FftPlan();
  FftPlan(const FftPlan&) = delete;
  FftPlan& operator=(const FftPlan&) = delete;
  FftPlan(FftPlan&& other) noexcept;
  FftPlan& operator=(FftPlan&& other) noexcept;

  std::size_t size() const { return size_; }
  void execute(std::span<std::complex<double>> data);

private:
  std::vector<int> shape_;
  std::size_t size_ = 0;
  void* plan_ = nullptr;
  std::complex<double>* buffer_ = nullptr;
};

} // namespace tfapprox
