#include "tfapprox/fft.hpp"

#include <fftw3.h>

#include <algorithm>
#include <mutex>
#include <utility>

#include "tfapprox/errors.hpp"

namespace tfapprox {

namespace {
std::mutex& planner_mutex() {
  static std::mutex m;
  return m;
}
} // namespace

FftPlan::FftPlan(std::vector<int> shape, Direction dir) : shape_(std::move(shape)) {
  if (shape_.empty()) {
    throw InvalidArgument("FFT shape must have at least one axis");
  }
  size_ = 1;
  for (int n : shape_) {
    if (n <= 0) throw InvalidArgument("FFT axis length must be positive");
    size_ *= static_cast<std::size_t>(n);
  }
  buffer_ = reinterpret_cast<std::complex<double>*>(fftw_malloc(sizeof(fftw_complex) * size_));
  if (!buffer_) throw std::bad_alloc();
  std::lock_guard lock(planner_mutex());
  auto* buf = reinterpret_cast<fftw_complex*>(buffer_);
  plan_ = fftw_plan_dft(static_cast<int>(shape_.size()), shape_.data(), buf, buf,
                        dir == Direction::Forward ? FFTW_FORWARD : FFTW_BACKWARD, FFTW_ESTIMATE);
  if (!plan_) {
    fftw_free(buffer_);
    throw Error("FFTW failed to create a plan");
  }
}

FftPlan::~FftPlan() {
  if (plan_) {
    std::lock_guard lock(planner_mutex());
    fftw_destroy_plan(static_cast<fftw_plan>(plan_));
  }
  if (buffer_) fftw_free(buffer_);
}

FftPlan::FftPlan(FftPlan&& other) noexcept
    : shape_(std::move(other.shape_)), size_(other.size_),
      plan_(std::exchange(other.plan_, nullptr)), buffer_(std::exchange(other.buffer_, nullptr)) {}

FftPlan& FftPlan::operator=(FftPlan&& other) noexcept {
  if (this != &other) {
    FftPlan tmp(std::move(other));
    std::swap(shape_, tmp.shape_);
    std::swap(size_, tmp.size_);
    std::swap(plan_, tmp.plan_);
    std::swap(buffer_, tmp.buffer_);
  }
  return *this;
}

void FftPlan::execute(std::span<std::complex<double>> data) {
  if (data.size() != size_) {
    throw InvalidArgument("FFT input length does not match the plan");
  }
  std::copy(data.begin(), data.end(), buffer_);
  fftw_execute(static_cast<fftw_plan>(plan_));
  std::copy(buffer_, buffer_ + size_, data.begin());
}

} // namespace tfapprox
