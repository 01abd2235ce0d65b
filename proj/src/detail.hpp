#pragma once

#include <vector>

#include "tfapprox/fft.hpp"
#include "tfapprox/sampling.hpp"

namespace tfapprox::detail {

/// Reusable transform f -> f^ for functions on one grid (see fourier()).
class CenteredFourier {
public:
  explicit CenteredFourier(const Grid& grid);
  /// Overwrites buf (samples on the grid) with samples of the transform on grid.dual().
  void apply(std::vector<cplx>& buf);

private:
  FftPlan plan_;
  std::vector<double> sign_in_;
  std::vector<double> sign_out_;
};

} // namespace tfapprox::detail
