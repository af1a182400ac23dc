#include <limits>

#include "fopim/kernels/kernels.hpp"

// Reference kernels. The AVX2 versions replay exactly this operation order
// per lane, so both backends return identical bits.

namespace fopim::kernels::scalar {

ArgMin sq_dist_argmin(ComplexPlanes a, std::size_t na, ComplexPlanes b, std::size_t nb, std::size_t dims) {
  ArgMin best{std::numeric_limits<double>::infinity(), 0, 0};
  for (std::size_t i = 0; i < na; ++i) {
    for (std::size_t j = 0; j < nb; ++j) {
      double d = 0.0;
      for (std::size_t l = 0; l < dims; ++l) {
        const double dr = b.re[l * nb + j] - a.re[l * na + i];
        const double di = b.im[l * nb + j] - a.im[l * na + i];
        d += dr * dr + di * di;
      }
      if (d < best.value) best = {d, i, j};
    }
  }
  return best;
}

void power_response(ComplexPlanes weights, std::size_t grid, ComplexPlanes data, std::size_t cols, std::size_t dims,
                    std::span<double> out) {
  for (std::size_t g = 0; g < grid; ++g) {
    double acc = 0.0;
    for (std::size_t c = 0; c < cols; ++c) {
      double re = 0.0;
      double im = 0.0;
      for (std::size_t i = 0; i < dims; ++i) {
        const double wr = weights.re[i * grid + g];
        const double wi = weights.im[i * grid + g];
        const double xr = data.re[c * dims + i];
        const double xi = data.im[c * dims + i];
        re += wr * xr - wi * xi;
        im += wr * xi + wi * xr;
      }
      acc += re * re + im * im;
    }
    out[g] = acc;
  }
}

}  // namespace fopim::kernels::scalar
