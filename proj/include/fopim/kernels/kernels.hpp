#pragma once

#include <cstddef>
#include <span>
#include <string_view>

namespace fopim::kernels {

/// Split (structure-of-arrays) view of a block of complex numbers.
struct ComplexPlanes {
  std::span<const double> re;
  std::span<const double> im;
};

struct ArgMin {
  double value;
  std::size_t row;
  std::size_t col;
};

/// min over (i, j) of sum_l |b[l][j] - a[l][i]|^2, first occurrence in
/// row-major (i, j) order.
///
/// Layout: a is dims x na and b is dims x nb, dimension-major, so element
/// (l, i) of a lives at a.re[l * na + i].
using SqDistArgminFn = ArgMin (*)(ComplexPlanes a, std::size_t na, ComplexPlanes b, std::size_t nb, std::size_t dims);

/// out[g] = sum_c |sum_i w[i][g] * x[c][i]|^2.
///
/// Layout: weights are dims x grid (dimension-major), data is cols x dims
/// (one row per data vector).
using PowerResponseFn = void (*)(ComplexPlanes weights, std::size_t grid, ComplexPlanes data, std::size_t cols,
                                 std::size_t dims, std::span<double> out);

enum class Backend { Scalar, Avx2 };

std::string_view backend_name(Backend b);
bool backend_available(Backend b);

/// Backend used by the dispatching entry points. Chosen once from the CPU;
/// FOPIM_KERNELS=scalar|avx2 overrides the choice.
Backend active_backend();
void set_backend(Backend b);

ArgMin sq_dist_argmin(ComplexPlanes a, std::size_t na, ComplexPlanes b, std::size_t nb, std::size_t dims);
void power_response(ComplexPlanes weights, std::size_t grid, ComplexPlanes data, std::size_t cols, std::size_t dims,
                    std::span<double> out);

namespace scalar {
ArgMin sq_dist_argmin(ComplexPlanes a, std::size_t na, ComplexPlanes b, std::size_t nb, std::size_t dims);
void power_response(ComplexPlanes weights, std::size_t grid, ComplexPlanes data, std::size_t cols, std::size_t dims,
                    std::span<double> out);
}  // namespace scalar

namespace avx2 {
ArgMin sq_dist_argmin(ComplexPlanes a, std::size_t na, ComplexPlanes b, std::size_t nb, std::size_t dims);
void power_response(ComplexPlanes weights, std::size_t grid, ComplexPlanes data, std::size_t cols, std::size_t dims,
                    std::span<double> out);
}  // namespace avx2

}  // namespace fopim::kernels
