#include <immintrin.h>

#include <limits>

#include "fopim/kernels/kernels.hpp"

// Compiled with -mavx2 only (no FMA): each lane must reproduce the scalar
// multiply/add sequence bit for bit.

namespace fopim::kernels::avx2 {

namespace {

constexpr std::size_t kMaxBroadcastDims = 16;

template <std::size_t D>
inline __m256d block_dist(const double* bre, const double* bim, std::size_t nb, std::size_t j, const __m256d* ar,
                          const __m256d* ai, std::size_t dims) {
  __m256d d = _mm256_setzero_pd();
  const std::size_t n = D ? D : dims;
  for (std::size_t l = 0; l < n; ++l) {
    const __m256d dr = _mm256_sub_pd(_mm256_loadu_pd(bre + l * nb + j), ar[l]);
    const __m256d di = _mm256_sub_pd(_mm256_loadu_pd(bim + l * nb + j), ai[l]);
    d = _mm256_add_pd(d, _mm256_add_pd(_mm256_mul_pd(dr, dr), _mm256_mul_pd(di, di)));
  }
  return d;
}

template <std::size_t D>
ArgMin argmin_impl(ComplexPlanes a, std::size_t na, ComplexPlanes b, std::size_t nb, std::size_t dims) {
  constexpr std::size_t W = 4;
  constexpr std::size_t U = 4;  // independent accumulators break the compare/blend dependency chain
  const double inf = std::numeric_limits<double>::infinity();
  const std::size_t nb_wide = nb - nb % (W * U);
  const std::size_t nb_vec = nb - nb % W;

  __m256d best_v[U], best_idx[U];
  for (std::size_t u = 0; u < U; ++u) {
    best_v[u] = _mm256_set1_pd(inf);
    best_idx[u] = _mm256_setzero_pd();
  }
  const __m256d lane = _mm256_set_pd(3.0, 2.0, 1.0, 0.0);
  const double* bre = b.re.data();
  const double* bim = b.im.data();

  double tail_best = inf;
  std::size_t tail_flat = 0;
  __m256d ar[kMaxBroadcastDims], ai[kMaxBroadcastDims];

  for (std::size_t i = 0; i < na; ++i) {
    for (std::size_t l = 0; l < dims; ++l) {
      ar[l] = _mm256_set1_pd(a.re[l * na + i]);
      ai[l] = _mm256_set1_pd(a.im[l * na + i]);
    }
    const double row = static_cast<double>(i * nb);
    std::size_t j = 0;
    for (; j < nb_wide; j += W * U) {
      for (std::size_t u = 0; u < U; ++u) {
        const __m256d d = block_dist<D>(bre, bim, nb, j + u * W, ar, ai, dims);
        const __m256d less = _mm256_cmp_pd(d, best_v[u], _CMP_LT_OQ);
        const __m256d idx = _mm256_add_pd(_mm256_set1_pd(row + static_cast<double>(j + u * W)), lane);
        best_v[u] = _mm256_blendv_pd(best_v[u], d, less);
        best_idx[u] = _mm256_blendv_pd(best_idx[u], idx, less);
      }
    }
    for (; j < nb_vec; j += W) {
      const __m256d d = block_dist<D>(bre, bim, nb, j, ar, ai, dims);
      const __m256d less = _mm256_cmp_pd(d, best_v[0], _CMP_LT_OQ);
      const __m256d idx = _mm256_add_pd(_mm256_set1_pd(row + static_cast<double>(j)), lane);
      best_v[0] = _mm256_blendv_pd(best_v[0], d, less);
      best_idx[0] = _mm256_blendv_pd(best_idx[0], idx, less);
    }
    for (; j < nb; ++j) {
      double d = 0.0;
      for (std::size_t l = 0; l < dims; ++l) {
        const double dr = b.re[l * nb + j] - a.re[l * na + i];
        const double di = b.im[l * nb + j] - a.im[l * na + i];
        d += dr * dr + di * di;
      }
      if (d < tail_best) {
        tail_best = d;
        tail_flat = i * nb + j;
      }
    }
  }

  // lexicographic (value, flat index) reduce; each accumulator already holds its first minimum
  double value = tail_best;
  std::size_t flat = tail_best < inf ? tail_flat : 0;
  bool have = tail_best < inf;
  for (std::size_t u = 0; u < U; ++u) {
    alignas(32) double vals[W];
    alignas(32) double idxs[W];
    _mm256_store_pd(vals, best_v[u]);
    _mm256_store_pd(idxs, best_idx[u]);
    for (std::size_t k = 0; k < W; ++k) {
      if (!(vals[k] < inf)) continue;
      const auto cand = static_cast<std::size_t>(idxs[k]);
      if (!have || vals[k] < value || (vals[k] == value && cand < flat)) {
        value = vals[k];
        flat = cand;
        have = true;
      }
    }
  }
  if (!have) return scalar::sq_dist_argmin(a, na, b, nb, dims);
  return {value, flat / nb, flat % nb};
}

}  // namespace

ArgMin sq_dist_argmin(ComplexPlanes a, std::size_t na, ComplexPlanes b, std::size_t nb, std::size_t dims) {
  if (nb == 0 || na == 0) return {std::numeric_limits<double>::infinity(), 0, 0};
  switch (dims) {
    case 1: return argmin_impl<1>(a, na, b, nb, dims);
    case 2: return argmin_impl<2>(a, na, b, nb, dims);
    case 3: return argmin_impl<3>(a, na, b, nb, dims);
    case 4: return argmin_impl<4>(a, na, b, nb, dims);
    case 6: return argmin_impl<6>(a, na, b, nb, dims);
    default:
      if (dims > kMaxBroadcastDims) return scalar::sq_dist_argmin(a, na, b, nb, dims);
      return argmin_impl<0>(a, na, b, nb, dims);
  }
}

void power_response(ComplexPlanes weights, std::size_t grid, ComplexPlanes data, std::size_t cols, std::size_t dims,
                    std::span<double> out) {
  constexpr std::size_t W = 4;
  const std::size_t grid_vec = grid - grid % W;
  for (std::size_t g = 0; g < grid_vec; g += W) {
    __m256d acc = _mm256_setzero_pd();
    for (std::size_t c = 0; c < cols; ++c) {
      __m256d re = _mm256_setzero_pd();
      __m256d im = _mm256_setzero_pd();
      for (std::size_t i = 0; i < dims; ++i) {
        const __m256d wr = _mm256_loadu_pd(&weights.re[i * grid + g]);
        const __m256d wi = _mm256_loadu_pd(&weights.im[i * grid + g]);
        const __m256d xr = _mm256_set1_pd(data.re[c * dims + i]);
        const __m256d xi = _mm256_set1_pd(data.im[c * dims + i]);
        re = _mm256_add_pd(re, _mm256_sub_pd(_mm256_mul_pd(wr, xr), _mm256_mul_pd(wi, xi)));
        im = _mm256_add_pd(im, _mm256_add_pd(_mm256_mul_pd(wr, xi), _mm256_mul_pd(wi, xr)));
      }
      acc = _mm256_add_pd(acc, _mm256_add_pd(_mm256_mul_pd(re, re), _mm256_mul_pd(im, im)));
    }
    _mm256_storeu_pd(&out[g], acc);
  }
  for (std::size_t g = grid_vec; g < grid; ++g) {
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

}  // namespace fopim::kernels::avx2
