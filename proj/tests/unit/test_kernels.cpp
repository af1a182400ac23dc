#include <cmath>
#include <complex>
#include <limits>
#include <random>
#include <vector>

#include "doctest.h"
#include "fopim/kernels/kernels.hpp"

using namespace fopim::kernels;

namespace {

struct Planes {
  std::vector<double> re, im;
  Planes(std::size_t n, std::mt19937_64& rng) : re(n), im(n) {
    std::normal_distribution<double> d;
    for (auto& x : re) x = d(rng);
    for (auto& x : im) x = d(rng);
  }
  ComplexPlanes view() const { return {re, im}; }
};

ArgMin naive_argmin(const Planes& a, std::size_t na, const Planes& b, std::size_t nb, std::size_t dims) {
  ArgMin best{std::numeric_limits<double>::infinity(), 0, 0};
  for (std::size_t i = 0; i < na; ++i)
    for (std::size_t j = 0; j < nb; ++j) {
      double d = 0;
      for (std::size_t l = 0; l < dims; ++l) {
        const double dr = b.re[l * nb + j] - a.re[l * na + i];
        const double di = b.im[l * nb + j] - a.im[l * na + i];
        d += dr * dr + di * di;
      }
      if (d < best.value) best = {d, i, j};
    }
  return best;
}

}  // namespace

TEST_CASE("argmin backends agree bit for bit") {
  REQUIRE(backend_available(Backend::Scalar));
  if (!backend_available(Backend::Avx2)) {
    MESSAGE("avx2 unavailable on this host; equivalence skipped");
    return;
  }
  std::mt19937_64 rng(7);
  for (std::size_t dims : {1u, 2u, 3u, 4u, 5u, 6u, 7u, 17u})
    for (std::size_t na : {1u, 3u, 16u})
      for (std::size_t nb : {1u, 3u, 4u, 5u, 15u, 16u, 17u, 33u, 256u}) {
        Planes a(dims * na, rng), b(dims * nb, rng);
        const auto s = scalar::sq_dist_argmin(a.view(), na, b.view(), nb, dims);
        const auto v = avx2::sq_dist_argmin(a.view(), na, b.view(), nb, dims);
        const auto n = naive_argmin(a, na, b, nb, dims);
        CAPTURE(dims);
        CAPTURE(na);
        CAPTURE(nb);
        CHECK(s.value == v.value);
        CHECK(s.row == v.row);
        CHECK(s.col == v.col);
        CHECK(s.value == n.value);
        CHECK(s.row == n.row);
        CHECK(s.col == n.col);
      }
}

TEST_CASE("argmin ties resolve to the first row-major index") {
  std::mt19937_64 rng(3);
  const std::size_t dims = 2, na = 3, nb = 37;
  Planes a(dims * na, rng), b(dims * nb, rng);
  // every b column equal => all j tie within a row; rows 0 and 2 share the same a
  for (std::size_t l = 0; l < dims; ++l) {
    for (std::size_t j = 0; j < nb; ++j) {
      b.re[l * nb + j] = 0.5;
      b.im[l * nb + j] = -0.25;
    }
    a.re[l * na + 2] = a.re[l * na + 0];
    a.im[l * na + 2] = a.im[l * na + 0];
    a.re[l * na + 1] = 100.0;
  }
  for (Backend be : {Backend::Scalar, Backend::Avx2}) {
    if (!backend_available(be)) continue;
    set_backend(be);
    const auto m = sq_dist_argmin(a.view(), na, b.view(), nb, dims);
    CHECK(m.row == 0);
    CHECK(m.col == 0);
  }
  set_backend(Backend::Scalar);
}

TEST_CASE("argmin on empty inputs reports infinity") {
  std::vector<double> e;
  const auto m = sq_dist_argmin({e, e}, 0, {e, e}, 0, 1);
  CHECK(std::isinf(m.value));
}

TEST_CASE("power_response backends agree bit for bit and match the definition") {
  std::mt19937_64 rng(11);
  for (std::size_t dims : {1u, 6u, 9u})
    for (std::size_t grid : {1u, 4u, 7u, 201u})
      for (std::size_t cols : {1u, 12u}) {
        Planes w(dims * grid, rng), x(cols * dims, rng);
        std::vector<double> s(grid), v(grid, -1.0);
        scalar::power_response(w.view(), grid, x.view(), cols, dims, s);
        if (backend_available(Backend::Avx2)) {
          avx2::power_response(w.view(), grid, x.view(), cols, dims, v);
          for (std::size_t g = 0; g < grid; ++g) CHECK(s[g] == v[g]);
        }
        for (std::size_t g = 0; g < grid; ++g) {
          double acc = 0;
          for (std::size_t c = 0; c < cols; ++c) {
            std::complex<double> z = 0;
            for (std::size_t i = 0; i < dims; ++i)
              z += std::complex<double>(w.re[i * grid + g], w.im[i * grid + g]) *
                   std::complex<double>(x.re[c * dims + i], x.im[c * dims + i]);
            acc += std::norm(z);
          }
          CHECK(s[g] == doctest::Approx(acc).epsilon(1e-12));
        }
      }
}

TEST_CASE("backend selection") {
  const Backend before = active_backend();
  set_backend(Backend::Scalar);
  CHECK(active_backend() == Backend::Scalar);
  CHECK(backend_name(Backend::Scalar) == "scalar");
  CHECK(backend_name(Backend::Avx2) == "avx2");
  set_backend(before);
}
