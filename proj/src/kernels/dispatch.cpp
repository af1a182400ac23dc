#include <atomic>
#include <cstdlib>
#include <stdexcept>
#include <string>

#include "fopim/kernels/kernels.hpp"

namespace fopim::kernels {
namespace {

Backend detect() {
  if (const char* env = std::getenv("FOPIM_KERNELS")) {
    const std::string want(env);
    if (want == "scalar") return Backend::Scalar;
    if (want == "avx2" && backend_available(Backend::Avx2)) return Backend::Avx2;
  }
  return backend_available(Backend::Avx2) ? Backend::Avx2 : Backend::Scalar;
}

std::atomic<Backend>& current() {
  static std::atomic<Backend> b{detect()};
  return b;
}

}  // namespace

std::string_view backend_name(Backend b) { return b == Backend::Avx2 ? "avx2" : "scalar"; }

bool backend_available(Backend b) {
  if (b == Backend::Scalar) return true;
#if defined(__x86_64__) || defined(__i386__)
  return __builtin_cpu_supports("avx2");
#else
  return false;
#endif
}

Backend active_backend() { return current().load(std::memory_order_relaxed); }

void set_backend(Backend b) {
  if (!backend_available(b)) throw std::runtime_error("kernel backend not available on this CPU");
  current().store(b, std::memory_order_relaxed);
}

ArgMin sq_dist_argmin(ComplexPlanes a, std::size_t na, ComplexPlanes b, std::size_t nb, std::size_t dims) {
  return active_backend() == Backend::Avx2 ? avx2::sq_dist_argmin(a, na, b, nb, dims)
                                           : scalar::sq_dist_argmin(a, na, b, nb, dims);
}

void power_response(ComplexPlanes weights, std::size_t grid, ComplexPlanes data, std::size_t cols, std::size_t dims,
                    std::span<double> out) {
  if (active_backend() == Backend::Avx2)
    avx2::power_response(weights, grid, data, cols, dims, out);
  else
    scalar::power_response(weights, grid, data, cols, dims, out);
}

}  // namespace fopim::kernels
