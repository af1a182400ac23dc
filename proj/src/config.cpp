#include "fopim/config.hpp"

#include <bit>
#include <cmath>
#include <stdexcept>
#include <string>

namespace fopim {
namespace {

bool is_pow2(int x) { return x > 0 && (x & (x - 1)) == 0; }

void require(bool ok, const std::string& what) {
  if (!ok) throw ConfigError("invalid configuration: " + what);
}

}  // namespace

std::uint64_t binomial(int n, int k) {
  if (k < 0 || n < 0 || k > n) return 0;
  k = std::min(k, n - k);
  unsigned __int128 acc = 1;
  for (int i = 1; i <= k; ++i) {
    acc = acc * static_cast<unsigned>(n - k + i) / static_cast<unsigned>(i);
    if (acc > (static_cast<unsigned __int128>(1) << 63)) throw std::overflow_error("binomial overflow");
  }
  return static_cast<std::uint64_t>(acc);
}

std::uint64_t factorial(int n) {
  if (n < 0 || n > 20) throw std::overflow_error("factorial supports 0 <= n <= 20");
  std::uint64_t acc = 1;
  for (int i = 2; i <= n; ++i) acc *= static_cast<std::uint64_t>(i);
  return acc;
}

int floor_log2(std::uint64_t x) {
  if (x == 0) throw std::domain_error("floor_log2(0)");
  return std::bit_width(x) - 1;
}

int SystemConfig::pam_mu() const {
  if (mu > 0) return mu;
  const int b = floor_log2(static_cast<std::uint64_t>(J));
  return 1 << ((b + 1) / 2);
}

int SystemConfig::pam_eta() const {
  if (eta > 0) return eta;
  const int b = floor_log2(static_cast<std::uint64_t>(J));
  return 1 << (b / 2);
}

int SystemConfig::bits_per_symbol() const { return floor_log2(static_cast<std::uint64_t>(J)); }

void SystemConfig::validate() const {
  require(N >= 1, "N >= 1");
  require(P >= N, "P >= N");
  require(N <= 20, "N <= 20");
  require(M >= 1 && L >= 1, "M, L >= 1");
  require(is_pow2(J) && J >= 2, "J must be a power of two >= 2");
  require(is_pow2(pam_mu()) && is_pow2(pam_eta()) && pam_mu() * pam_eta() == J,
          "J = mu * eta with mu, eta powers of two");
  require(delta_f > 0.0, "delta_f > 0");
  require(f_c > 0.0, "f_c > 0");
  require(P_S >= 0.0 && sigma2 >= 0.0 && N0 >= 0.0 && N1 >= 0.0, "powers must be non-negative");
  require(K >= 1, "K >= 1");
  try {
    (void)binomial(P, N);
  } catch (const std::overflow_error&) {
    throw ConfigError("invalid configuration: C(P,N) exceeds 2^63");
  }
}

BitBudget SystemConfig::budget() const {
  BitBudget b;
  b.combination = floor_log2(binomial(P, N));
  b.permutation = floor_log2(factorial(N));
  b.constellation = N * bits_per_symbol();
  return b;
}

SystemConfig SystemConfig::with_comm_snr_db(double snr_db) const {
  SystemConfig c = *this;
  c.N0 = std::isinf(snr_db) && snr_db > 0 ? 0.0 : P_S / db_to_linear(snr_db);
  return c;
}

SystemConfig SystemConfig::with_sensing_snr_db(double snr_db) const {
  SystemConfig c = *this;
  c.N1 = std::isinf(snr_db) && snr_db > 0 ? 0.0 : P_S / (N * db_to_linear(snr_db));
  return c;
}

}  // namespace fopim
