#pragma once

// Reference implementations used only by tests. They recompute quantities from
// first principles instead of going through the library's fast paths.

#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

#include "fopim/config.hpp"
#include "fopim/qam.hpp"

namespace fopim::testing {

struct BruteForceMl {
  std::vector<int> offsets;  // per antenna
  std::vector<int> labels;   // per antenna
  double metric = 0.0;
};

/// Exhaustive minimiser of |sum_p Y[:,p] - sqrt(P_S/N) sum_n phase_n h_{n+N p_n} x_n|^2 over the first
/// 2^floor(log2 N!) lexicographic arrangements of the N strongest filters and all symbol vectors.
/// Uses std::next_permutation and explicit nested enumeration; no codec or kernel code.
inline BruteForceMl brute_force_ml(const CMatrix& Y, const CMatrix& H, const SystemConfig& cfg) {
  const int N = cfg.N, P = cfg.P, J = cfg.J;
  std::vector<std::pair<double, int>> e;
  for (int p = 0; p < P; ++p) e.push_back({-Y.col(p).squaredNorm(), p});
  std::stable_sort(e.begin(), e.end(), [](auto& a, auto& b) { return a.first < b.first; });
  std::vector<int> set;
  for (int n = 0; n < N; ++n) set.push_back(e[static_cast<std::size_t>(n)].second);
  std::sort(set.begin(), set.end());

  long long perms = 1;
  for (int i = 2; i <= N; ++i) perms *= i;
  long long allowed = 1;
  while (allowed * 2 <= perms) allowed *= 2;

  const QamConstellation q(cfg.pam_mu(), cfg.pam_eta());
  const CVector ysum = Y.rowwise().sum();
  const double amp = std::sqrt(cfg.P_S / N);

  BruteForceMl best;
  best.metric = INFINITY;
  std::vector<int> arr(static_cast<std::size_t>(N));
  std::iota(arr.begin(), arr.end(), 0);
  long long count = 0;
  do {
    std::vector<int> offs(static_cast<std::size_t>(N));
    for (int n = 0; n < N; ++n) offs[static_cast<std::size_t>(n)] = set[static_cast<std::size_t>(arr[static_cast<std::size_t>(n)])];
    long long total = 1;
    for (int n = 0; n < N; ++n) total *= J;
    for (long long code = 0; code < total; ++code) {
      std::vector<int> lab(static_cast<std::size_t>(N));
      long long c = code;
      for (int n = N - 1; n >= 0; --n) {
        lab[static_cast<std::size_t>(n)] = static_cast<int>(c % J);
        c /= J;
      }
      CVector r = ysum;
      for (int n = 0; n < N; ++n) {
        const int p = offs[static_cast<std::size_t>(n)];
        const double tau = (cfg.R_C - n * cfg.d1 * std::sin(cfg.theta_C)) / kSpeedOfLight;
        const long double cyc = static_cast<long double>(cfg.f_c + p * cfg.delta_f) * tau;
        const double frac = static_cast<double>(cyc - std::floor(cyc));
        const cdouble ph = std::polar(1.0, -kTwoPi * frac);
        r -= amp * ph * q.point(lab[static_cast<std::size_t>(n)]) * H.col(n + N * p);
      }
      const double m = r.squaredNorm();
      if (m < best.metric) best = {offs, lab, m};
    }
    ++count;
  } while (count < allowed && std::next_permutation(arr.begin(), arr.end()));
  return best;
}

}  // namespace fopim::testing
