#include "fopim/comm_rx.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "fopim/combinatorics.hpp"
#include "fopim/kernels/kernels.hpp"

namespace fopim {
namespace {

std::uint64_t ipow(std::uint64_t base, int e) {
  std::uint64_t r = 1;
  for (int i = 0; i < e; ++i) r *= base;
  return r;
}

}  // namespace

std::vector<int> mltsd_stage1(const CMatrix& Y, int N) {
  const int P = static_cast<int>(Y.cols());
  if (N < 1 || N > P) throw std::invalid_argument("mltsd_stage1: need 1 <= N <= P");
  std::vector<double> energy(static_cast<std::size_t>(P));
  for (int p = 0; p < P; ++p) energy[static_cast<std::size_t>(p)] = Y.col(p).squaredNorm();
  std::vector<int> idx(static_cast<std::size_t>(P));
  for (int p = 0; p < P; ++p) idx[static_cast<std::size_t>(p)] = p;
  std::stable_sort(idx.begin(), idx.end(), [&](int a, int b) {
    return energy[static_cast<std::size_t>(a)] > energy[static_cast<std::size_t>(b)];
  });
  idx.resize(static_cast<std::size_t>(N));
  std::sort(idx.begin(), idx.end());
  return idx;
}

CommReceiver::CommReceiver(const SystemConfig& cfg)
    : cfg_(cfg), codec_(cfg), phases_(comm_phase_table(cfg)), amp_(std::sqrt(cfg.P_S / cfg.N)) {}

std::uint64_t CommReceiver::mltsd_hypotheses() const {
  return static_cast<std::uint64_t>(cfg_.J) * static_cast<std::uint64_t>(cfg_.N) * static_cast<std::uint64_t>(cfg_.N);
}

std::uint64_t CommReceiver::ml_hypotheses() const {
  return (std::uint64_t{1} << codec_.budget().permutation) * ipow(static_cast<std::uint64_t>(cfg_.J), cfg_.N);
}

DetectedOffset CommReceiver::stage2(const CMatrix& Y, int offset, const CMatrix& H, std::uint64_t* count) const {
  const int N = cfg_.N;
  const int J = cfg_.J;
  const auto L = static_cast<std::size_t>(Y.rows());
  const auto nb = static_cast<std::size_t>(N * J);
  const auto& pts = codec_.constellation().points();

  std::vector<double> are(L), aim(L), bre(L * nb), bim(L * nb);
  for (std::size_t l = 0; l < L; ++l) {
    are[l] = Y(static_cast<Eigen::Index>(l), offset).real();
    aim[l] = Y(static_cast<Eigen::Index>(l), offset).imag();
  }
  for (int n = 0; n < N; ++n) {
    const cdouble s = amp_ * phases_(n, offset);
    for (std::size_t l = 0; l < L; ++l) {
      const cdouble g = s * H(static_cast<Eigen::Index>(l), n + N * offset);
      for (int x = 0; x < J; ++x) {
        const cdouble h = g * pts[static_cast<std::size_t>(x)];
        const std::size_t j = static_cast<std::size_t>(n * J + x);
        bre[l * nb + j] = h.real();
        bim[l * nb + j] = h.imag();
      }
    }
  }
  const auto best = kernels::sq_dist_argmin({are, aim}, 1, {bre, bim}, nb, L);
  if (count) *count += nb;
  return {offset, static_cast<int>(best.col) / J, static_cast<int>(best.col) % J};
}

DecodeResult CommReceiver::mltsd(const CMatrix& Y, const CMatrix& H) const {
  DecodeResult r;
  for (int p : mltsd_stage1(Y, cfg_.N)) r.estimate.entries.push_back(stage2(Y, p, H, &r.hypotheses));
  r.bits = codec_.decode(r.estimate);
  return r;
}

DecodeResult CommReceiver::ml(const CMatrix& Y, const CMatrix& H) const {
  const int N = cfg_.N;
  const int J = cfg_.J;
  const auto L = static_cast<std::size_t>(Y.rows());
  // split the symbol vector so the inner (vectorised) side holds at most 256 candidates
  int inner = 0;
  while (inner < N && ipow(static_cast<std::uint64_t>(J), inner + 1) <= 256) ++inner;
  const int h = N - inner;
  const auto na = static_cast<std::size_t>(ipow(static_cast<std::uint64_t>(J), h));
  const auto nb = static_cast<std::size_t>(ipow(static_cast<std::uint64_t>(J), N - h));
  const auto& pts = codec_.constellation().points();

  const CVector ysum = Y.rowwise().sum();
  const auto sorted = mltsd_stage1(Y, N);
  const std::uint64_t arrangements = std::uint64_t{1} << codec_.budget().permutation;

  std::vector<double> are(L * na), aim(L * na), bre(L * nb), bim(L * nb);
  std::vector<cdouble> g(static_cast<std::size_t>(N) * L);
  std::vector<int> offsets(static_cast<std::size_t>(N));
  std::vector<cdouble> cur, nxt;
  std::vector<cdouble> gx(static_cast<std::size_t>(N * J) * L);  // g_n * x for every antenna and symbol

  // Partial sums over antennas [first, last) in base-J order, first antenna most significant:
  // entry j = start + sign * sum_n g_n x_n(j), written dimension-major into (re, im).
  auto expand = [&](int first, int last, const cdouble* start, double sign, std::vector<double>& re,
                    std::vector<double>& im, std::size_t count) {
    cur.assign(start, start + L);
    for (int n = first; n < last; ++n) {
      nxt.resize(cur.size() * static_cast<std::size_t>(J));
      const std::size_t rows = cur.size() / L;
      for (std::size_t r = 0; r < rows; ++r)
        for (int x = 0; x < J; ++x) {
          const cdouble* t = &gx[static_cast<std::size_t>(n * J + x) * L];
          cdouble* o = &nxt[(r * static_cast<std::size_t>(J) + static_cast<std::size_t>(x)) * L];
          for (std::size_t l = 0; l < L; ++l) o[l] = sign > 0 ? cur[r * L + l] + t[l] : cur[r * L + l] - t[l];
        }
      cur.swap(nxt);
    }
    for (std::size_t j = 0; j < count; ++j)
      for (std::size_t l = 0; l < L; ++l) {
        re[l * count + j] = cur[j * L + l].real();
        im[l * count + j] = cur[j * L + l].imag();
      }
  };
  const std::vector<cdouble> zero(L, cdouble{});

  DecodeResult r;
  double best = std::numeric_limits<double>::infinity();
  std::vector<int> best_offsets;
  std::size_t best_i = 0, best_j = 0;

  for (std::uint64_t v = 0; v < arrangements; ++v) {
    const auto perm = lehmer_unrank(v, N);
    for (int n = 0; n < N; ++n) {
      const int p = sorted[static_cast<std::size_t>(perm[static_cast<std::size_t>(n)])];
      offsets[static_cast<std::size_t>(n)] = p;
      const cdouble s = amp_ * phases_(n, p);
      for (std::size_t l = 0; l < L; ++l)
        g[static_cast<std::size_t>(n) * L + l] = s * H(static_cast<Eigen::Index>(l), n + N * p);
      for (int x = 0; x < J; ++x)
        for (std::size_t l = 0; l < L; ++l)
          gx[static_cast<std::size_t>(n * J + x) * L + l] = g[static_cast<std::size_t>(n) * L + l] * pts[static_cast<std::size_t>(x)];
    }
    // |ysum - sum_n g_n x_n|^2 = |B_j - A_i|^2 with A over antennas [0, h) and B = ysum - rest
    expand(0, h, zero.data(), 1.0, are, aim, na);
    expand(h, N, ysum.data(), -1.0, bre, bim, nb);
    const auto m = kernels::sq_dist_argmin({are, aim}, na, {bre, bim}, nb, L);
    r.hypotheses += static_cast<std::uint64_t>(na) * nb;
    if (v == 0 || m.value < best) {
      best = m.value;
      best_offsets = offsets;
      best_i = m.row;
      best_j = m.col;
    }
  }

  std::vector<int> labels(static_cast<std::size_t>(N));
  for (int n = h - 1; n >= 0; --n) {
    labels[static_cast<std::size_t>(n)] = static_cast<int>(best_i % static_cast<std::size_t>(J));
    best_i /= static_cast<std::size_t>(J);
  }
  for (int n = N - 1; n >= h; --n) {
    labels[static_cast<std::size_t>(n)] = static_cast<int>(best_j % static_cast<std::size_t>(J));
    best_j /= static_cast<std::size_t>(J);
  }
  for (int n = 0; n < N; ++n)
    r.estimate.entries.push_back({best_offsets[static_cast<std::size_t>(n)], n, labels[static_cast<std::size_t>(n)]});
  r.bits = codec_.decode(r.estimate);
  return r;
}

}  // namespace fopim
