#include "fopim/channel.hpp"

#include <cmath>
#include <stdexcept>

namespace fopim {

ChannelRealization draw_channel(const SystemConfig& cfg, Rng& rng) {
  ChannelRealization ch;
  ch.sigma2 = cfg.sigma2;
  ch.H.resize(cfg.L, cfg.N * cfg.P);
  for (Eigen::Index c = 0; c < ch.H.cols(); ++c)
    for (Eigen::Index l = 0; l < ch.H.rows(); ++l) ch.H(l, c) = complex_normal(rng, cfg.sigma2);
  return ch;
}

CMatrix effective_channel(const CMatrix& H, std::span<const int> offsets, int N, int P) {
  if (static_cast<int>(offsets.size()) != N) throw std::invalid_argument("effective_channel: need N offsets");
  CMatrix out(H.rows(), N);
  for (int n = 0; n < N; ++n) {
    const int p = offsets[static_cast<std::size_t>(n)];
    if (p < 0 || p >= P) throw std::out_of_range("effective_channel: offset index >= P");
    out.col(n) = H.col(n + N * p);
  }
  return out;
}

cdouble comm_phase(int n, int offset, const SystemConfig& cfg) {
  const double tau = (cfg.R_C - n * cfg.d1 * std::sin(cfg.theta_C)) / kSpeedOfLight;
  // reduce the cycle count before scaling by 2 pi; f_c * tau is O(1e4) cycles
  const double cycles = (cfg.f_c + offset * cfg.delta_f) * tau;
  const double frac = cycles - std::floor(cycles);
  return std::polar(1.0, -kTwoPi * frac);
}

CMatrix comm_phase_table(const SystemConfig& cfg) {
  CMatrix t(cfg.N, cfg.P);
  for (int n = 0; n < cfg.N; ++n)
    for (int p = 0; p < cfg.P; ++p) t(n, p) = comm_phase(n, p, cfg);
  return t;
}

FilterBankOutput synth_filterbank(const CMatrix& H, const FopimFrame& frame, const SystemConfig& cfg, Rng& rng,
                                  bool noiseless) {
  return synth_filterbank(H, frame, cfg, comm_phase_table(cfg), rng, noiseless);
}

FilterBankOutput synth_filterbank(const CMatrix& H, const FopimFrame& frame, const SystemConfig& cfg,
                                  const CMatrix& phases, Rng& rng, bool noiseless) {
  FilterBankOutput out;
  out.noise_var = cfg.N0 / cfg.P;
  out.Y = CMatrix::Zero(cfg.L, cfg.P);
  const double amp = std::sqrt(cfg.P_S / cfg.N);
  for (int n = 0; n < cfg.N; ++n) {
    const int p = frame.offsets[static_cast<std::size_t>(n)];
    const cdouble scale = amp * phases(n, p) * frame.symbols[static_cast<std::size_t>(n)];
    out.Y.col(p) += scale * H.col(n + cfg.N * p);
  }
  if (!noiseless) {
    for (int p = 0; p < cfg.P; ++p)
      for (int l = 0; l < cfg.L; ++l) out.Y(l, p) += complex_normal(rng, out.noise_var);
  }
  return out;
}

}  // namespace fopim
