#pragma once

#include <span>

#include "fopim/config.hpp"
#include "fopim/im_codec.hpp"

namespace fopim {

/// L x (N*P) block-fading matrix; block p (columns N*p .. N*p+N-1) is H_p.
struct ChannelRealization {
  CMatrix H;
  double sigma2 = 1.0;
};

/// L x P matched-filter outputs at the communication user for one PRI.
struct FilterBankOutput {
  CMatrix Y;
  double noise_var = 0.0;  // per element, N0/P
};

ChannelRealization draw_channel(const SystemConfig& cfg, Rng& rng);

/// Column n of the result is column n + N*offsets[n] of H.
CMatrix effective_channel(const CMatrix& H, std::span<const int> offsets, int N, int P);

/// exp(-j 2 pi (f_c + p delta_f) tau_n) with tau_n = (R_C - n d1 sin theta_C)/c, n zero-based.
cdouble comm_phase(int n, int offset, const SystemConfig& cfg);

/// comm_phase for every (antenna, pool offset); entry (n, p).
CMatrix comm_phase_table(const SystemConfig& cfg);

FilterBankOutput synth_filterbank(const CMatrix& H, const FopimFrame& frame, const SystemConfig& cfg, Rng& rng,
                                  bool noiseless);

/// Same as above with a precomputed comm_phase_table.
FilterBankOutput synth_filterbank(const CMatrix& H, const FopimFrame& frame, const SystemConfig& cfg,
                                  const CMatrix& phases, Rng& rng, bool noiseless);

}  // namespace fopim
