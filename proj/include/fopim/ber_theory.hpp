#pragma once

#include <cstdint>

#include "fopim/config.hpp"

namespace fopim {

/// Every stage of the MLTSD bit-error upper bound at one operating point.
struct BerBreakdown {
  double P_e = 0;     // one empty filter beats one occupied filter
  double P_comb = 0;  // offset-set detection error
  double P_O = 0;     // a given occupied filter is displaced
  double P_I = 0;     // antenna decision error (pairwise bound)
  double P_P = 0;
  double P_perm = 0;
  double P_df = 0;    // any index error
  double P_IM = 0;    // index bit error
  double P_QAM = 0;
  double P_con = 0;
  double P_MLTSD = 0;
};

/// Gaussian tail probability, 0.5 erfc(x / sqrt 2).
double q_function(double x);

/// P(Y > 0) for Y = |n|^2 - |y|^2 with n, y length-L complex Gaussian vectors whose
/// real/imaginary parts have variances sigma2_2 and sigma2_1 respectively.
double prob_y_positive(double sigma2_1, double sigma2_2, int L);

/// Same probability by adaptive quadrature of the density of Y over (0, inf).
double prob_y_positive_integral(double sigma2_1, double sigma2_2, int L);

/// 0.5 (1 - sqrt(a / (1 + a))), evaluated without cancellation. a = inf gives 0.
double rayleigh_p(double a);

/// E[Q(sqrt(2 a chi))] for chi a sum of L unit-mean exponentials: P^L sum C(L-1+k, k) (1-P)^k.
double rayleigh_mrc_tail(double a, int L);

// All `snr` arguments are linear P_S / N0; +inf means noiseless.
double p_e(const SystemConfig& cfg, double snr);
double p_O(const SystemConfig& cfg, double snr);
double p_comb(const SystemConfig& cfg, double snr);
double pep_antenna(double sigma2_3, const SystemConfig& cfg, double snr);
double p_I(const SystemConfig& cfg, double snr);
double p_P(const SystemConfig& cfg, double snr);
double p_perm(const SystemConfig& cfg, double snr);
/// Throws std::invalid_argument when the configuration carries no index bits.
double p_im(const SystemConfig& cfg, double p_df);
/// Bit b (1-based) of Gray-coded `order`-PAM under L-branch Rayleigh MRC.
double p_pam(int order, int b, const SystemConfig& cfg, double snr);
double p_qam(const SystemConfig& cfg, double snr);
double p_con(const SystemConfig& cfg, double snr);
BerBreakdown p_mltsd(const SystemConfig& cfg, double snr);

/// Monte Carlo counterparts of the closed forms, used as oracles.
namespace mc {
double prob_y_positive(double sigma2_1, double sigma2_2, int L, std::uint64_t draws, std::uint64_t seed);
/// Energy of an empty filter exceeds that of an occupied one.
double p_e(const SystemConfig& cfg, double snr, std::uint64_t draws, std::uint64_t seed);
/// Wrong antenna/symbol (alt_label) beats the true pair (label) at one filter.
double pep_antenna(const SystemConfig& cfg, double snr, int label, int alt_label, std::uint64_t draws,
                   std::uint64_t seed);
/// Bit error rate of coherent MRC detection of a QAM symbol with the index known.
double p_qam(const SystemConfig& cfg, double snr, std::uint64_t draws, std::uint64_t seed);
}  // namespace mc

}  // namespace fopim
