#pragma once

#include <cstdint>

#include "fopim/types.hpp"

namespace fopim {

/// Bit budget of one FOPIM pulse.
struct BitBudget {
  int combination = 0;  // k_c = floor(log2 C(P,N))
  int permutation = 0;  // k_p = floor(log2 N!)
  int constellation = 0;  // k_con = N log2 J

  int index() const { return combination + permutation; }
  int total() const { return index() + constellation; }
};

/// Scalar parameters shared by the communication and sensing paths.
///
/// Lengths are in metres, frequencies in Hz, angles in radians. Noise powers
/// are absolute; use the with_*_snr helpers to derive them from an SNR.
struct SystemConfig {
  int N = 6;   // transmit antennas
  int M = 6;   // sensing receive antennas
  int L = 3;   // communication receive antennas
  int P = 7;   // frequency-offset pool size
  int J = 4;   // QAM order
  int mu = 0;  // I-axis PAM order, 0 = derive from J
  int eta = 0; // Q-axis PAM order, 0 = derive from J
  double delta_f = 2e6;
  double f_c = 10e9;
  double P_S = 1.0;
  double sigma2 = 1.0;
  double N0 = 0.1;
  double N1 = 1.0 / 6.0;
  double d1 = kSpeedOfLight / 10e9 / 2.0;
  double d3 = kSpeedOfLight / 10e9 / 2.0;
  double R_C = 300.0;
  double theta_C = deg_to_rad(60.0);
  int K = 200;

  /// Throws ConfigError if any invariant is violated.
  void validate() const;

  double lambda0() const { return kSpeedOfLight / f_c; }
  int pam_mu() const;
  int pam_eta() const;
  int bits_per_symbol() const;
  BitBudget budget() const;

  /// Copy with N0 = P_S / snr (communication SNR definition).
  SystemConfig with_comm_snr_db(double snr_db) const;
  /// Copy with N1 = P_S / (N snr) (sensing SNR definition).
  SystemConfig with_sensing_snr_db(double snr_db) const;
};

/// Exact binomial coefficient; throws std::overflow_error beyond 2^63.
std::uint64_t binomial(int n, int k);
/// Exact n! for n <= 20.
std::uint64_t factorial(int n);
/// floor(log2(x)) for x >= 1.
int floor_log2(std::uint64_t x);

}  // namespace fopim
