#pragma once

#include <span>
#include <vector>

#include "fopim/config.hpp"
#include "fopim/im_codec.hpp"

namespace fopim {

/// Single stationary point target seen over K pulses.
struct SensingScenario {
  double theta = 0.0;    // rad
  double R_T = 0.0;      // m
  cdouble xi{1.0, 0.0};  // reflection coefficient (carrier range phase absorbed)
  double r_c = 0.0;      // coarse range from fast-time processing, m
  double delta_r = 0.0;  // R_T - r_c
  /// offsets[k][n]: pool index radiated by antenna n during pulse k.
  std::vector<std::vector<int>> offsets;

  int pulses() const { return static_cast<int>(offsets.size()); }
};

/// Range-compensated receive vector of one pulse, element m*N + n.
struct SensingSnapshot {
  CVector y;
  std::vector<int> offsets;
  double noise_var = 0.0;
};

/// Half-width of the unambiguous residual-range interval, c / (4 delta_f).
double residual_range_limit(const SystemConfig& cfg);

CVector steering_a(double theta, int M, const SystemConfig& cfg);
CVector steering_c(double theta, int N, const SystemConfig& cfg);
/// exp(-j 4 pi offsets[n] delta_f range / c).
CVector steering_b(double range, std::span<const int> offsets, const SystemConfig& cfg);
/// a(theta) kron (b(dr) .* c(theta)), without the sqrt(P_S/N) factor.
CVector sensing_steering(double theta, double delta_r, std::span<const int> offsets, const SystemConfig& cfg);

SensingSnapshot synth_snapshot(const SensingScenario& sc, int k, const SystemConfig& cfg, Rng& rng, bool noiseless);
std::vector<SensingSnapshot> synth_snapshots(const SensingScenario& sc, const SystemConfig& cfg, Rng& rng,
                                             bool noiseless);

struct AngleGrid {
  double lo = deg_to_rad(-90.0);
  double hi = deg_to_rad(90.0);
  double coarse_step = deg_to_rad(0.1);
  double fine_step = deg_to_rad(0.001);
};

struct RangeGrid {
  int coarse_points = 201;  // over [-c/4B, c/4B]
  double fine_step = 1e-4;  // m
};

/// sum_k |a(theta)^H Y_k|^2 at each candidate angle.
std::vector<double> angle_objective(std::span<const SensingSnapshot> snaps, std::span<const double> thetas,
                                    const SystemConfig& cfg);
/// Coarse grid maximum refined by successive 10x finer local grids.
double estimate_angle(std::span<const SensingSnapshot> snaps, const SystemConfig& cfg, const AngleGrid& grid = {});

/// Least-squares amplitude v^H y / v^H v.
cdouble beta_hat(const CVector& y, const CVector& v);

struct RangeEstimate {
  double delta_r = 0.0;
  double range = 0.0;
};

/// sum_k |y_k^H v_k(theta, dr)|^2 / (N1 v_k^H v_k) at each candidate residual range.
std::vector<double> range_objective(std::span<const SensingSnapshot> snaps, double theta,
                                    std::span<const double> deltas, const SystemConfig& cfg);
RangeEstimate estimate_range(std::span<const SensingSnapshot> snaps, double theta, double r_c, const SystemConfig& cfg,
                             const RangeGrid& grid = {});

struct SensingEstimate {
  double theta = 0.0;
  double range = 0.0;
};

/// Two-step estimator: angle first, then range at that angle.
SensingEstimate estimate_target(std::span<const SensingSnapshot> snaps, double r_c, const SystemConfig& cfg,
                                const AngleGrid& ag = {}, const RangeGrid& rg = {});

/// Bin width of a MIMO radar whose bandwidth equals P delta_f: c / (2 P delta_f).
double mimo_range_bin(const SystemConfig& cfg);

/// Co-located MIMO reference. Angle from the snapshots (offsets must be zero); range
/// taken as the centre of the pulse-compression bin containing R_T.
SensingEstimate mimo_baseline(std::span<const SensingSnapshot> snaps, double R_T, const SystemConfig& cfg,
                              const AngleGrid& ag = {});

/// Random target: theta ~ U[-60, 60] deg, r_c on the coarse range lattice, dr uniform in
/// [-c/4B, c/4B], unit-modulus xi, and offsets from K random FOPIM frames.
SensingScenario draw_scenario(const SystemConfig& cfg, Rng& rng);

/// Same target with every offset set to zero (MIMO probing).
SensingScenario without_offsets(const SensingScenario& sc);

}  // namespace fopim
