#include "fopim/sensing.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "fopim/kernels/kernels.hpp"

namespace fopim {
namespace {

cdouble unit_phase(double radians) { return std::polar(1.0, radians); }

// argmax with the first maximum winning
std::size_t argmax(const std::vector<double>& v) {
  std::size_t best = 0;
  for (std::size_t i = 1; i < v.size(); ++i)
    if (v[i] > v[best]) best = i;
  return best;
}

template <class Objective>
// periodic: the objective repeats with period hi - lo, so refinement may cross the ends
double grid_search(Objective&& objective, double lo, double hi, double coarse, double fine, bool periodic = false) {
  const auto n = static_cast<std::size_t>(std::floor((hi - lo) / coarse + 1e-9)) + 1;
  std::vector<double> xs(n);
  for (std::size_t i = 0; i < n; ++i) xs[i] = lo + static_cast<double>(i) * coarse;
  double center = xs[argmax(objective(xs))];
  double step = coarse;
  while (step > fine * (1.0 + 1e-9)) {
    const double next = std::max(fine, step / 10.0);
    const int span = static_cast<int>(std::ceil(step / next - 1e-9));
    xs.clear();
    for (int i = -span; i <= span; ++i) {
      const double x = center + i * next;
      if (periodic || (x >= lo - 1e-12 && x <= hi + 1e-12)) xs.push_back(x);
    }
    center = xs[argmax(objective(xs))];
    step = next;
  }
  if (periodic && center < lo) center += hi - lo;
  if (periodic && center > hi) center -= hi - lo;
  return center;
}

}  // namespace

double residual_range_limit(const SystemConfig& cfg) { return kSpeedOfLight / (4.0 * cfg.delta_f); }

CVector steering_a(double theta, int M, const SystemConfig& cfg) {
  CVector a(M);
  const double k = kTwoPi * cfg.d3 / cfg.lambda0() * std::sin(theta);
  for (int m = 0; m < M; ++m) a(m) = unit_phase(k * m);
  return a;
}

CVector steering_c(double theta, int N, const SystemConfig& cfg) {
  CVector c(N);
  const double k = kTwoPi * cfg.d1 / cfg.lambda0() * std::sin(theta);
  for (int n = 0; n < N; ++n) c(n) = unit_phase(k * n);
  return c;
}

CVector steering_b(double range, std::span<const int> offsets, const SystemConfig& cfg) {
  CVector b(static_cast<Eigen::Index>(offsets.size()));
  for (std::size_t n = 0; n < offsets.size(); ++n)
    b(static_cast<Eigen::Index>(n)) = unit_phase(-2.0 * kTwoPi * offsets[n] * cfg.delta_f * range / kSpeedOfLight);
  return b;
}

CVector sensing_steering(double theta, double delta_r, std::span<const int> offsets, const SystemConfig& cfg) {
  const int N = static_cast<int>(offsets.size());
  const CVector a = steering_a(theta, cfg.M, cfg);
  const CVector bc = steering_b(delta_r, offsets, cfg).cwiseProduct(steering_c(theta, N, cfg));
  CVector u(cfg.M * N);
  for (int m = 0; m < cfg.M; ++m) u.segment(m * N, N) = a(m) * bc;
  return u;
}

SensingSnapshot synth_snapshot(const SensingScenario& sc, int k, const SystemConfig& cfg, Rng& rng, bool noiseless) {
  if (k < 0 || k >= sc.pulses()) throw std::out_of_range("synth_snapshot: pulse index");
  const auto& off = sc.offsets[static_cast<std::size_t>(k)];
  const int N = static_cast<int>(off.size());
  SensingSnapshot s;
  s.offsets = off;
  s.noise_var = noiseless ? 0.0 : cfg.N1;
  // raw echo with the full range phase, then coarse-range compensation
  s.y = std::sqrt(cfg.P_S / N) * sc.xi * sensing_steering(sc.theta, sc.R_T, off, cfg);
  if (!noiseless)
    for (Eigen::Index i = 0; i < s.y.size(); ++i) s.y(i) += complex_normal(rng, cfg.N1);
  for (int n = 0; n < N; ++n) {
    const cdouble d = unit_phase(2.0 * kTwoPi * sc.r_c * off[static_cast<std::size_t>(n)] * cfg.delta_f / kSpeedOfLight);
    for (int m = 0; m < cfg.M; ++m) s.y(m * N + n) *= d;
  }
  return s;
}

std::vector<SensingSnapshot> synth_snapshots(const SensingScenario& sc, const SystemConfig& cfg, Rng& rng,
                                             bool noiseless) {
  std::vector<SensingSnapshot> out;
  out.reserve(static_cast<std::size_t>(sc.pulses()));
  for (int k = 0; k < sc.pulses(); ++k) out.push_back(synth_snapshot(sc, k, cfg, rng, noiseless));
  return out;
}

std::vector<double> angle_objective(std::span<const SensingSnapshot> snaps, std::span<const double> thetas,
                                    const SystemConfig& cfg) {
  if (snaps.empty()) throw std::invalid_argument("angle_objective: no snapshots");
  const auto M = static_cast<std::size_t>(cfg.M);
  const auto N = static_cast<std::size_t>(snaps.front().offsets.size());
  const std::size_t G = thetas.size();
  std::vector<double> wre(M * G), wim(M * G);
  for (std::size_t g = 0; g < G; ++g) {
    const CVector a = steering_a(thetas[g], cfg.M, cfg);
    for (std::size_t m = 0; m < M; ++m) {
      wre[m * G + g] = a(static_cast<Eigen::Index>(m)).real();
      wim[m * G + g] = -a(static_cast<Eigen::Index>(m)).imag();
    }
  }
  // one data row per (pulse, transmit antenna): the M receive samples
  const std::size_t cols = snaps.size() * N;
  std::vector<double> dre(cols * M), dim(cols * M);
  for (std::size_t k = 0; k < snaps.size(); ++k)
    for (std::size_t n = 0; n < N; ++n)
      for (std::size_t m = 0; m < M; ++m) {
        const cdouble v = snaps[k].y(static_cast<Eigen::Index>(m * N + n));
        dre[(k * N + n) * M + m] = v.real();
        dim[(k * N + n) * M + m] = v.imag();
      }
  std::vector<double> out(G);
  kernels::power_response({wre, wim}, G, {dre, dim}, cols, M, out);
  return out;
}

double estimate_angle(std::span<const SensingSnapshot> snaps, const SystemConfig& cfg, const AngleGrid& grid) {
  if (snaps.empty()) throw std::invalid_argument("estimate_angle: no snapshots");
  return grid_search([&](const std::vector<double>& xs) { return angle_objective(snaps, xs, cfg); }, grid.lo,
                     grid.hi, grid.coarse_step, grid.fine_step);
}

cdouble beta_hat(const CVector& y, const CVector& v) {
  const double vv = v.squaredNorm();
  if (!(vv > 0.0)) throw std::invalid_argument("beta_hat: zero steering vector");
  return v.dot(y) / vv;
}

std::vector<double> range_objective(std::span<const SensingSnapshot> snaps, double theta,
                                    std::span<const double> deltas, const SystemConfig& cfg) {
  if (snaps.empty()) throw std::invalid_argument("range_objective: no snapshots");
  const auto M = static_cast<std::size_t>(cfg.M);
  const auto N = static_cast<std::size_t>(snaps.front().offsets.size());
  const auto P = static_cast<std::size_t>(cfg.P);
  const std::size_t G = deltas.size();
  const CVector a = steering_a(theta, cfg.M, cfg);
  const CVector c = steering_c(theta, static_cast<int>(N), cfg);

  // Z_k[p] = conj(c_n) (a^H Y_k)_n at the pool slot p used by antenna n
  std::vector<double> zre(snaps.size() * P, 0.0), zim(snaps.size() * P, 0.0);
  for (std::size_t k = 0; k < snaps.size(); ++k) {
    for (std::size_t n = 0; n < N; ++n) {
      cdouble acc = 0.0;
      for (std::size_t m = 0; m < M; ++m)
        acc += std::conj(a(static_cast<Eigen::Index>(m))) * snaps[k].y(static_cast<Eigen::Index>(m * N + n));
      const cdouble z = std::conj(c(static_cast<Eigen::Index>(n))) * acc;
      const auto p = static_cast<std::size_t>(snaps[k].offsets[n]);
      zre[k * P + p] += z.real();
      zim[k * P + p] += z.imag();
    }
  }
  std::vector<double> wre(P * G), wim(P * G);
  for (std::size_t g = 0; g < G; ++g)
    for (std::size_t p = 0; p < P; ++p) {
      const cdouble w = unit_phase(2.0 * kTwoPi * static_cast<double>(p) * cfg.delta_f * deltas[g] / kSpeedOfLight);
      wre[p * G + g] = w.real();
      wim[p * G + g] = w.imag();
    }
  std::vector<double> out(G);
  kernels::power_response({wre, wim}, G, {zre, zim}, snaps.size(), P, out);
  const double n1 = cfg.N1 > 0.0 ? cfg.N1 : 1.0;
  const double norm = n1 * static_cast<double>(M * N);
  for (auto& v : out) v /= norm;
  return out;
}

RangeEstimate estimate_range(std::span<const SensingSnapshot> snaps, double theta, double r_c, const SystemConfig& cfg,
                             const RangeGrid& grid) {
  if (grid.coarse_points < 2) throw std::invalid_argument("estimate_range: need >= 2 coarse points");
  const double lim = residual_range_limit(cfg);
  const double coarse = 2.0 * lim / (grid.coarse_points - 1);
  RangeEstimate r;
  r.delta_r = grid_search([&](const std::vector<double>& xs) { return range_objective(snaps, theta, xs, cfg); },
                          -lim, lim, coarse, grid.fine_step, true);
  r.range = r_c + r.delta_r;
  return r;
}

SensingEstimate estimate_target(std::span<const SensingSnapshot> snaps, double r_c, const SystemConfig& cfg,
                                const AngleGrid& ag, const RangeGrid& rg) {
  SensingEstimate e;
  e.theta = estimate_angle(snaps, cfg, ag);
  e.range = estimate_range(snaps, e.theta, r_c, cfg, rg).range;
  return e;
}

double mimo_range_bin(const SystemConfig& cfg) { return kSpeedOfLight / (2.0 * cfg.P * cfg.delta_f); }

SensingEstimate mimo_baseline(std::span<const SensingSnapshot> snaps, double R_T, const SystemConfig& cfg,
                              const AngleGrid& ag) {
  for (const auto& s : snaps)
    for (int p : s.offsets)
      if (p != 0) throw std::invalid_argument("mimo_baseline: snapshots must carry zero offsets");
  SensingEstimate e;
  e.theta = estimate_angle(snaps, cfg, ag);
  const double w = mimo_range_bin(cfg);
  e.range = (std::floor(R_T / w) + 0.5) * w;
  return e;
}

SensingScenario draw_scenario(const SystemConfig& cfg, Rng& rng) {
  SensingScenario sc;
  std::uniform_real_distribution<double> ang(deg_to_rad(-60.0), deg_to_rad(60.0));
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::uniform_int_distribution<int> cell(1, 8);
  const double lim = residual_range_limit(cfg);
  sc.theta = ang(rng);
  sc.r_c = cell(rng) * 2.0 * lim;
  sc.delta_r = -lim + 2.0 * lim * unit(rng);
  sc.R_T = sc.r_c + sc.delta_r;
  sc.xi = unit_phase(kTwoPi * unit(rng));
  const FopimCodec codec(cfg);
  sc.offsets.reserve(static_cast<std::size_t>(cfg.K));
  for (int k = 0; k < cfg.K; ++k) sc.offsets.push_back(codec.encode(codec.random_bits(rng)).offsets);
  return sc;
}

SensingScenario without_offsets(const SensingScenario& sc) {
  SensingScenario out = sc;
  for (auto& o : out.offsets) std::fill(o.begin(), o.end(), 0);
  return out;
}

}  // namespace fopim
