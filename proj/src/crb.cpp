#include "fopim/crb.hpp"

#include <cmath>
#include <stdexcept>

namespace fopim {

SteeringDerivatives steering_derivatives(double theta, double delta_r, std::span<const int> offsets,
                                         const SystemConfig& cfg) {
  const int N = static_cast<int>(offsets.size());
  SteeringDerivatives d;
  const CVector a = steering_a(theta, cfg.M, cfg);
  const CVector c = steering_c(theta, N, cfg);
  const CVector b = steering_b(delta_r, offsets, cfg);
  const cdouble ka(0.0, kTwoPi * cfg.d3 / cfg.lambda0() * std::cos(theta));
  const cdouble kc(0.0, kTwoPi * cfg.d1 / cfg.lambda0() * std::cos(theta));
  d.a_dot.resize(cfg.M);
  for (int m = 0; m < cfg.M; ++m) d.a_dot(m) = ka * static_cast<double>(m) * a(m);
  d.c_dot.resize(N);
  d.b_dot.resize(N);
  for (int n = 0; n < N; ++n) {
    d.c_dot(n) = kc * static_cast<double>(n) * c(n);
    const double ef = offsets[static_cast<std::size_t>(n)] * cfg.delta_f;
    d.b_dot(n) = cdouble(0.0, -2.0 * kTwoPi / kSpeedOfLight * ef) * b(n);
  }
  return d;
}

FimResult fim(const SensingScenario& sc, const SystemConfig& cfg) {
  if (!(cfg.N1 > 0.0)) throw std::invalid_argument("fim: sensing noise power must be positive");
  if (sc.pulses() < 1) throw std::invalid_argument("fim: no pulses");
  if (!(std::abs(sc.xi) > 0.0)) throw NumericalError("fim: zero reflection coefficient");

  const double inv_sqrt_n1 = 1.0 / std::sqrt(cfg.N1);
  // normalised sums of Re{z_i^H z_j}; the common factor 2 P_S / N is applied at the end
  double rr = 0, rt = 0, tt = 0, uu = 0;
  cdouble ru = 0, tu = 0;
  const CVector a = steering_a(sc.theta, cfg.M, cfg);
  for (const auto& off : sc.offsets) {
    const int N = static_cast<int>(off.size());
    const CVector c = steering_c(sc.theta, N, cfg);
    const CVector b = steering_b(sc.delta_r, off, cfg);
    const auto d = steering_derivatives(sc.theta, sc.delta_r, off, cfg);
    const CVector bc = b.cwiseProduct(c);
    const CVector bdc = d.b_dot.cwiseProduct(c);
    const CVector bcd = b.cwiseProduct(d.c_dot);
    CVector z(cfg.M * N), zr(cfg.M * N), zt(cfg.M * N);
    for (int m = 0; m < cfg.M; ++m) {
      z.segment(m * N, N) = a(m) * bc;
      zr.segment(m * N, N) = a(m) * bdc;
      zt.segment(m * N, N) = d.a_dot(m) * bc + a(m) * bcd;
    }
    z *= inv_sqrt_n1;
    zr *= inv_sqrt_n1;
    zt *= inv_sqrt_n1;
    rr += zr.squaredNorm();
    tt += zt.squaredNorm();
    rt += zr.dot(zt).real();
    uu += z.squaredNorm();
    ru += zr.dot(z);
    tu += zt.dot(z);
  }

  const double x2 = std::norm(sc.xi);
  const cdouble xc = std::conj(sc.xi);
  Eigen::Matrix4d Ft;
  // d(xi u)/dR = xi z_R, d/dtheta = xi z_theta, d/dRe = z, d/dIm = j z
  Ft(0, 0) = x2 * rr;
  Ft(0, 1) = x2 * rt;
  Ft(1, 1) = x2 * tt;
  Ft(0, 2) = (xc * ru).real();
  Ft(0, 3) = (xc * ru * cdouble(0.0, 1.0)).real();
  Ft(1, 2) = (xc * tu).real();
  Ft(1, 3) = (xc * tu * cdouble(0.0, 1.0)).real();
  Ft(2, 2) = uu;
  Ft(3, 3) = uu;
  Ft(2, 3) = 0.0;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < i; ++j) Ft(i, j) = Ft(j, i);

  const int N = static_cast<int>(sc.offsets.front().size());
  FimResult r;
  r.F = (2.0 * cfg.P_S / N) * Ft;
  if (!(uu > 0.0)) throw NumericalError("fim: singular amplitude block");
  // F22 is uu * I, so its inverse is trivial
  const Eigen::Matrix2d F11 = Ft.topLeftCorner<2, 2>();
  const Eigen::Matrix2d F12 = Ft.topRightCorner<2, 2>();
  r.D = F11 - F12 * F12.transpose() / uu;
  const auto c = crb_values(r, cfg);
  r.crb_range = c.range;
  r.crb_angle = c.angle;
  return r;
}

CrbPair crb_values(const FimResult& f, const SystemConfig& cfg) {
  const double det = f.D.determinant();
  if (!(det > 0.0)) throw NumericalError("crb: det(D) is not positive");
  const double s = cfg.N / (2.0 * cfg.P_S);
  return {s * f.D(1, 1) / det, s * f.D(0, 0) / det};
}

CrbPair crb_direct(const FimResult& f) {
  Eigen::FullPivLU<Eigen::Matrix4d> lu(f.F);
  if (!lu.isInvertible()) throw NumericalError("crb: singular Fisher information");
  const Eigen::Matrix4d inv = lu.inverse();
  return {inv(0, 0), inv(1, 1)};
}

}  // namespace fopim
