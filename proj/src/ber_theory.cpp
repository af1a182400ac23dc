#include "fopim/ber_theory.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include <boost/math/quadrature/exp_sinh.hpp>

#include "fopim/qam.hpp"

namespace fopim {
namespace {

double noise_power(const SystemConfig& cfg, double snr) {
  if (!(snr > 0.0)) throw std::invalid_argument("snr must be positive");
  return std::isinf(snr) ? 0.0 : cfg.P_S / snr;
}

// sum_{k<L} C(L-1+k, k) r^k with the coefficient built incrementally
double negbin_sum(double r, int L) {
  double term = 1.0, sum = 0.0;
  for (int k = 0; k < L; ++k) {
    if (k > 0) term *= r * static_cast<double>(L - 1 + k) / static_cast<double>(k);
    sum += term;
  }
  return sum;
}

QamConstellation make_qam(const SystemConfig& cfg) { return {cfg.pam_mu(), cfg.pam_eta()}; }

}  // namespace

double q_function(double x) { return 0.5 * std::erfc(x / std::numbers::sqrt2); }

double prob_y_positive(double s1, double s2, int L) {
  if (L < 1) throw std::invalid_argument("prob_y_positive: L >= 1");
  if (s1 < 0.0 || s2 < 0.0 || s1 + s2 <= 0.0) throw std::invalid_argument("prob_y_positive: bad variances");
  const double q = s2 / (s1 + s2);
  return std::pow(q, L) * negbin_sum(1.0 - q, L);
}

double prob_y_positive_integral(double s1, double s2, int L) {
  if (L < 1 || !(s1 > 0.0) || !(s2 > 0.0)) throw std::invalid_argument("prob_y_positive_integral: bad arguments");
  // |y|^2 ~ Gamma(L, rate a), |n|^2 ~ Gamma(L, rate b); density of |n|^2 - |y|^2 at t > 0 is
  // a^L b^L e^{-bt} / ((L-1)!)^2 * sum_i C(L-1, i) t^{L-1-i} (L-1+i)! / (a+b)^{L+i}
  const double a = 1.0 / (2.0 * s1);
  const double b = 1.0 / (2.0 * s2);
  // work in u = b t so the integrand decays like e^{-u}
  std::vector<double> coef(static_cast<std::size_t>(L));
  const double lfact = std::lgamma(static_cast<double>(L));
  for (int i = 0; i < L; ++i) {
    const double lc = std::lgamma(static_cast<double>(L)) - std::lgamma(static_cast<double>(i + 1)) -
                      std::lgamma(static_cast<double>(L - i));
    // a^L b^L / ((L-1)!)^2 * C * (L-1+i)! / (a+b)^{L+i} * b^{-(L-1-i)} * (1/b)
    const double lv = L * std::log(a) + L * std::log(b) - 2.0 * lfact + lc + std::lgamma(static_cast<double>(L + i)) -
                      (L + i) * std::log(a + b) - (L - i) * std::log(b);
    coef[static_cast<std::size_t>(i)] = std::exp(lv);
  }
  auto f = [&](double u) {
    if (!(std::exp(-u) > 0.0)) return 0.0;
    double s = 0.0;
    for (int i = 0; i < L; ++i) s += coef[static_cast<std::size_t>(i)] * std::pow(u, L - 1 - i);
    return s * std::exp(-u);
  };
  boost::math::quadrature::exp_sinh<double> integrator;
  return integrator.integrate(f, 0.0, std::numeric_limits<double>::infinity());
}

double rayleigh_p(double a) {
  if (a < 0.0) throw std::invalid_argument("rayleigh_p: a >= 0");
  if (std::isinf(a)) return 0.0;
  const double t = std::sqrt(a / (1.0 + a));
  return 0.5 / ((1.0 + a) * (1.0 + t));
}

double rayleigh_mrc_tail(double a, int L) {
  const double p = rayleigh_p(a);
  return std::pow(p, L) * negbin_sum(1.0 - p, L);
}

double p_e(const SystemConfig& cfg, double snr) {
  const double n0 = noise_power(cfg, snr);
  const auto qam = make_qam(cfg);
  const double s2 = n0 / (2.0 * cfg.P);
  double sum = 0.0;
  for (const auto& x : qam.points()) {
    const double s1 = cfg.P_S / (2.0 * cfg.N) * cfg.sigma2 * std::norm(x) + s2;
    sum += (s2 == 0.0) ? 0.0 : prob_y_positive(s1, s2, cfg.L);
  }
  return sum / static_cast<double>(qam.order());
}

double p_O(const SystemConfig& cfg, double snr) { return 1.0 - std::pow(1.0 - p_e(cfg, snr), cfg.P - cfg.N); }

double p_comb(const SystemConfig& cfg, double snr) { return 1.0 - std::pow(1.0 - p_O(cfg, snr), cfg.N); }

double pep_antenna(double sigma2_3, const SystemConfig& cfg, double snr) {
  const double n0 = noise_power(cfg, snr);
  const double alpha = n0 == 0.0 ? std::numeric_limits<double>::infinity()
                                 : cfg.P * cfg.P_S * sigma2_3 / (2.0 * cfg.N * n0);
  return rayleigh_mrc_tail(alpha, cfg.L);
}

double p_I(const SystemConfig& cfg, double snr) {
  const auto qam = make_qam(cfg);
  double pair_sum = 0.0;
  for (const auto& x : qam.points())
    for (const auto& xh : qam.points())
      pair_sum += pep_antenna(cfg.sigma2 * (std::norm(xh) + std::norm(x)) / 2.0, cfg, snr);
  // ordered antenna pairs with n_hat != n all share the same PEP
  const double pairs = static_cast<double>(cfg.N) * (cfg.N - 1);
  return std::min(1.0, pairs * pair_sum / (static_cast<double>(cfg.N) * qam.order()));
}

double p_P(const SystemConfig& cfg, double snr) {
  const double po = p_O(cfg, snr);
  return (cfg.N - 1.0) / cfg.N * po + (1.0 - po) * p_I(cfg, snr);
}

double p_perm(const SystemConfig& cfg, double snr) { return 1.0 - std::pow(1.0 - p_P(cfg, snr), cfg.N); }

double p_im(const SystemConfig& cfg, double p_df) {
  const int k = cfg.budget().index();
  if (k < 1) throw std::invalid_argument("p_im: configuration carries no index bits");
  const double m = std::ldexp(1.0, k);
  return m * p_df / (2.0 * (m - 1.0));
}

double p_pam(int order, int b, const SystemConfig& cfg, double snr) {
  const int bits = floor_log2(static_cast<std::uint64_t>(order));
  if (order < 2 || (1 << bits) != order) throw std::invalid_argument("p_pam: order must be a power of two >= 2");
  if (b < 1 || b > bits) throw std::invalid_argument("p_pam: bit index out of range");
  const double n0 = noise_power(cfg, snr);
  const auto qam = make_qam(cfg);
  const double g = qam.g();
  const int half = 1 << (b - 1);
  const int upper = order - (order >> b);  // (1 - 2^-b) * order
  double sum = 0.0;
  for (int i = 0; i < upper; ++i) {
    const int w = (i * half) / order;
    const double sign = (w % 2 == 0) ? 1.0 : -1.0;
    const double weight = half - std::floor(static_cast<double>(i * half) / order + 0.5);
    const double d = (2.0 * i + 1.0) * g;
    const double beta = n0 == 0.0 ? std::numeric_limits<double>::infinity()
                                  : d * d * cfg.P * cfg.P_S * cfg.sigma2 / (cfg.N * n0);
    sum += sign * weight * rayleigh_mrc_tail(beta, cfg.L);
  }
  return 2.0 * sum / order;
}

double p_qam(const SystemConfig& cfg, double snr) {
  const int mu = cfg.pam_mu();
  const int eta = cfg.pam_eta();
  double sum = 0.0;
  int nbits = 0;
  if (mu > 1)
    for (int b = 1; b <= floor_log2(static_cast<std::uint64_t>(mu)); ++b, ++nbits) sum += p_pam(mu, b, cfg, snr);
  if (eta > 1)
    for (int b = 1; b <= floor_log2(static_cast<std::uint64_t>(eta)); ++b, ++nbits) sum += p_pam(eta, b, cfg, snr);
  return nbits == 0 ? 0.0 : sum / nbits;
}

double p_con(const SystemConfig& cfg, double snr) {
  const double pp = p_P(cfg, snr);
  return 0.5 * pp + (1.0 - pp) * p_qam(cfg, snr);
}

BerBreakdown p_mltsd(const SystemConfig& cfg, double snr) {
  BerBreakdown r;
  r.P_e = p_e(cfg, snr);
  r.P_O = 1.0 - std::pow(1.0 - r.P_e, cfg.P - cfg.N);
  r.P_comb = 1.0 - std::pow(1.0 - r.P_O, cfg.N);
  r.P_I = p_I(cfg, snr);
  r.P_P = (cfg.N - 1.0) / cfg.N * r.P_O + (1.0 - r.P_O) * r.P_I;
  r.P_perm = 1.0 - std::pow(1.0 - r.P_P, cfg.N);
  r.P_df = 1.0 - (1.0 - r.P_comb) * (1.0 - r.P_perm);
  r.P_IM = p_im(cfg, r.P_df);
  r.P_QAM = p_qam(cfg, snr);
  r.P_con = 0.5 * r.P_P + (1.0 - r.P_P) * r.P_QAM;
  const auto bb = cfg.budget();
  const double kim = bb.index();
  const double kcon = bb.constellation;
  r.P_MLTSD = (r.P_IM * kim + r.P_con * kcon) / (kim + kcon);
  return r;
}

namespace mc {
namespace {

double sq_norm_draw(Rng& rng, int L, double complex_var) {
  double e = 0.0;
  for (int l = 0; l < L; ++l) e += std::norm(complex_normal(rng, complex_var));
  return e;
}

}  // namespace

double prob_y_positive(double s1, double s2, int L, std::uint64_t draws, std::uint64_t seed) {
  Rng rng(seed);
  std::uint64_t hits = 0;
  for (std::uint64_t t = 0; t < draws; ++t) {
    const double y = sq_norm_draw(rng, L, 2.0 * s1);
    const double n = sq_norm_draw(rng, L, 2.0 * s2);
    hits += n > y;
  }
  return static_cast<double>(hits) / static_cast<double>(draws);
}

double p_e(const SystemConfig& cfg, double snr, std::uint64_t draws, std::uint64_t seed) {
  Rng rng(seed);
  const double n0 = noise_power(cfg, snr);
  const auto qam = make_qam(cfg);
  const double amp = std::sqrt(cfg.P_S / cfg.N);
  const double nv = n0 / cfg.P;
  std::uint64_t hits = 0;
  for (std::uint64_t t = 0; t < draws; ++t) {
    const cdouble x = qam.point(static_cast<int>(t % static_cast<std::uint64_t>(qam.order())));
    double occupied = 0.0, empty = 0.0;
    for (int l = 0; l < cfg.L; ++l) {
      const cdouble h = complex_normal(rng, cfg.sigma2);
      occupied += std::norm(amp * h * x + complex_normal(rng, nv));
      empty += std::norm(complex_normal(rng, nv));
    }
    hits += empty > occupied;
  }
  return static_cast<double>(hits) / static_cast<double>(draws);
}

double pep_antenna(const SystemConfig& cfg, double snr, int label, int alt_label, std::uint64_t draws,
                   std::uint64_t seed) {
  Rng rng(seed);
  const double n0 = noise_power(cfg, snr);
  const auto qam = make_qam(cfg);
  const double amp = std::sqrt(cfg.P_S / cfg.N);
  const double nv = n0 / cfg.P;
  const cdouble x = qam.point(label);
  const cdouble xh = qam.point(alt_label);
  std::uint64_t hits = 0;
  for (std::uint64_t t = 0; t < draws; ++t) {
    double d_true = 0.0, d_alt = 0.0;
    for (int l = 0; l < cfg.L; ++l) {
      const cdouble h_true = complex_normal(rng, cfg.sigma2);
      const cdouble h_alt = complex_normal(rng, cfg.sigma2);
      const cdouble y = amp * h_true * x + complex_normal(rng, nv);
      d_true += std::norm(y - amp * h_true * x);
      d_alt += std::norm(y - amp * h_alt * xh);
    }
    hits += d_alt < d_true;
  }
  return static_cast<double>(hits) / static_cast<double>(draws);
}

double p_qam(const SystemConfig& cfg, double snr, std::uint64_t draws, std::uint64_t seed) {
  Rng rng(seed);
  const double n0 = noise_power(cfg, snr);
  const auto qam = make_qam(cfg);
  const double amp = std::sqrt(cfg.P_S / cfg.N);
  const double nv = n0 / cfg.P;
  const int k = qam.bits_per_symbol();
  Bits sent(static_cast<std::size_t>(k));
  std::uint64_t errors = 0;
  std::vector<cdouble> h(static_cast<std::size_t>(cfg.L));
  for (std::uint64_t t = 0; t < draws; ++t) {
    const int label = static_cast<int>(t % static_cast<std::uint64_t>(qam.order()));
    qam.label_to_bits(label, sent);
    const cdouble x = qam.point(label);
    cdouble num = 0.0;
    double den = 0.0;
    for (int l = 0; l < cfg.L; ++l) {
      const cdouble hl = complex_normal(rng, cfg.sigma2);
      const cdouble y = amp * hl * x + complex_normal(rng, nv);
      num += std::conj(hl) * y;
      den += std::norm(hl);
    }
    const auto got = qam.demap_hard(num / (amp * den));
    for (int i = 0; i < k; ++i) errors += got[static_cast<std::size_t>(i)] != sent[static_cast<std::size_t>(i)];
  }
  return static_cast<double>(errors) / (static_cast<double>(draws) * k);
}

}  // namespace mc
}  // namespace fopim
