#include <cmath>

#include "doctest.h"
#include "fopim/channel.hpp"

using namespace fopim;

TEST_CASE("channel matrix shape and second moments") {
  SystemConfig c;
  c.sigma2 = 2.0;
  Rng rng(1);
  double e = 0, m_re = 0;
  const int reps = 4000;
  for (int r = 0; r < reps; ++r) {
    const auto ch = draw_channel(c, rng);
    REQUIRE(ch.H.rows() == c.L);
    REQUIRE(ch.H.cols() == c.N * c.P);
    e += ch.H.squaredNorm() / static_cast<double>(ch.H.size());
    m_re += ch.H.sum().real() / static_cast<double>(ch.H.size());
  }
  CHECK(e / reps == doctest::Approx(2.0).epsilon(0.02));
  CHECK(std::abs(m_re / reps) < 0.01);
}

TEST_CASE("effective channel selects column n + N p") {
  SystemConfig c;
  Rng rng(2);
  const auto ch = draw_channel(c, rng);
  const std::vector<int> off{6, 0, 3, 2, 1, 5};
  const CMatrix G = effective_channel(ch.H, off, c.N, c.P);
  for (int n = 0; n < c.N; ++n) CHECK(G.col(n) == ch.H.col(n + c.N * off[static_cast<std::size_t>(n)]));
  const std::vector<int> bad{7, 0, 1, 2, 3, 4};
  CHECK_THROWS(effective_channel(ch.H, bad, c.N, c.P));
}

TEST_CASE("communication phase matches the delay formula") {
  SystemConfig c;
  for (int n = 0; n < c.N; ++n)
    for (int p = 0; p < c.P; ++p) {
      const long double tau = (static_cast<long double>(c.R_C) - n * static_cast<long double>(c.d1) * std::sin(static_cast<long double>(c.theta_C))) / kSpeedOfLight;
      const long double arg = -2.0L * 3.14159265358979323846264338327950288L * (c.f_c + p * c.delta_f) * tau;
      const cdouble ref(static_cast<double>(std::cos(arg)), static_cast<double>(std::sin(arg)));
      const cdouble got = comm_phase(n, p, c);
      CHECK(std::abs(got) == doctest::Approx(1.0));
      CHECK(std::abs(got - ref) < 1e-9);
    }
}

TEST_CASE("filter bank: noiseless columns carry exactly the scaled channel") {
  SystemConfig c = SystemConfig{}.with_comm_snr_db(10);
  FopimCodec codec(c);
  Rng rng(3);
  const auto f = codec.encode(codec.random_bits(rng));
  const auto ch = draw_channel(c, rng);
  const auto fb = synth_filterbank(ch.H, f, c, rng, true);
  std::vector<bool> used(static_cast<std::size_t>(c.P), false);
  for (int n = 0; n < c.N; ++n) {
    const int p = f.offsets[static_cast<std::size_t>(n)];
    used[static_cast<std::size_t>(p)] = true;
    const CVector want = std::sqrt(c.P_S / c.N) * comm_phase(n, p, c) * f.symbols[static_cast<std::size_t>(n)] * ch.H.col(n + c.N * p);
    CHECK((fb.Y.col(p) - want).norm() < 1e-14);
  }
  for (int p = 0; p < c.P; ++p)
    if (!used[static_cast<std::size_t>(p)]) CHECK(fb.Y.col(p).norm() == 0.0);
}

TEST_CASE("filter bank noise has variance N0 / P per element") {
  SystemConfig c = SystemConfig{}.with_comm_snr_db(0);
  c.P_S = 0.0;  // isolate the noise
  FopimCodec codec(c);
  Rng rng(4);
  double e = 0;
  const int reps = 5000;
  for (int r = 0; r < reps; ++r) {
    const auto f = codec.encode(codec.random_bits(rng));
    const auto ch = draw_channel(c, rng);
    const auto fb = synth_filterbank(ch.H, f, c, rng, false);
    e += fb.Y.squaredNorm() / static_cast<double>(fb.Y.size());
  }
  CHECK(e / reps == doctest::Approx(c.N0 / c.P).epsilon(0.03));
}
