#include <cmath>
#include <set>

#include "doctest.h"
#include "fopim/ber_theory.hpp"
#include "fopim/comm_rx.hpp"
#include "support/oracles.hpp"

using namespace fopim;

namespace {

SystemConfig make(int N, int P, int J, int L, double snr_db) {
  SystemConfig c;
  c.N = N;
  c.P = P;
  c.J = J;
  c.L = L;
  return c.with_comm_snr_db(snr_db);
}

struct Trial {
  FopimFrame frame;
  ChannelRealization ch;
  FilterBankOutput fb;
};

Trial draw(const CommReceiver& rx, const SystemConfig& c, Rng& rng, bool noiseless) {
  Trial t;
  t.frame = rx.codec().encode(rx.codec().random_bits(rng));
  t.ch = draw_channel(c, rng);
  t.fb = synth_filterbank(t.ch.H, t.frame, c, rng, noiseless);
  return t;
}

double mltsd_ber(const SystemConfig& c, int frames, std::uint64_t seed) {
  CommReceiver rx(c);
  Rng rng(seed);
  std::uint64_t errs = 0, bits = 0;
  for (int f = 0; f < frames; ++f) {
    const auto t = draw(rx, c, rng, false);
    const auto r = rx.mltsd(t.fb.Y, t.ch.H);
    for (std::size_t k = 0; k < r.bits.size(); ++k) errs += r.bits[k] != t.frame.bits[k];
    bits += r.bits.size();
  }
  return static_cast<double>(errs) / static_cast<double>(bits);
}

}  // namespace

TEST_CASE("stage 1 recovers the offset set without noise") {
  const auto c = make(6, 7, 4, 3, 10);
  CommReceiver rx(c);
  Rng rng(1);
  for (int f = 0; f < 500; ++f) {
    const auto t = draw(rx, c, rng, true);
    std::vector<int> want = t.frame.offsets;
    std::sort(want.begin(), want.end());
    CHECK(mltsd_stage1(t.fb.Y, c.N) == want);
  }
}

TEST_CASE("stage 1 edge cases") {
  CMatrix Y = CMatrix::Zero(2, 5);
  CHECK(mltsd_stage1(Y, 3) == std::vector<int>{0, 1, 2});  // ties go low
  Y(0, 4) = 1.0;
  CHECK(mltsd_stage1(Y, 3) == std::vector<int>{0, 1, 4});
  Rng rng(3);
  CMatrix R(3, 4);
  for (Eigen::Index i = 0; i < R.size(); ++i) R.data()[i] = complex_normal(rng, 1.0);
  CHECK(mltsd_stage1(R, 4) == std::vector<int>{0, 1, 2, 3});
  CHECK_THROWS(mltsd_stage1(R, 5));
}

TEST_CASE("stage 1 misdetection rate stays below the offset-set bound") {
  const auto c = make(6, 7, 4, 3, 10);
  CommReceiver rx(c);
  Rng rng(2);
  const int frames = 100000;
  int wrong = 0;
  for (int f = 0; f < frames; ++f) {
    const auto t = draw(rx, c, rng, false);
    std::vector<int> want = t.frame.offsets;
    std::sort(want.begin(), want.end());
    wrong += mltsd_stage1(t.fb.Y, c.N) != want;
  }
  const double rate = static_cast<double>(wrong) / frames;
  const double se = std::sqrt(rate * (1 - rate) / frames);
  const double bound = p_comb(c, db_to_linear(10));
  MESSAGE("offset-set error " << rate << " +- " << se << ", bound " << bound);
  CHECK(rate - 3 * se <= bound);
}

TEST_CASE("stage 2: noiseless decisions and hypothesis count") {
  const auto c = make(6, 7, 4, 3, 10);
  CommReceiver rx(c);
  Rng rng(4);
  for (int f = 0; f < 300; ++f) {
    const auto t = draw(rx, c, rng, true);
    for (int n = 0; n < c.N; ++n) {
      std::uint64_t count = 0;
      const auto d = rx.stage2(t.fb.Y, t.frame.offsets[static_cast<std::size_t>(n)], t.ch.H, &count);
      CHECK(count == static_cast<std::uint64_t>(c.N * c.J));
      CHECK(d.antenna == n);
      CHECK(d.label == t.frame.labels[static_cast<std::size_t>(n)]);
    }
  }
}

TEST_CASE("stage 2: zeroing the true column usually forces the decision away") {
  // the zero hypothesis leaves residual |y|^2, which a poorly aligned wrong column can exceed
  const auto c = make(6, 7, 4, 3, 30);
  CommReceiver rx(c);
  Rng rng(5);
  int away = 0;
  const int frames = 2000;
  for (int f = 0; f < frames; ++f) {
    const auto t = draw(rx, c, rng, false);
    const int n = f % c.N;
    const int p = t.frame.offsets[static_cast<std::size_t>(n)];
    CMatrix H = t.ch.H;
    H.col(n + c.N * p).setZero();
    away += rx.stage2(t.fb.Y, p, H).antenna != n;
  }
  MESSAGE("forced away in " << away << " of " << frames);
  CHECK(away >= frames * 80 / 100);
}

TEST_CASE("stage 2: moving the true column to another antenna moves the decision") {
  const auto c = make(6, 7, 4, 3, 30);
  CommReceiver rx(c);
  Rng rng(5);
  int moved = 0;
  const int frames = 400;
  for (int f = 0; f < frames; ++f) {
    const auto t = draw(rx, c, rng, false);
    const int n = f % c.N, m = (n + 1) % c.N;
    const int p = t.frame.offsets[static_cast<std::size_t>(n)];
    CMatrix H = t.ch.H;
    H.col(m + c.N * p) = t.ch.H.col(n + c.N * p) * (comm_phase(n, p, c) / comm_phase(m, p, c));
    H.col(n + c.N * p).setZero();
    const auto d = rx.stage2(t.fb.Y, p, H);
    moved += d.antenna == m && d.label == t.frame.labels[static_cast<std::size_t>(n)];
  }
  MESSAGE("decision moved in " << moved << " of " << frames);
  CHECK(moved >= frames * 99 / 100);
}

TEST_CASE("MLTSD: noiseless round trip and J N^2 hypotheses") {
  for (auto [N, J, L] : {std::tuple{2, 4, 1}, {4, 16, 3}, {6, 4, 3}}) {
    const auto c = make(N, N + 1, J, L, 10);
    CommReceiver rx(c);
    Rng rng(6);
    for (int f = 0; f < 1000; ++f) {
      const auto t = draw(rx, c, rng, true);
      const auto r = rx.mltsd(t.fb.Y, t.ch.H);
      REQUIRE(r.bits == t.frame.bits);
      CHECK(r.hypotheses == static_cast<std::uint64_t>(J * N * N));
    }
    CHECK(rx.mltsd_hypotheses() == static_cast<std::uint64_t>(J * N * N));
  }
}

TEST_CASE("MLTSD BER at 15 dB is under the analytic bound") {
  const auto c = make(6, 7, 4, 3, 15);
  const int frames = 20000;
  const double ber = mltsd_ber(c, frames, 7);
  const double bound = p_mltsd(c, db_to_linear(15)).P_MLTSD;
  MESSAGE("ber " << ber << " bound " << bound);
  CHECK(ber <= bound + 3 * std::sqrt(ber / (frames * 23.0)));
}

TEST_CASE("MLTSD BER falls with more receive antennas") {
  const double b1 = mltsd_ber(make(6, 7, 4, 1, 10), 10000, 8);
  const double b3 = mltsd_ber(make(6, 7, 4, 3, 10), 10000, 8);
  const double b6 = mltsd_ber(make(6, 7, 4, 6, 10), 10000, 8);
  MESSAGE("L=1 " << b1 << " L=3 " << b3 << " L=6 " << b6);
  CHECK(b6 < b3);
  CHECK(b3 < b1);
}

TEST_CASE("ML: noiseless round trip and hypothesis count") {
  const auto c = make(2, 3, 4, 2, 10);
  CommReceiver rx(c);
  Rng rng(9);
  for (int f = 0; f < 1000; ++f) {
    const auto t = draw(rx, c, rng, true);
    const auto r = rx.ml(t.fb.Y, t.ch.H);
    REQUIRE(r.bits == t.frame.bits);
    CHECK(r.hypotheses == 2u * 16u);
  }
  CHECK(CommReceiver(make(6, 7, 4, 3, 10)).ml_hypotheses() == 512u * 4096u);
  CHECK(CommReceiver(make(4, 5, 16, 3, 10)).ml_hypotheses() == 16u * 65536u);
  CHECK(rx.mltsd_hypotheses() < rx.ml_hypotheses());
}

TEST_CASE("ML agrees with an independent brute-force minimiser") {
  for (double snr : {0.0, 5.0, 10.0, 20.0}) {
    const auto c = make(2, 3, 4, 2, snr);
    CommReceiver rx(c);
    Rng rng(10);
    for (int f = 0; f < 300; ++f) {
      const auto t = draw(rx, c, rng, false);
      const auto r = rx.ml(t.fb.Y, t.ch.H);
      const auto ref = testing::brute_force_ml(t.fb.Y, t.ch.H, c);
      for (int n = 0; n < c.N; ++n) {
        const auto& e = r.estimate.entries[static_cast<std::size_t>(n)];
        CHECK(e.antenna == n);
        CHECK(e.offset == ref.offsets[static_cast<std::size_t>(n)]);
        CHECK(e.label == ref.labels[static_cast<std::size_t>(n)]);
      }
    }
  }
}

TEST_CASE("ML on a wider configuration still decodes noiseless frames") {
  const auto c = make(4, 5, 4, 3, 10);
  CommReceiver rx(c);
  Rng rng(11);
  for (int f = 0; f < 100; ++f) {
    const auto t = draw(rx, c, rng, true);
    CHECK(rx.ml(t.fb.Y, t.ch.H).bits == t.frame.bits);
  }
}
