#include "fopim/harness/runner.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <mutex>
#include <thread>

#include "fopim/ber_theory.hpp"
#include "fopim/channel.hpp"
#include "fopim/comm_rx.hpp"
#include "fopim/crb.hpp"
#include "fopim/sensing.hpp"

namespace fopim::harness {
namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ull;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
  return x ^ (x >> 31);
}

// sample mean and standard error of the mean from running sums
struct Moments {
  double sum = 0.0;
  double sum_sq = 0.0;
  std::uint64_t n = 0;

  void add(double x) {
    sum += x;
    sum_sq += x * x;
    ++n;
  }
  void merge(const Moments& o) {
    sum += o.sum;
    sum_sq += o.sum_sq;
    n += o.n;
  }
  double mean() const { return n ? sum / static_cast<double>(n) : 0.0; }
  double stderr_of_mean() const {
    if (n < 2) return 0.0;
    const double m = mean();
    const double var = std::max(0.0, (sum_sq - static_cast<double>(n) * m * m) / static_cast<double>(n - 1));
    return std::sqrt(var / static_cast<double>(n));
  }
  // sqrt(mean) with the delta-method error
  double root_mean() const { return std::sqrt(std::max(0.0, mean())); }
  double root_stderr() const {
    const double r = root_mean();
    return r > 0.0 ? stderr_of_mean() / (2.0 * r) : 0.0;
  }
};

struct Point {
  double sweep = 0.0;
  double series = 0.0;
  std::string suffix;
};

std::vector<Point> points_of(const ExperimentSpec& spec) {
  std::vector<Point> pts;
  const std::vector<double> series = spec.has_series() ? spec.series_values : std::vector<double>{0.0};
  for (double s : series)
    for (double v : spec.sweep_values)
      pts.push_back({v, s, spec.has_series() ? "@" + spec.series_axis + "=" + format_number(s) : std::string()});
  return pts;
}

ResultTable new_table(const ExperimentSpec& spec) {
  spec.validate();
  ResultTable t;
  t.seed = spec.seed;
  t.config_hash = config_hash(spec);
  t.version = version_string();
  t.canonical_config = canonical_text(spec);
  return t;
}

// --- BER ------------------------------------------------------------------

struct DecoderTally {
  std::uint64_t frames = 0;
  std::uint64_t errors = 0;
  std::uint64_t bits = 0;
  std::uint64_t set_errors = 0;
  Moments frac;  // per-frame bit error fraction
  bool done = false;

  void merge(const DecoderTally& o) {
    frames += o.frames;
    errors += o.errors;
    bits += o.bits;
    set_errors += o.set_errors;
    frac.merge(o.frac);
  }
};

constexpr int kDecoders = 2;  // 0 = mltsd, 1 = ml

struct BerPointResult {
  DecoderTally tally[kDecoders];
  bool active[kDecoders] = {false, false};
};

bool same_set(const FrameEstimate& e, const FopimFrame& f) {
  std::vector<int> a, b = f.offsets;
  for (const auto& x : e.entries) a.push_back(x.offset);
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  return a == b;
}

BerPointResult run_ber_point(const ExperimentSpec& spec, std::uint64_t point_index, const SystemConfig& cfg,
                             double snr_db) {
  BerPointResult res;
  res.active[0] = spec.runs_decoder("mltsd");
  res.active[1] = spec.runs_decoder("ml") && snr_db >= spec.ml_min_snr_db;
  const CommReceiver rx(cfg);
  const FopimCodec& codec = rx.codec();
  const CMatrix phases = comm_phase_table(cfg);
  const bool noiseless = std::isinf(snr_db) && snr_db > 0;
  const auto bits_per_frame = static_cast<std::uint64_t>(codec.budget().total());

  for (int d = 0; d < kDecoders; ++d) res.tally[d].done = !res.active[d];
  std::uint64_t next_batch = 0;
  const auto W = static_cast<std::size_t>(spec.workers);

  while (!(res.tally[0].done && res.tally[1].done)) {
    bool run[kDecoders];
    for (int d = 0; d < kDecoders; ++d) run[d] = !res.tally[d].done;
    std::vector<BerPointResult> batches(W);
    parallel_for(W, spec.workers, [&](std::size_t w) {
      const std::uint64_t b = next_batch + w;
      auto& out = batches[w];
      for (std::uint64_t i = 0; i < spec.batch_frames; ++i) {
        const std::uint64_t frame_index = b * spec.batch_frames + i;
        Rng rng = substream(spec.seed, point_index, frame_index);
        const auto frame = codec.encode(codec.random_bits(rng));
        const auto ch = draw_channel(cfg, rng);
        const auto fb = synth_filterbank(ch.H, frame, cfg, phases, rng, noiseless);
        for (int d = 0; d < kDecoders; ++d) {
          if (!run[d]) continue;
          const auto r = d == 0 ? rx.mltsd(fb.Y, ch.H) : rx.ml(fb.Y, ch.H);
          std::uint64_t errs = 0;
          for (std::size_t k = 0; k < r.bits.size(); ++k) errs += r.bits[k] != frame.bits[k];
          auto& t = out.tally[d];
          ++t.frames;
          t.errors += errs;
          t.bits += bits_per_frame;
          t.set_errors += same_set(r.estimate, frame) ? 0 : 1;
          t.frac.add(static_cast<double>(errs) / static_cast<double>(bits_per_frame));
        }
      }
    });
    // ordered reduction; batches past a decoder's stopping point are discarded
    for (std::size_t w = 0; w < W; ++w) {
      for (int d = 0; d < kDecoders; ++d) {
        auto& t = res.tally[d];
        if (t.done || !run[d]) continue;
        t.merge(batches[w].tally[d]);
        if ((t.errors >= spec.min_errors && t.frames >= spec.min_frames) || t.bits >= spec.max_bits) t.done = true;
      }
    }
    next_batch += W;
  }
  return res;
}

double ber_of(const DecoderTally& t) { return t.bits ? static_cast<double>(t.errors) / static_cast<double>(t.bits) : 0.0; }

ResultTable run_ber_like(const ExperimentSpec& spec, bool validation) {
  ResultTable t = new_table(spec);
  const auto pts = points_of(spec);
  for (std::size_t i = 0; i < pts.size(); ++i) {
    const auto& p = pts[i];
    const SystemConfig cfg = spec.config_at(p.sweep, p.series);
    const double snr_db = spec.snr_db_at(p.sweep, p.series);
    const auto r = run_ber_point(spec, i, cfg, snr_db);
    const auto bound = p_mltsd(cfg, db_to_linear(snr_db));
    const char* names[kDecoders] = {"ber_mltsd", "ber_ml"};
    for (int d = 0; d < kDecoders; ++d) {
      if (!r.active[d]) continue;
      const auto& tal = r.tally[d];
      t.add(spec.sweep_axis, p.sweep, names[d] + p.suffix, ber_of(tal), tal.frac.stderr_of_mean(), tal.frames);
    }
    t.add(spec.sweep_axis, p.sweep, "bound_mltsd" + p.suffix, bound.P_MLTSD, 0.0, 0);
    if (validation && r.active[0]) {
      const auto& tal = r.tally[0];
      const double n = static_cast<double>(tal.frames);
      const double set_err = n > 0 ? static_cast<double>(tal.set_errors) / n : 0.0;
      const double set_se = n > 1 ? std::sqrt(set_err * (1.0 - set_err) / n) : 0.0;
      const double ber = ber_of(tal);
      const double se = tal.frac.stderr_of_mean();
      t.add(spec.sweep_axis, p.sweep, "offset_set_error" + p.suffix, set_err, set_se, tal.frames);
      t.add(spec.sweep_axis, p.sweep, "bound_p_comb" + p.suffix, bound.P_comb, 0.0, 0);
      t.add(spec.sweep_axis, p.sweep, "ratio_mc_bound" + p.suffix, bound.P_MLTSD > 0 ? ber / bound.P_MLTSD : 0.0, 0.0,
            tal.frames);
      t.add(spec.sweep_axis, p.sweep, "bound_holds" + p.suffix, ber - 3.0 * se <= bound.P_MLTSD ? 1.0 : 0.0, 0.0,
            tal.frames);
    }
  }
  return t;
}

// --- sensing ----------------------------------------------------------------

struct SensingTrial {
  double angle_fda = 0, range_fda = 0, angle_mimo = 0, range_mimo = 0;  // squared errors
  double crb_angle = 0, crb_range = 0;
};

SensingTrial run_sensing_trial(const SystemConfig& cfg, bool noiseless, Rng& rng, bool estimators) {
  SensingTrial out;
  const auto sc = draw_scenario(cfg, rng);
  if (cfg.N1 > 0.0) {
    const auto f = fim(sc, cfg);
    out.crb_angle = rad_to_deg(rad_to_deg(f.crb_angle));
    out.crb_range = f.crb_range;
  }
  if (!estimators) return out;
  const auto snaps = synth_snapshots(sc, cfg, rng, noiseless);
  const auto est = estimate_target(snaps, sc.r_c, cfg);
  const auto msc = without_offsets(sc);
  const auto msnaps = synth_snapshots(msc, cfg, rng, noiseless);
  const auto mest = mimo_baseline(msnaps, sc.R_T, cfg);
  auto sq = [](double x) { return x * x; };
  out.angle_fda = sq(rad_to_deg(est.theta - sc.theta));
  out.range_fda = sq(est.range - sc.R_T);
  out.angle_mimo = sq(rad_to_deg(mest.theta - sc.theta));
  out.range_mimo = sq(mest.range - sc.R_T);
  return out;
}

ResultTable run_sensing(const ExperimentSpec& spec, bool estimators) {
  ResultTable t = new_table(spec);
  const auto pts = points_of(spec);
  for (std::size_t i = 0; i < pts.size(); ++i) {
    const auto& p = pts[i];
    const SystemConfig cfg = spec.config_at(p.sweep, p.series);
    const double snr_db = spec.snr_db_at(p.sweep, p.series);
    const bool noiseless = std::isinf(snr_db) && snr_db > 0;
    std::vector<SensingTrial> trials(static_cast<std::size_t>(spec.trials));
    parallel_for(trials.size(), spec.workers, [&](std::size_t k) {
      Rng rng = substream(spec.seed, i, k);
      trials[k] = run_sensing_trial(cfg, noiseless, rng, estimators);
    });
    Moments af, rf, am, rm, ca, cr;
    for (const auto& tr : trials) {
      af.add(tr.angle_fda);
      rf.add(tr.range_fda);
      am.add(tr.angle_mimo);
      rm.add(tr.range_mimo);
      ca.add(tr.crb_angle);
      cr.add(tr.crb_range);
    }
    const auto n = static_cast<std::uint64_t>(spec.trials);
    auto emit = [&](const char* name, const Moments& m) {
      t.add(spec.sweep_axis, p.sweep, name + p.suffix, m.root_mean(), m.root_stderr(), n);
    };
    if (estimators) {
      emit("rmse_angle_deg_fda", af);
      emit("rmse_range_m_fda", rf);
      emit("rmse_angle_deg_mimo", am);
      emit("rmse_range_m_mimo", rm);
    }
    emit("root_crb_angle_deg", ca);
    emit("root_crb_range_m", cr);
  }
  return t;
}

}  // namespace

std::uint64_t substream_seed(std::uint64_t seed, std::uint64_t point, std::uint64_t trial) {
  return splitmix64(splitmix64(splitmix64(seed) ^ point) ^ trial);
}

Rng substream(std::uint64_t seed, std::uint64_t point, std::uint64_t trial) {
  return Rng(substream_seed(seed, point, trial));
}

void parallel_for(std::size_t count, int workers, const std::function<void(std::size_t)>& body) {
  const auto nthreads = std::min<std::size_t>(count, static_cast<std::size_t>(std::max(1, workers)));
  if (nthreads <= 1) {
    for (std::size_t i = 0; i < count; ++i) body(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr error;
  std::mutex error_mutex;
  auto work = [&] {
    for (;;) {
      const std::size_t i = next.fetch_add(1);
      if (i >= count) return;
      try {
        body(i);
      } catch (...) {
        std::lock_guard lock(error_mutex);
        if (!error) error = std::current_exception();
        next.store(count);
        return;
      }
    }
  };
  std::vector<std::thread> pool;
  pool.reserve(nthreads);
  for (std::size_t w = 0; w < nthreads; ++w) pool.emplace_back(work);
  for (auto& th : pool) th.join();
  if (error) std::rethrow_exception(error);
}

ResultTable run_ber_experiment(const ExperimentSpec& spec) {
  if (spec.kind != ExperimentKind::BerSweep) throw ConfigError("run_ber_experiment: kind must be ber_sweep");
  return run_ber_like(spec, false);
}

ResultTable run_bound_validation(const ExperimentSpec& spec) {
  if (spec.kind != ExperimentKind::BoundValidation && spec.kind != ExperimentKind::BerSweep)
    throw ConfigError("run_bound_validation: kind must be bound_validation or ber_sweep");
  ExperimentSpec s = spec;
  s.kind = ExperimentKind::BoundValidation;
  s.decoders = {"mltsd"};
  return run_ber_like(s, true);
}

ResultTable run_rmse_experiment(const ExperimentSpec& spec) {
  if (spec.kind != ExperimentKind::RmseVsSnr && spec.kind != ExperimentKind::RmseVsSnapshots)
    throw ConfigError("run_rmse_experiment: kind must be rmse_vs_snr or rmse_vs_snapshots");
  return run_sensing(spec, true);
}

ResultTable run_crb_table(const ExperimentSpec& spec) {
  if (spec.kind != ExperimentKind::RmseVsSnr && spec.kind != ExperimentKind::RmseVsSnapshots)
    throw ConfigError("run_crb_table: kind must be rmse_vs_snr or rmse_vs_snapshots");
  return run_sensing(spec, false);
}

ResultTable run_rate_table(const ExperimentSpec& spec) {
  if (spec.kind != ExperimentKind::RateTable) throw ConfigError("run_rate_table: kind must be rate_table");
  ResultTable t = new_table(spec);
  for (const auto& p : points_of(spec)) {
    const SystemConfig cfg = spec.config_at(p.sweep, p.series);
    auto row = [&](const std::string& name, double v) { t.add(spec.sweep_axis, p.sweep, name + p.suffix, v, 0.0, 1); };
    const int fopim = bits_per_pulse(Scheme::Fopim, cfg);
    row("bits_fopim", fopim);
    row("bits_foim", bits_per_pulse(Scheme::Foim, cfg));
    row("bits_mimo", bits_per_pulse(Scheme::Mimo, cfg));
    row("bits_majorcom", bits_per_pulse(Scheme::Majorcom, cfg));
    const int frac = bits_per_pulse(Scheme::Frac, cfg);
    row("bits_frac", frac);
    for (int n1 = 1; n1 <= cfg.N; ++n1) row("bits_frac_n1=" + std::to_string(n1), bits_per_pulse(Scheme::Frac, cfg, n1));
    row("margin_fopim_frac", fopim - frac);
  }
  return t;
}

ResultTable run_experiment(const ExperimentSpec& spec) {
  switch (spec.kind) {
    case ExperimentKind::BerSweep: return run_ber_experiment(spec);
    case ExperimentKind::BoundValidation: return run_bound_validation(spec);
    case ExperimentKind::RmseVsSnr:
    case ExperimentKind::RmseVsSnapshots: return run_rmse_experiment(spec);
    case ExperimentKind::RateTable: return run_rate_table(spec);
  }
  throw ConfigError("unknown experiment kind");
}

}  // namespace fopim::harness
