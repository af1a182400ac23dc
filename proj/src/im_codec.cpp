#include "fopim/im_codec.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>
#include <string>

#include "fopim/combinatorics.hpp"

namespace fopim {
namespace {

std::uint64_t read_field(std::span<const std::uint8_t> bits, std::size_t pos, int width) {
  std::uint64_t value = 0;
  for (int i = 0; i < width; ++i) value = (value << 1) | (bits[pos + static_cast<std::size_t>(i)] & 1u);
  return value;
}

void write_field(Bits& bits, std::size_t pos, int width, std::uint64_t value) {
  for (int i = 0; i < width; ++i)
    bits[pos + static_cast<std::size_t>(i)] = static_cast<std::uint8_t>((value >> (width - 1 - i)) & 1u);
}

}  // namespace

FopimCodec::FopimCodec(const SystemConfig& cfg)
    : n_(cfg.N), p_(cfg.P), budget_((cfg.validate(), cfg.budget())), qam_(cfg.pam_mu(), cfg.pam_eta()) {}

FopimFrame FopimCodec::encode(std::span<const std::uint8_t> bits) const {
  if (static_cast<int>(bits.size()) != budget_.total())
    throw std::invalid_argument("encode: expected " + std::to_string(budget_.total()) + " bits, got " +
                                std::to_string(bits.size()));
  FopimFrame f;
  f.bits.assign(bits.begin(), bits.end());
  f.u = read_field(bits, 0, budget_.combination);
  f.v = read_field(bits, static_cast<std::size_t>(budget_.combination), budget_.permutation);

  const auto sorted = combinadic_unrank(f.u, p_, n_);
  const auto perm = lehmer_unrank(f.v, n_);
  const int k = qam_.bits_per_symbol();
  const auto base = static_cast<std::size_t>(budget_.index());

  f.offsets.resize(static_cast<std::size_t>(n_));
  f.labels.resize(static_cast<std::size_t>(n_));
  f.symbols.resize(static_cast<std::size_t>(n_));
  for (int n = 0; n < n_; ++n) {
    const int pos = perm[static_cast<std::size_t>(n)];
    f.offsets[static_cast<std::size_t>(n)] = sorted[static_cast<std::size_t>(pos)];
    // position pos in ascending order is the (N-1-pos)-th largest offset
    const int source = n_ - 1 - pos;
    const int label = qam_.label_from_bits(bits.subspan(base + static_cast<std::size_t>(source * k), static_cast<std::size_t>(k)));
    f.labels[static_cast<std::size_t>(n)] = label;
    f.symbols[static_cast<std::size_t>(n)] = qam_.point(label);
  }
  return f;
}

Bits FopimCodec::decode(const FrameEstimate& estimate) const {
  if (static_cast<int>(estimate.entries.size()) != n_) throw std::invalid_argument("decode: estimate must hold N entries");
  auto entries = estimate.entries;
  std::sort(entries.begin(), entries.end(), [](const auto& a, const auto& b) { return a.offset < b.offset; });
  for (std::size_t i = 0; i < entries.size(); ++i) {
    if (entries[i].offset < 0 || entries[i].offset >= p_ || (i > 0 && entries[i].offset == entries[i - 1].offset))
      throw std::invalid_argument("decode: offsets must be distinct pool indices");
  }

  Bits out(static_cast<std::size_t>(budget_.total()), 0);
  const int k = qam_.bits_per_symbol();
  const auto base = static_cast<std::size_t>(budget_.index());
  for (int i = 0; i < n_; ++i) {
    // source symbol i sits on the i-th largest detected offset
    const auto& e = entries[static_cast<std::size_t>(n_ - 1 - i)];
    qam_.label_to_bits(e.label, std::span(out).subspan(base + static_cast<std::size_t>(i * k), static_cast<std::size_t>(k)));
  }

  std::vector<int> offsets(static_cast<std::size_t>(n_));
  for (int i = 0; i < n_; ++i) offsets[static_cast<std::size_t>(i)] = entries[static_cast<std::size_t>(i)].offset;
  const std::uint64_t u = combinadic_rank(offsets, p_);
  if (u >> budget_.combination != 0) return out;

  std::vector<int> perm(static_cast<std::size_t>(n_), -1);
  for (int i = 0; i < n_; ++i) {
    const int a = entries[static_cast<std::size_t>(i)].antenna;
    if (a < 0 || a >= n_ || perm[static_cast<std::size_t>(a)] != -1) return out;
    perm[static_cast<std::size_t>(a)] = i;
  }
  const std::uint64_t v = lehmer_rank(perm);
  if (v >> budget_.permutation != 0) return out;

  write_field(out, 0, budget_.combination, u);
  write_field(out, static_cast<std::size_t>(budget_.combination), budget_.permutation, v);
  return out;
}

FrameEstimate FopimCodec::exact_estimate(const FopimFrame& frame) const {
  FrameEstimate e;
  for (int n = 0; n < n_; ++n)
    e.entries.push_back({frame.offsets[static_cast<std::size_t>(n)], n, frame.labels[static_cast<std::size_t>(n)]});
  return e;
}

Bits FopimCodec::random_bits(Rng& rng) const {
  Bits bits(static_cast<std::size_t>(budget_.total()));
  std::uint64_t word = 0;
  int left = 0;
  for (auto& b : bits) {
    if (left == 0) {
      word = rng();
      left = 64;
    }
    b = static_cast<std::uint8_t>(word & 1u);
    word >>= 1;
    --left;
  }
  return bits;
}

Scheme parse_scheme(std::string_view name) {
  if (name == "FOPIM" || name == "fopim") return Scheme::Fopim;
  if (name == "FOIM" || name == "foim") return Scheme::Foim;
  if (name == "MIMO" || name == "mimo") return Scheme::Mimo;
  if (name == "FRaC" || name == "frac") return Scheme::Frac;
  if (name == "MAJoRCom" || name == "majorcom") return Scheme::Majorcom;
  throw std::invalid_argument("unknown scheme: " + std::string(name));
}

std::string_view scheme_name(Scheme scheme) {
  switch (scheme) {
    case Scheme::Fopim: return "FOPIM";
    case Scheme::Foim: return "FOIM";
    case Scheme::Mimo: return "MIMO";
    case Scheme::Frac: return "FRaC";
    case Scheme::Majorcom: return "MAJoRCom";
  }
  return "?";
}

int bits_per_pulse(Scheme scheme, const SystemConfig& cfg, int active_count) {
  const int kc = floor_log2(binomial(cfg.P, cfg.N));
  const int kp = floor_log2(factorial(cfg.N));
  const int sym = cfg.bits_per_symbol();
  switch (scheme) {
    case Scheme::Fopim: return cfg.N * sym + kc + kp;
    case Scheme::Foim: return cfg.N * sym + kc;
    case Scheme::Mimo: return cfg.N * sym;
    case Scheme::Majorcom: return kc + kp;
    case Scheme::Frac: {
      const int n1 = active_count < 0 ? std::max(1, cfg.N - 2) : active_count;
      if (n1 < 1 || n1 > cfg.N) throw std::invalid_argument("FRaC active count must be in [1, N]");
      return floor_log2(binomial(cfg.N, n1)) + floor_log2(binomial(cfg.P, n1)) + floor_log2(factorial(n1)) + n1 * sym;
    }
  }
  throw std::invalid_argument("unknown scheme");
}

}  // namespace fopim
