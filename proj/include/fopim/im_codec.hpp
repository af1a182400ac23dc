#pragma once

#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

#include "fopim/config.hpp"
#include "fopim/qam.hpp"

namespace fopim {

/// One PRI of transmitted content.
///
/// `offsets[n]` is the pool index assigned to antenna n and `labels[n]` /
/// `symbols[n]` the QAM point radiated by antenna n. The source symbol s_i
/// (i-th group of constellation bits) rides the antenna holding the i-th
/// largest offset.
struct FopimFrame {
  std::uint64_t u = 0;
  std::uint64_t v = 0;
  std::vector<int> offsets;
  std::vector<int> labels;
  std::vector<cdouble> symbols;
  Bits bits;
};

/// Receiver-side decision for one detected pool offset.
struct DetectedOffset {
  int offset = 0;
  int antenna = 0;
  int label = 0;
};

struct FrameEstimate {
  std::vector<DetectedOffset> entries;
};

/// Bit <-> frame mapping for a fixed configuration.
class FopimCodec {
 public:
  explicit FopimCodec(const SystemConfig& cfg);

  const BitBudget& budget() const { return budget_; }
  const QamConstellation& constellation() const { return qam_; }
  int antennas() const { return n_; }
  int pool() const { return p_; }

  FopimFrame encode(std::span<const std::uint8_t> bits) const;

  /// Invalid estimates (combination or permutation rank outside the 2^k
  /// codebook, or antennas that do not form a permutation) decode to
  /// all-zero index bits; constellation bits are always demapped.
  Bits decode(const FrameEstimate& estimate) const;

  /// The estimate a perfect receiver would form for `frame`.
  FrameEstimate exact_estimate(const FopimFrame& frame) const;

  /// Uniformly random bit string of the right length.
  Bits random_bits(Rng& rng) const;

 private:
  int n_;
  int p_;
  BitBudget budget_;
  QamConstellation qam_;
};

enum class Scheme { Fopim, Foim, Mimo, Frac, Majorcom };

Scheme parse_scheme(std::string_view name);
std::string_view scheme_name(Scheme scheme);

/// Bits per pulse carried by `scheme`. `active_count` is FRaC's N1 (defaults to N-2).
int bits_per_pulse(Scheme scheme, const SystemConfig& cfg, int active_count = -1);

}  // namespace fopim
