#pragma once

#include <cstdint>
#include <vector>

#include "fopim/channel.hpp"
#include "fopim/im_codec.hpp"

namespace fopim {

struct DecodeResult {
  Bits bits;
  FrameEstimate estimate;
  std::uint64_t hypotheses = 0;
};

/// Indices of the N largest column energies of Y, ascending; ties go to the lower index.
std::vector<int> mltsd_stage1(const CMatrix& Y, int N);

/// Coherent detector for one PRI with genie CSI.
class CommReceiver {
 public:
  explicit CommReceiver(const SystemConfig& cfg);

  const FopimCodec& codec() const { return codec_; }

  /// Joint (antenna, symbol) decision for filter output `offset`. Adds N*J to *count.
  DetectedOffset stage2(const CMatrix& Y, int offset, const CMatrix& H, std::uint64_t* count = nullptr) const;

  /// Two-stage detector: offset set by energy, then per-offset antenna/symbol search.
  DecodeResult mltsd(const CMatrix& Y, const CMatrix& H) const;

  /// Exhaustive search over the 2^kp antenna arrangements and J^N symbol vectors
  /// on the per-antenna sum of filter outputs; the offset set comes from stage 1.
  DecodeResult ml(const CMatrix& Y, const CMatrix& H) const;

  std::uint64_t mltsd_hypotheses() const;
  std::uint64_t ml_hypotheses() const;

 private:
  SystemConfig cfg_;
  FopimCodec codec_;
  CMatrix phases_;  // N x P
  double amp_;
};

}  // namespace fopim
