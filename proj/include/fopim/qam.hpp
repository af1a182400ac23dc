#pragma once

#include <span>
#include <vector>

#include "fopim/types.hpp"

namespace fopim {

/// Rectangular mu x eta QAM with per-axis Gray labels and unit average energy.
///
/// A label packs log2(mu) I-axis bits (most significant) followed by
/// log2(eta) Q-axis bits. Along each axis the Gray-decoded index selects the
/// level 2*idx - (order-1), so neighbouring levels differ in exactly one bit.
class QamConstellation {
 public:
  QamConstellation(int mu, int eta);

  int order() const { return mu_ * eta_; }
  int mu() const { return mu_; }
  int eta() const { return eta_; }
  int bits_per_symbol() const { return bits_i_ + bits_q_; }
  /// Half the minimum distance between points, sqrt(3/(mu^2+eta^2-2)).
  double g() const { return g_; }

  cdouble point(int label) const { return points_.at(static_cast<std::size_t>(label)); }
  const std::vector<cdouble>& points() const { return points_; }

  cdouble map(std::span<const std::uint8_t> bits) const;
  Bits demap_hard(cdouble z) const;
  int nearest_label(cdouble z) const;

  int label_from_bits(std::span<const std::uint8_t> bits) const;
  void label_to_bits(int label, std::span<std::uint8_t> out) const;

 private:
  int mu_;
  int eta_;
  int bits_i_;
  int bits_q_;
  double g_;
  std::vector<cdouble> points_;
};

}  // namespace fopim
