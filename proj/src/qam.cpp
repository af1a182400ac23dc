#include "fopim/qam.hpp"

#include <algorithm>
#include <cmath>

#include "fopim/config.hpp"

namespace fopim {
namespace {

int gray_encode(int idx) { return idx ^ (idx >> 1); }

int gray_decode(int code) {
  int idx = 0;
  for (; code != 0; code >>= 1) idx ^= code;
  return idx;
}

// Nearest PAM index for an amplitude already divided by g.
int nearest_level(double amplitude, int order) {
  const double idx = std::round((amplitude + (order - 1)) / 2.0);
  return static_cast<int>(std::clamp(idx, 0.0, static_cast<double>(order - 1)));
}

}  // namespace

QamConstellation::QamConstellation(int mu, int eta) : mu_(mu), eta_(eta) {
  auto pow2 = [](int x) { return x > 0 && (x & (x - 1)) == 0; };
  if (!pow2(mu) || !pow2(eta) || mu * eta < 2) throw std::invalid_argument("QAM axis orders must be powers of two");
  bits_i_ = floor_log2(static_cast<std::uint64_t>(mu));
  bits_q_ = floor_log2(static_cast<std::uint64_t>(eta));
  g_ = std::sqrt(3.0 / (mu * mu + eta * eta - 2.0));
  points_.resize(static_cast<std::size_t>(mu * eta));
  for (int label = 0; label < mu * eta; ++label) {
    const int gi = label >> bits_q_;
    const int gq = label & ((1 << bits_q_) - 1);
    const double ai = 2.0 * gray_decode(gi) - (mu - 1);
    const double aq = 2.0 * gray_decode(gq) - (eta - 1);
    points_[static_cast<std::size_t>(label)] = g_ * cdouble(ai, aq);
  }
}

int QamConstellation::label_from_bits(std::span<const std::uint8_t> bits) const {
  if (static_cast<int>(bits.size()) != bits_per_symbol()) throw std::invalid_argument("QAM bit group has wrong length");
  int label = 0;
  for (auto b : bits) label = (label << 1) | (b & 1);
  return label;
}

void QamConstellation::label_to_bits(int label, std::span<std::uint8_t> out) const {
  const int k = bits_per_symbol();
  for (int i = 0; i < k; ++i) out[static_cast<std::size_t>(i)] = static_cast<std::uint8_t>((label >> (k - 1 - i)) & 1);
}

cdouble QamConstellation::map(std::span<const std::uint8_t> bits) const { return point(label_from_bits(bits)); }

int QamConstellation::nearest_label(cdouble z) const {
  const int ii = nearest_level(z.real() / g_, mu_);
  const int iq = nearest_level(z.imag() / g_, eta_);
  return (gray_encode(ii) << bits_q_) | gray_encode(iq);
}

Bits QamConstellation::demap_hard(cdouble z) const {
  Bits out(static_cast<std::size_t>(bits_per_symbol()));
  label_to_bits(nearest_label(z), out);
  return out;
}

}  // namespace fopim
