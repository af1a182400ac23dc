#include <bit>
#include <cmath>

#include "doctest.h"
#include "fopim/qam.hpp"

using namespace fopim;

TEST_CASE("constellations have unit average energy") {
  for (auto [mu, eta] : {std::pair{2, 1}, {2, 2}, {4, 2}, {4, 4}, {8, 8}}) {
    QamConstellation q(mu, eta);
    double e = 0;
    for (const auto& p : q.points()) e += std::norm(p);
    CHECK(e / q.order() == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(q.bits_per_symbol() == std::countr_zero(static_cast<unsigned>(mu * eta)));
  }
}

TEST_CASE("4-QAM points are the scaled corners") {
  QamConstellation q(2, 2);
  const double s = std::sqrt(0.5);
  CHECK(q.g() == doctest::Approx(s));
  CHECK(q.point(0) == cdouble(-s, -s));
  CHECK(q.point(1) == cdouble(-s, s));
  CHECK(q.point(2) == cdouble(s, -s));
  CHECK(q.point(3) == cdouble(s, s));
}

TEST_CASE("gray labelling: nearest neighbours differ in one bit") {
  for (auto [mu, eta] : {std::pair{4, 4}, {8, 4}, {4, 2}}) {
    QamConstellation q(mu, eta);
    const double dmin = 2.0 * q.g();
    for (int a = 0; a < q.order(); ++a)
      for (int b = 0; b < q.order(); ++b) {
        if (std::abs(std::abs(q.point(a) - q.point(b)) - dmin) < 1e-9) CHECK(std::popcount(unsigned(a ^ b)) == 1);
      }
  }
}

TEST_CASE("demap inverts map and picks the nearest point") {
  QamConstellation q(4, 4);
  Bits bits(4);
  for (int label = 0; label < 16; ++label) {
    q.label_to_bits(label, bits);
    CHECK(q.label_from_bits(bits) == label);
    CHECK(q.map(bits) == q.point(label));
    CHECK(q.demap_hard(q.point(label) + cdouble(0.3 * q.g(), -0.3 * q.g())) == bits);
  }
  // far outside the grid clamps to the corner
  int corner = 0;
  for (int l = 0; l < 16; ++l)
    if (q.point(l).real() + q.point(l).imag() > q.point(corner).real() + q.point(corner).imag()) corner = l;
  CHECK(q.nearest_label({100.0, 100.0}) == corner);
  CHECK_THROWS(QamConstellation(3, 2));
}
