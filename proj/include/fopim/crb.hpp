#pragma once

#include <span>

#include "fopim/sensing.hpp"

namespace fopim {

struct SteeringDerivatives {
  CVector a_dot;  // d a / d theta
  CVector c_dot;  // d c / d theta
  CVector b_dot;  // d b / d range
};

SteeringDerivatives steering_derivatives(double theta, double delta_r, std::span<const int> offsets,
                                         const SystemConfig& cfg);

/// Fisher information over [R, theta, Re xi, Im xi] for the K pulses of a scenario.
struct FimResult {
  Eigen::Matrix4d F = Eigen::Matrix4d::Zero();
  /// Schur complement of the normalised FIM F N / (2 P_S) on the (R, theta) block.
  Eigen::Matrix2d D = Eigen::Matrix2d::Zero();
  double crb_range = 0.0;  // m^2
  double crb_angle = 0.0;  // rad^2
};

struct CrbPair {
  double range = 0.0;
  double angle = 0.0;
};

/// Throws NumericalError for singular or degenerate information.
FimResult fim(const SensingScenario& sc, const SystemConfig& cfg);

/// (N / 2 P_S) D22 / det D and (N / 2 P_S) D11 / det D.
CrbPair crb_values(const FimResult& f, const SystemConfig& cfg);

/// Diagonal of the inverse of the full 4x4 FIM.
CrbPair crb_direct(const FimResult& f);

}  // namespace fopim
