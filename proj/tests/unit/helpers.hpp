#pragma once

#include <cmath>
#include <numbers>

#include "tcm/operators.hpp"

namespace testing {

inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

inline double rel(const tcm::SpectralField& a, const tcm::SpectralField& b) {
  const double d = tcm::norm(a - b, tcm::NormKind::L2);
  const double s = tcm::norm(b, tcm::NormKind::L2);
  return s > 0.0 ? d / s : d;
}

inline double rel(const tcm::VectorField& a, const tcm::VectorField& b) {
  const double d = tcm::norm(a - b, tcm::NormKind::L2);
  const double s = tcm::norm(b, tcm::NormKind::L2);
  return s > 0.0 ? d / s : d;
}

inline tcm::SpectralField mode_sin(const tcm::Grid& g, int kx, int ky) {
  const double c = kTwoPi / g.length();
  return tcm::SpectralField::from_function(
      g, [=](double x, double y) { return std::sin(c * (kx * x + ky * y)); });
}

inline tcm::SpectralField mode_cos(const tcm::Grid& g, int kx, int ky) {
  const double c = kTwoPi / g.length();
  return tcm::SpectralField::from_function(
      g, [=](double x, double y) { return std::cos(c * (kx * x + ky * y)); });
}

}  // namespace testing
