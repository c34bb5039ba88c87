#pragma once

#include <array>
#include <string_view>
#include <vector>

#include "tcm/model.hpp"

namespace tcm {

/// Norms and functionals sampled from one State.  `grad_u_linf` uses the
/// pointwise entrywise l1 norm sum_ij |d_i u^j|.
struct DiagnosticsRecord {
  double t = 0.0;
  double eps = 0.0;
  double energy = 0.0;       // 1/2 ||(u,v,theta)||_2^2
  double dissipation = 0.0;  // ||grad u||^2 + ||grad v||^2 + eps ||grad theta||^2
  double u_l2 = 0.0;
  double v_l2 = 0.0;
  double theta_l2 = 0.0;
  double theta_l4 = 0.0;
  double theta_linf = 0.0;
  double grad_theta_l2 = 0.0;
  double lap_theta_l2 = 0.0;
  double grad_u_l2 = 0.0;
  double grad_v_l2 = 0.0;
  double grad_w_l2 = 0.0;
  double lap_u_l2 = 0.0;
  double lap_w_l2 = 0.0;
  double grad_lap_u_l2 = 0.0;
  double grad_lap_w_l2 = 0.0;
  double grad_u_l4 = 0.0;
  double grad_w_l4 = 0.0;
  double grad_u_linf = 0.0;
  double phi_linf = 0.0;
  double A = 1.0;  // ||grad theta||^2 + t ||(Lap u, Lap w)||^2 + 1
  double B = 0.0;  // A + t ||(grad Lap u, grad Lap w)||^2 + eps ||Lap theta||^2 + e
  double theta_tail_fraction = 0.0;
  double theta_mean = 0.0;
  double u1_mean = 0.0;
  double u2_mean = 0.0;
  double div_u_rel = 0.0;  // ||div u||_2 / ||u||_H1
  bool blocking = false;   // tail fraction above kBlockingThreshold
};

inline constexpr double kBlockingThreshold = 0.01;

/// Column names in CSV order; `record_values` produces the matching row.
const std::vector<std::string_view>& record_columns();
std::vector<double> record_values(const DiagnosticsRecord& r);
DiagnosticsRecord record_from_values(const std::vector<double>& values);

/// Entrywise l1 sup norm of the gradient of a vector field.
double grad_linf(const VectorField& u);

/// Fraction of ||theta||_2^2 held by the top third of the retained band.
double tail_fraction(const SpectralField& theta, bool dealias);

DiagnosticsRecord compute_record(const State& s, bool dealias);

}  // namespace tcm
