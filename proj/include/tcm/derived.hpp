#pragma once

#include "tcm/model.hpp"

namespace tcm {

/// Which scaling of the temperature potential enters the pseudo baroclinic
/// velocity: w = v + Phi/(1-eps) for the regularized system, or w = v + Phi
/// (factor 1) as in the unregularized derivation.  The two coincide at
/// eps = 0.
enum class WConvention { regularized, target };

double w_factor(double eps, WConvention convention);

/// Pseudo baroclinic velocity w = v + grad(-Lap)^{-1} theta / (1 - eps).
/// Throws NonZeroMean or EpsOutOfRange (eps >= 1).
VectorField pseudo_baroclinic(const State& s,
                              WConvention convention = WConvention::regularized);

/// F_i = R_i R_j (u^j theta) - u^j R_i R_j theta.  The zero mode of u^j theta
/// is annihilated by R_i R_j.
VectorField commutator_F(const VectorField& u, const SpectralField& theta,
                         bool dealias = true);

/// The same quantity written as grad(-Lap)^{-1}(u.grad theta) - (u.grad)Phi.
/// Equal to commutator_F when div u = 0.
VectorField commutator_F_transport(const VectorField& u,
                                   const SpectralField& theta,
                                   bool dealias = true);

/// Effective viscous flux phi = div v - theta / (1 - eps).
SpectralField viscous_flux(const State& s);

struct DerivedBundle {
  VectorField phi_potential;  // Phi
  VectorField w;
  VectorField commutator_f;   // F
  SpectralField flux;         // phi
  double t;
  double eps;
};

DerivedBundle derive(const State& s, bool dealias = true,
                     WConvention convention = WConvention::regularized);

/// Residual of a derived evolution equation on a window of three equally
/// spaced snapshots, evaluated at the middle one.  The time derivative is the
/// centered difference.
struct ResidualNorms {
  double l2 = 0.0;        // ||residual||_2
  double hm1 = 0.0;       // ||(I - Lap)^{-1/2} residual||_2
  double scale = 0.0;     // ||d_t q||_2 + sum of ||term||_2
  double normalized = 0.0;      // l2 / scale (0 when scale == 0)
  double normalized_hm1 = 0.0;  // hm1 / scale
};

/// d_t w + (u.grad)w - Lap w + (v.grad)u + (grad(-Lap)^{-1} div v + F)/(1-eps)
ResidualNorms residual_w_equation(const State& prev, const State& mid,
                                  const State& next, bool dealias = true,
                                  WConvention convention = WConvention::regularized);

/// d_t Phi + (u.grad)Phi - eps Lap Phi + grad(-Lap)^{-1} div v + F
ResidualNorms residual_phi_equation(const State& prev, const State& mid,
                                    const State& next, bool dealias = true);

/// d_t phi + u.grad phi - Lap phi + 2 d_i u . grad v^i - div v/(1-eps)
ResidualNorms residual_flux_equation(const State& prev, const State& mid,
                                     const State& next, bool dealias = true);

}  // namespace tcm
