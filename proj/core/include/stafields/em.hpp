#pragma once

// Geometrically complete electromagnetism over the spacetime algebra.
//
// The theory is organized around a complex 4-potential
//
//   z = lambda_minus a_e + lambda_plus a_m I,
//
// where a_e = (phi_e/c + A_e) gamma0 is the electric 4-potential and a_m is
// the magnetic 4-potential stored impedance-scaled, a_m = zeta (phi_m/c +
// A_m) gamma0 with zeta = mu c, so that both sectors carry the same units.
// The field spinor is the full vector derivative
//
//   psi = grad z = W_e/c^2 + F + (W_m/c) I,
//
// an even multivector whose scalar and pseudoscalar parts W_e, W_m are the
// scalar wave fields that a curl-only ("gauge-fixed") formulation discards,
// and whose bivector part F = E/c + mu H I is the usual field strength.
// Equations of motion, stress tensor, force law, Lagrangians, gauge
// behaviour, and plane-wave constructions below all operate on this complete
// spinor.

#include <array>

#include "stafields/analytic.hpp"
#include "stafields/frame.hpp"
#include "stafields/lattice.hpp"
#include "stafields/medium.hpp"
#include "stafields/multivector.hpp"

namespace stf {

// ---------------------------------------------------------------------------
// Potentials
// ---------------------------------------------------------------------------

// Pair of closed-form 4-potentials.  a_m is stored impedance-scaled (see
// em_magnetic_potential_value); both fields must be grade-1 valued.
struct EmPotential {
  AnalyticField a_e;
  AnalyticField a_m;
};

// a_e = (phi_e/c) gamma0 + A_x gamma1 + A_y gamma2 + A_z gamma3.
// Equals (phi_e/c + A_vec) gamma0 with A_vec = sum A_k sigma_k.
Multivector em_electric_potential_value(double phi_e,
                                        const std::array<double, 3>& A_e,
                                        const EmMedium& medium);

// a_m = zeta [ (phi_m/c) gamma0 + A_k gamma_k ]: impedance-scaled so the
// housed trivector potential is a_m I.
Multivector em_magnetic_potential_value(double phi_m,
                                        const std::array<double, 3>& A_m,
                                        const EmMedium& medium);

// z = lambda_minus a_e + lambda_plus a_m I  (grades {1, 3}).
Multivector em_complex_potential_value(const Multivector& a_e,
                                       const Multivector& a_m,
                                       const EmMedium& medium);
AnalyticField em_complex_potential(const EmPotential& potential,
                                   const EmMedium& medium);

// ---------------------------------------------------------------------------
// Field spinor
// ---------------------------------------------------------------------------

// psi = grad z, exact.  Rejects potentials whose value is not of grade
// {1, 3} (checked at a fixed set of probe points).
AnalyticField em_spinor_from_potentials(const EmPotential& potential,
                                        const EmMedium& medium);

// Lattice backend: psi = grad_h z for a sampled complex potential.  Every
// site of z must be of grade {1, 3}.
MultivectorField em_spinor_from_potentials(const MultivectorField& z);

// Frame decomposition of an even spinor value:
//   psi = W_e/c^2 + (E/c + mu H I) + (W_m/c) I.
// E and H are relative vectors (sigma_k components) in the given frame.
struct EmFields3D {
  Multivector E;
  Multivector H;
  double W_e = 0.0;
  double W_m = 0.0;
};
EmFields3D em_fields_3d(const Multivector& psi, const EmMedium& medium,
                        const Frame& frame = Frame{});
// Exact inverse of em_fields_3d.
Multivector em_spinor_value(const EmFields3D& fields, const EmMedium& medium);

// ---------------------------------------------------------------------------
// Sources and equation of motion
// ---------------------------------------------------------------------------

// Electric and magnetic currents, both stored as grade-1 fields
// j = (rho c + J) gamma0; the housed magnetic object is j_m I.
struct EmSource {
  AnalyticField j_e;
  AnalyticField j_m;
};

Multivector em_current_value(const Multivector& j_e, const Multivector& j_m,
                             const EmMedium& medium);
// j = j_e + (j_m / c) I  (grades {1, 3}).
AnalyticField em_current(const EmSource& source, const EmMedium& medium);

// Residual of the equation of motion grad psi = mu j; zero on shell.
AnalyticField maxwell_residual(const AnalyticField& psi,
                               const AnalyticField& j, const EmMedium& medium);
MultivectorField maxwell_residual(const MultivectorField& psi,
                                  const MultivectorField& j,
                                  const EmMedium& medium);

// ---------------------------------------------------------------------------
// Stress tensor, energy, momentum
// ---------------------------------------------------------------------------

// T(b) = (rev(psi) b psi + psi b rev(psi)) / (4 mu c): symmetric
// energy-momentum tensor; maps grade-1 b to a grade-1 result.
Multivector em_stress_tensor(const Multivector& psi, const Multivector& b,
                             const EmMedium& medium);

// Energy density <c T(gamma0) gamma0>_0 =
//   (eps |E|^2 + mu |H|^2)/2 + (eps W_e^2/c^2 + W_m^2 mu/(mu c)^2)/2  >= 0.
double em_energy_density(const EmFields3D& fields, const EmMedium& medium);
double em_energy_density(const Multivector& psi, const EmMedium& medium);

// Momentum density E x H / c^2 as a relative vector.
Multivector em_momentum_density(const EmFields3D& fields,
                                const EmMedium& medium);
Multivector em_momentum_density(const Multivector& psi,
                                const EmMedium& medium);

// ---------------------------------------------------------------------------
// Force on test charges
// ---------------------------------------------------------------------------

struct EmProbe {
  double q_e = 0.0;      // electric charge
  double q_m = 0.0;      // magnetic charge
  double mass = 0.0;     // rest mass
  Multivector position;  // grade-1 event (ct + r) gamma0
  Multivector velocity;  // grade-1 4-velocity, u u = c^2
  double proper_time = 0.0;
};

// Laboratory 3-velocity of a 4-velocity u = gamma_v (c + v) gamma0.
// Rejects non-grade-1, non-future-pointing, or superluminal u.
Multivector em_lab_velocity(const Multivector& u, const EmMedium& medium,
                            const Frame& frame = Frame{});

// Power/force pair exerted by the spinor on charges (q_e, q_m) moving with
// relative velocity v (a relative vector):
//   power = (q_e E + q_m mu H) . v + q_e W_e + q_m W_m
//   force = q_e (E + v x mu H + W_e v / c^2)
//         + q_m (mu H - v x E / c^2 + W_m v / c^2)
// The W terms act against the motion like a drag when W and the charge sign
// agree; they are the experimentally distinguishing part of the complete
// theory.
struct EmForce3D {
  double power = 0.0;
  Multivector force;  // relative vector
};
EmForce3D em_lorentz_force(const Multivector& psi, double q_e, double q_m,
                           const Multivector& v, const EmMedium& medium,
                           const Frame& frame = Frame{});
EmForce3D em_lorentz_force(const Multivector& psi, const EmProbe& probe,
                           const EmMedium& medium,
                           const Frame& frame = Frame{});

// Covariant bilinear -(rev(psi) j_p + rev(j_p) psi)/2 for a probe current
// j_p; with j_p = (q_e - q_m I / c) u this reproduces the electric/magnetic
// rows of the force above (the scalar-field rows differ: the bilinear
// carries the opposite sign on the W sector and is kept as a cross-check,
// not as the force law).
Multivector em_force_covariant(const Multivector& psi, const Multivector& j_p);

// ---------------------------------------------------------------------------
// Lagrangians and the dual field
// ---------------------------------------------------------------------------

// Traditional quadratic form -<rev(psi) psi>_0 / (2 mu)
//   = (eps |E|^2 - mu |H|^2)/2 - (eps W_e^2/c^2 - W_m^2/(mu c^2))/2.
double em_lagrangian_traditional(const Multivector& psi,
                                 const EmMedium& medium);

// Dual-symmetric pair evaluated at a point of the closed-form potential.
//   traditional: -<rev(psi) psi>_0 / (2 mu)
//   dual:        c <rev(psi_dual) psi>_4 / 2  with
//                rev(psi_dual) = zeta^{-1} (lambda_plus grad a_m
//                                          + lambda_minus (grad a_e) I),
// reported as the coefficient of the pseudoscalar.  The dual form vanishes
// identically for self-dual (circularly polarized) vacuum waves.
struct EmLagrangians {
  double traditional = 0.0;
  double dual = 0.0;
};
EmLagrangians em_lagrangians(const EmPotential& potential,
                             const EmMedium& medium, const SpacetimePoint& x);

// G = zeta^{-1} rev(F) I = H/c - eps E I: the dual bivector field, which
// satisfies the same vacuum equation of motion as F.
Multivector em_dual_field(const Multivector& F, const EmMedium& medium);

// ---------------------------------------------------------------------------
// Gauge transformations
// ---------------------------------------------------------------------------

// a_e -> a_e + grad chi_e, a_m -> a_m + grad chi_m for scalar-valued fields
// chi.  F is unchanged; the scalar fields shift by
//   delta W_e = lambda_minus c^2 box chi_e,
//   delta W_m = lambda_plus  c   box chi_m.
struct EmGaugeResult {
  EmPotential potential;
  AnalyticField delta_W_e;
  AnalyticField delta_W_m;
};
EmGaugeResult em_gauge_transform(const EmPotential& potential,
                                 const EmMedium& medium,
                                 const AnalyticField& chi_e,
                                 const AnalyticField& chi_m);

// ---------------------------------------------------------------------------
// Plane waves
// ---------------------------------------------------------------------------

// Null plane wave z(x) = -z0 I e^{-s I (k.r) + I phi0} with
// z0 = lambda_minus a_e0 + lambda_plus a_m0 I and wave 4-vector
// k = (omega/c)(1 + k_hat) gamma0, so k.r = omega t - k_vec . r_vec.
// frequency_sign s = +1 selects the positive-frequency branch e^{-I k.r}.
// The spinor is psi = psi0 e^{-s I (k.r) + I phi0} with psi0 = -s k z0.
struct EmPlaneWave {
  EmPotential potential;   // real potentials reproducing z
  AnalyticField z;         // complex potential
  AnalyticField psi;       // field spinor
  Multivector k;           // null wave 4-vector
  Multivector psi0;        // constant spinor amplitude
  std::array<double, 4> w{};  // phase gradient of the scalar phase theta(x)
  double phi0 = 0.0;
  int frequency_sign = 1;
};
EmPlaneWave em_plane_wave(const EmMedium& medium,
                          const std::array<double, 3>& k_hat, double omega,
                          int frequency_sign, const Multivector& a_e0,
                          const Multivector& a_m0, double phi0 = 0.0);

}  // namespace stf
