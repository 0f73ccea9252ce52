#pragma once

// Geometrically complete acoustics over the spacetime algebra.
//
// The theory is organized around an even spinor potential
//
//   psi = lambda_minus phi + lambda_plus M / 3 + lambda_4 phi_w I,
//
// where phi and phi_w are scalar action densities and M = rho c (x + y I) is
// a bivector built from the mean displacement x and rotational displacement
// y of the medium.  The measurable field is the odd complex 4-vector
//
//   z = -grad psi = p + w I,
//
// with p = (P/c + rho v) gamma0 the energy-momentum density (pressure
// deviation P, velocity v) and w = (P_w/c + rho w_vec) gamma0 its rotational
// counterpart.  A scalar-potential-only ("classic") theory keeps just phi
// and loses the w sector entirely; the spinor potential restores it and with
// it the nonzero acoustic spin observed experimentally.  Equations of
// motion, stress tensor, force law, Lagrangians, gauge behaviour, plane
// waves, and spin densities below all operate on this complete field.

#include <array>
#include <cmath>
#include <stdexcept>

#include "stafields/analytic.hpp"
#include "stafields/frame.hpp"
#include "stafields/lattice.hpp"
#include "stafields/multivector.hpp"

namespace stf {

// ---------------------------------------------------------------------------
// Medium
// ---------------------------------------------------------------------------

struct AcMedium {
  double rho = 0.0;   // equilibrium mass density (kg/m^3)
  double beta = 0.0;  // compressibility (1/Pa)
  double c = 0.0;     // sound speed 1/sqrt(rho beta) (m/s)
  double zeta = 0.0;  // acoustic impedance rho c
  double P0 = 0.0;    // equilibrium pressure rho c^2
  // Relative weights of the scalar, bivector, and pseudoscalar potential
  // contributions; symmetrized to 1/2 each for vacuum propagation.  Plane
  // waves fix their own proportions (see ac_plane_wave).
  double lambda_minus = 0.5;
  double lambda_plus = 0.5;
  double lambda_4 = 0.5;

  static AcMedium make(double rho, double beta, double lambda_minus = 0.5,
                       double lambda_plus = 0.5, double lambda_4 = 0.5) {
    if (!(rho > 0.0) || !(beta > 0.0))
      throw std::invalid_argument("AcMedium: rho and beta must be positive");
    AcMedium m;
    m.rho = rho;
    m.beta = beta;
    m.c = 1.0 / std::sqrt(rho * beta);
    m.zeta = rho * m.c;
    m.P0 = rho * m.c * m.c;
    m.lambda_minus = lambda_minus;
    m.lambda_plus = lambda_plus;
    m.lambda_4 = lambda_4;
    m.validate();
    return m;
  }

  // Air at 20 C: rho = 1.204 kg/m^3, c = 343 m/s.
  static AcMedium air() {
    return make(1.204, 1.0 / (1.204 * 343.0 * 343.0));
  }

  // Equilibrium energy-momentum density p0 = (P0/c) gamma0 = rho c gamma0 of
  // the medium itself; the fields handled by this module are deviations on
  // top of it.
  Multivector equilibrium_momentum() const {
    return Multivector::gamma(0) * zeta;
  }

  void validate() const {
    if (!(rho > 0.0) || !(beta > 0.0) || !(c > 0.0) || !(zeta > 0.0) ||
        !(P0 > 0.0))
      throw std::invalid_argument("AcMedium: constants must be positive");
    const double c_ref = 1.0 / std::sqrt(rho * beta);
    if (std::abs(c - c_ref) > 1e-12 * c_ref)
      throw std::invalid_argument("AcMedium: c inconsistent with rho, beta");
    if (std::abs(zeta - rho * c) > 1e-12 * zeta)
      throw std::invalid_argument("AcMedium: zeta inconsistent with rho, c");
    if (std::abs(P0 - rho * c * c) > 1e-12 * P0)
      throw std::invalid_argument("AcMedium: P0 inconsistent with rho, c");
    if (!(lambda_minus > 0.0) || !(lambda_plus > 0.0) || !(lambda_4 > 0.0))
      throw std::invalid_argument("AcMedium: couplings must be positive");
  }
};

// ---------------------------------------------------------------------------
// Potentials
// ---------------------------------------------------------------------------

// Closed-form potential triple.  phi and phi_w are scalar-valued fields
// (phi_w is housed as the coefficient of the pseudoscalar when assembled)
// and M is bivector-valued.
struct AcPotentialSpinor {
  AnalyticField phi;
  AnalyticField M;
  AnalyticField phi_w;
};

// M = rho c (x + y I) for relative-vector displacements x, y.
Multivector ac_angular_potential_value(const Multivector& x,
                                       const Multivector& y,
                                       const AcMedium& medium);

// Split of a bivector M = rho c (x + y I) back into its displacement pair.
struct AcDisplacements3D {
  Multivector x;  // relative vector: mean displacement
  Multivector y;  // relative vector: rotational displacement
};
AcDisplacements3D ac_displacements_3d(const Multivector& M,
                                      const AcMedium& medium,
                                      const Frame& frame = Frame{});

// psi = lambda_minus phi + lambda_plus M/3 + lambda_4 phi_w I (even).
Multivector ac_spinor_potential_value(double phi, const Multivector& M,
                                      double phi_w, const AcMedium& medium);
AnalyticField ac_spinor_potential(const AcPotentialSpinor& potential,
                                  const AcMedium& medium);

// ---------------------------------------------------------------------------
// Measurable field
// ---------------------------------------------------------------------------

// z = -grad psi, exact.  Rejects potentials whose components are not scalar
// (phi, phi_w) or bivector (M) valued, checked at a fixed set of probe
// points.
AnalyticField ac_field_from_potentials(const AcPotentialSpinor& potential,
                                       const AcMedium& medium);

// Lattice backend: z = -grad_h psi for a sampled spinor potential.  Every
// site of psi must be even-graded.
MultivectorField ac_field_from_potentials(const MultivectorField& psi);

// Frame decomposition of an odd field value:
//   z = (P/c + rho v) gamma0 + (P_w/c + rho w_vec) gamma0 I.
// rho_v and rho_w are relative vectors (sigma_k components).
struct AcFields3D {
  double P = 0.0;      // pressure deviation
  Multivector rho_v;   // momentum density
  double P_w = 0.0;    // rotational pressure
  Multivector rho_w;   // rotational momentum density
};
AcFields3D ac_fields_3d(const Multivector& z, const AcMedium& medium,
                        const Frame& frame = Frame{});
// Exact inverse of ac_fields_3d.
Multivector ac_field_value(const AcFields3D& fields, const AcMedium& medium,
                           const Frame& frame = Frame{});

// ---------------------------------------------------------------------------
// Sources and equation of motion
// ---------------------------------------------------------------------------

// Source spinor psi_N = nu + N + nu_w I with nu = rho_dot (mass injection
// rate), N = F/c + rho Omega I (force density + vorticity density), and
// nu_w = rho_dot_w its rotational counterpart.
struct AcSource {
  AnalyticField nu;     // scalar-valued
  AnalyticField N;      // bivector-valued
  AnalyticField nu_w;   // scalar-valued, housed as the I coefficient
};

// N = F/c + rho_Omega I for relative vectors F (force density) and
// rho_Omega (vorticity density).
Multivector ac_source_bivector_value(const Multivector& F,
                                     const Multivector& rho_Omega,
                                     const AcMedium& medium);

// psi_N = nu + F/c + rho_Omega I + nu_w I (grades {0, 2, 4}).
Multivector ac_source_value(double nu, const Multivector& F,
                            const Multivector& rho_Omega, double nu_w,
                            const AcMedium& medium);
AnalyticField ac_source_spinor(const AcSource& source);

// Residual of the equation of motion grad z = -psi_N; zero on shell.  Its
// grade components are the continuity equation (scalar), the Euler and
// rotation-rate equations (bivector), and the rotational continuity
// equation (pseudoscalar).
AnalyticField ac_residual(const AnalyticField& z, const AnalyticField& psi_N);
MultivectorField ac_residual(const MultivectorField& z,
                             const MultivectorField& psi_N);

// ---------------------------------------------------------------------------
// Stress tensor, energy, momentum
// ---------------------------------------------------------------------------

// T(b) = (rev(z) b z + z b rev(z)) / (4 rho c): symmetric energy-momentum
// tensor; maps grade-1 b to a grade-1 result.
Multivector ac_stress_tensor(const Multivector& z, const Multivector& b,
                             const AcMedium& medium);

// Energy density c <T(gamma0) gamma0>_0 =
//   (rho |v|^2 + beta P^2)/2 + (rho |w|^2 + beta P_w^2)/2  >= 0.
double ac_energy_density(const AcFields3D& fields, const AcMedium& medium);
double ac_energy_density(const Multivector& z, const AcMedium& medium);

// Momentum density (P v + P_w w_vec)/c^2 as a relative vector.
Multivector ac_momentum_density(const AcFields3D& fields,
                                const AcMedium& medium);
Multivector ac_momentum_density(const Multivector& z, const AcMedium& medium);

// ---------------------------------------------------------------------------
// Force on probe sources
// ---------------------------------------------------------------------------

// A probe couples to the medium as an effective localized source.
struct AcProbe {
  double mass_rate = 0.0;         // monopole coupling rho_dot_p
  Multivector force_density;      // dipole coupling F_p (relative vector)
  Multivector vorticity_density;  // rotational coupling (rho Omega)_p
  double mass_rate_w = 0.0;       // rotational monopole coupling
  double mass = 0.0;              // rest mass
  Multivector position;           // grade-1 event (ct + r) gamma0
  Multivector velocity;           // grade-1 4-velocity, u u = c^2
  double proper_time = 0.0;
};

// Power/force pair exerted by the field on the probe's source couplings:
//   power = (P/rho) rho_dot_p + (P_w/rho) rho_dot_wp
//         - v . F_p - w_vec . (c rho_Omega_p)
//   force = rho_dot_p v - (P/(rho c^2)) F_p - (v/c) x (c rho_Omega_p)
//         + rho_dot_wp w_vec - (P_w/(rho c^2)) (c rho_Omega_p)
//         + (w_vec/c) x F_p
// where v, w_vec are the field velocities at the probe.  The w-sector rows
// are the experimentally distinguishing part of the complete theory.
struct AcForce3D {
  double power = 0.0;
  Multivector force;  // relative vector
};
AcForce3D ac_force(const Multivector& z, const AcProbe& probe,
                   const AcMedium& medium, const Frame& frame = Frame{});

// Covariant bilinear <rev(z) psi_Np>_1 / rho for a probe source spinor
// psi_Np; reproduces the power/force rows above exactly.
Multivector ac_force_covariant(const Multivector& z,
                               const Multivector& psi_Np,
                               const AcMedium& medium);

// ---------------------------------------------------------------------------
// Lagrangians and gauge transformations
// ---------------------------------------------------------------------------

// Traditional quadratic form -<rev(z) z>_0 / (2 rho)
//   = (rho |v|^2 - beta P^2)/2 - (rho |w|^2 - beta P_w^2)/2,
// identically equal to -c <T(1)>_0.
double ac_lagrangian_traditional(const Multivector& z, const AcMedium& medium);

// Dual-symmetric pair evaluated at a point of the closed-form potential.
//   traditional: -<rev(z) z>_0 / (2 rho)
//   dual:        (c/2) <rev(z_dual) z>_4 with
//                rev(z_dual) = zeta^{-1} grad(lambda_4 phi_w
//                              + lambda_plus M I / 3 - lambda_minus phi I),
// reported as the coefficient of the pseudoscalar.  The dual form vanishes
// identically on plane-wave solutions.
struct AcLagrangians {
  double traditional = 0.0;
  double dual = 0.0;
};
AcLagrangians ac_lagrangians(const AcPotentialSpinor& potential,
                             const AcMedium& medium, const SpacetimePoint& x);

// M -> M + grad . (b I) for a generator b = rho c (b0/c + b_vec) gamma0
// built from a scalar field b0 and a relative-vector field b_vec.  The
// measurable p is unchanged; the grade-3 part of grad M (and with it the w
// sector) shifts by delta_wedge = grad ^ (grad . (b I)), which vanishes only
// for generators with grad ^ grad . (b I) = 0.
struct AcGaugeResult {
  AnalyticField M;            // transformed bivector potential
  AnalyticField delta_wedge;  // induced change of grad ^ M
};
AcGaugeResult ac_gauge_transform(const AnalyticField& M,
                                 const AcMedium& medium,
                                 const AnalyticField& b0,
                                 const AnalyticField& b_vec);

// ---------------------------------------------------------------------------
// Plane waves
// ---------------------------------------------------------------------------

// Which potential sectors carry the wave.  The scalar branch uses only phi
// and phi_w (lambda_minus = lambda_4 = 1); the full-spinor branch adds the
// bivector M with lambda_minus = lambda_4 = 1/3, lambda_plus = 1.  Both
// branches produce the same measurable z; only the full-spinor branch
// carries displacement fields and hence angular momentum.
enum class AcWaveBranch { kScalar, kFullSpinor };

// Longitudinal plane wave z(x) = s p_bar e^{-s I (k.r) + I phi0} with null
// wave 4-vector k = (omega/c)(1 + k_hat) gamma0 and momentum amplitude
// p_bar = (P_bar/omega) k, so the field components are P = s P_bar cos
// theta, rho v = s (P_bar/c) k_hat cos theta and their quarter-cycle-shifted
// w-sector counterparts.
struct AcPlaneWave {
  AcPotentialSpinor potential;  // phi, M, phi_w closures
  AnalyticField psi;            // assembled spinor potential
  AnalyticField z;              // measurable field
  Multivector k;                // null wave 4-vector
  Multivector p_bar;            // momentum amplitude (P_bar/omega) k
  Multivector r_n;              // orbital-moment offset (grade-1)
  Multivector r_s;              // spin-moment offset (grade-1)
  std::array<double, 4> w{};    // phase gradient of theta(x)
  double phi0 = 0.0;
  int frequency_sign = 1;
  double pressure_amplitude = 0.0;
  double omega = 0.0;
  std::array<double, 3> k_hat{};
  AcWaveBranch branch = AcWaveBranch::kFullSpinor;
  AcMedium medium;  // couplings fixed to the branch proportions

  // Phase theta(x) = w . x + phi0.
  double phase(const SpacetimePoint& x) const;

  // Canonical displacement amplitudes carried by the bivector amplitude
  // M0 = rho c (x0 + y0 I) (zero for the scalar branch):
  //   x0 = (s t + tau_n) v - P_bar/(rho c^2) (s r + r_n) - r_s x (v/c)
  //   y0 = (s r + r_n) x (v/c) + v tau_s - P_bar/(rho c^2) r_s
  // with v = P_bar/(rho c) k_hat the velocity amplitude.
  Multivector displacement_amplitude_x(const SpacetimePoint& x) const;
  Multivector displacement_amplitude_y(const SpacetimePoint& x) const;
  // Physical displacement pair of M(x) = M0 cos theta + M0 I sin theta:
  //   x(x) = x0 cos theta - y0 sin theta, y(x) = y0 cos theta + x0 sin theta.
  Multivector displacement_x(const SpacetimePoint& x) const;
  Multivector displacement_y(const SpacetimePoint& x) const;

  // Mass-moment split rho x0 = N_L + N_S and angular-momentum split
  // rho c y0 = L + S of the canonical amplitudes:
  //   N_L = s [rho v t - (P_bar/c^2) r],   L = s r x (rho v),
  //   N_S = rho v tau_n - (P_bar/c^2) r_n - rho r_s x (v/c),
  //   S   = r_n x (rho v) + rho v c tau_s - (P_bar/c) r_s.
  // The intrinsic parts are independent of the evaluation point.
  Multivector mass_moment_orbital(const SpacetimePoint& x) const;
  Multivector mass_moment_spin() const;
  Multivector angular_momentum_orbital(const SpacetimePoint& x) const;
  Multivector angular_momentum_spin() const;

  // Momentum density rho v(x) = s (P_bar/c) k_hat cos theta as a
  // relative-vector closed form.
  AnalyticField momentum_density() const;
  // Longitudinal displacement x(x) = -P_bar/(rho c omega) k_hat sin theta
  // satisfying curl x = 0 and dt x = v exactly: the vorticity-free gauge
  // representative used for spin evaluation.  Zero for the scalar branch,
  // which carries no displacement at all.
  AnalyticField vorticity_free_displacement() const;
};

AcPlaneWave ac_plane_wave(const AcMedium& medium,
                          const std::array<double, 3>& k_hat, double omega,
                          int frequency_sign, double pressure_amplitude,
                          double phi0 = 0.0,
                          AcWaveBranch branch = AcWaveBranch::kFullSpinor,
                          const Multivector& r_n = Multivector{},
                          const Multivector& r_s = Multivector{});

// ---------------------------------------------------------------------------
// Spin density
// ---------------------------------------------------------------------------

// Instantaneous spin density S = x x (rho v) / 2, valid in the
// vorticity-free gauge: requires curl x = -dt y / c at the evaluation point
// (relative residual below gauge_tol) and throws with a gauge-violation
// diagnostic otherwise.  The cycle-averaged monochromatic counterpart is
// ac_spin_cycle_avg in spin.hpp.
Multivector ac_spin_density(const AnalyticField& x_disp,
                            const AnalyticField& y_disp,
                            const AnalyticField& rho_v,
                            const SpacetimePoint& at,
                            double gauge_tol = 1e-9);

}  // namespace stf
