#include <cmath>
#include <stdexcept>

#include "stafields/acoustic.hpp"
#include "stafields/em.hpp"
#include "stafields/frame.hpp"
#include "stafields/multivector.hpp"
#include "stafields/simulate.hpp"

namespace stf {

namespace {

bool grade1_within_noise(const Multivector& a) {
  const double tol = 1e-12 * (1.0 + linf_norm(a));
  return is_homogeneous(a, 1, tol);
}

// Laboratory relative velocity v = c u_vec / u0 of a stage 4-velocity.
// Aborts (std::runtime_error) when u is no longer future-timelike: the
// integration has left the light cone and continuing would be meaningless.
Multivector stage_velocity(const Multivector& u, double c) {
  const double uu = scalar_part(u * u);
  if (!(u[1] > 0.0) || !(uu > 0.0))
    throw std::runtime_error(
        "probe velocity left the future light cone; aborting integration");
  const double scale = c / u[1];
  return relvec(u[2] * scale, u[3] * scale, u[4] * scale);
}

struct Derivative {
  Multivector dx;   // event velocity (c + v) gamma0
  Multivector du;   // 4-acceleration (power/c + force) gamma0 / m
  double dtau = 0.0;  // 1/gamma
};

template <typename ForceFn>
Derivative derivative_at(const Multivector& x, const Multivector& u, double c,
                         double mass, const ForceFn& force_at) {
  const Multivector v = stage_velocity(u, c);
  Derivative d;
  d.dx = (Multivector::scalar(c) + v) * Multivector::gamma(0);
  const SpacetimePoint event{x[1], x[2], x[3], x[4]};
  const auto f = force_at(event, v);  // {power, force}
  d.du = (Multivector::scalar(f.power / c) + f.force) * Multivector::gamma(0) *
         (1.0 / mass);
  d.dtau = c / u[1];
  return d;
}

// One classic fourth-order step in lab time followed by a mass-shell
// projection; the pre-projection drift is reported when asked for.
template <typename ProbeT, typename ForceFn>
ProbeT rk4_step(const ProbeT& probe, double c, double dt,
                const ForceFn& force_at, ProbeStepReport* report) {
  if (!(probe.mass > 0.0))
    throw std::invalid_argument("probe mass must be positive");
  if (!(dt > 0.0))
    throw std::invalid_argument("probe time step must be positive");
  if (!grade1_within_noise(probe.position))
    throw std::invalid_argument("probe position must be a grade-1 event");
  if (!grade1_within_noise(probe.velocity))
    throw std::invalid_argument("probe velocity must be a grade-1 4-velocity");

  const Multivector x0 = probe.position;
  const Multivector u0 = probe.velocity;
  const Derivative k1 = derivative_at(x0, u0, c, probe.mass, force_at);
  const Derivative k2 =
      derivative_at(x0 + k1.dx * (0.5 * dt), u0 + k1.du * (0.5 * dt), c,
                    probe.mass, force_at);
  const Derivative k3 =
      derivative_at(x0 + k2.dx * (0.5 * dt), u0 + k2.du * (0.5 * dt), c,
                    probe.mass, force_at);
  const Derivative k4 = derivative_at(x0 + k3.dx * dt, u0 + k3.du * dt, c,
                                      probe.mass, force_at);

  const double w = dt / 6.0;
  ProbeT next = probe;
  next.position = x0 + (k1.dx + (k2.dx + k3.dx) * 2.0 + k4.dx) * w;
  const Multivector u_raw = u0 + (k1.du + (k2.du + k3.du) * 2.0 + k4.du) * w;
  const double dtau =
      (k1.dtau + (k2.dtau + k3.dtau) * 2.0 + k4.dtau) * w;
  next.proper_time = probe.proper_time + dtau;

  const double uu = scalar_part(u_raw * u_raw);
  if (!(u_raw[1] > 0.0) || !(uu > 0.0))
    throw std::runtime_error(
        "probe velocity left the future light cone; aborting integration");
  const double norm = std::sqrt(uu);
  next.velocity = u_raw * (c / norm);
  if (report) {
    report->mass_shell_drift = std::abs(norm / c - 1.0);
    report->proper_time_delta = dtau;
  }
  return next;
}

}  // namespace

Multivector lab_four_velocity(double c, const Multivector& v_rel) {
  if (!(c > 0.0))
    throw std::invalid_argument("light speed c must be positive");
  if (!is_relative_vector(v_rel))
    throw std::invalid_argument(
        "lab_four_velocity: v must be a relative vector");
  const auto v = relvec_components(v_rel);
  const double beta2 = (v[0] * v[0] + v[1] * v[1] + v[2] * v[2]) / (c * c);
  if (!(beta2 < 1.0))
    throw std::invalid_argument("lab_four_velocity: speed must be below c");
  const double gamma = 1.0 / std::sqrt(1.0 - beta2);
  return (Multivector::scalar(c) + v_rel) * Multivector::gamma(0) * gamma;
}

double probe_kinetic_energy(double mass, double c, const Multivector& u) {
  if (!(mass > 0.0))
    throw std::invalid_argument("probe mass must be positive");
  if (!(c > 0.0))
    throw std::invalid_argument("light speed c must be positive");
  return mass * c * c * (u[1] / c - 1.0);
}

EmProbe integrate_probe(const EmProbe& probe, const FieldEvaluator& psi,
                        const EmMedium& medium, double dt,
                        ProbeStepReport* report) {
  medium.validate();
  if (!psi)
    throw std::invalid_argument("integrate_probe: empty field evaluator");
  const auto force_at = [&](const SpacetimePoint& event, const Multivector& v) {
    return em_lorentz_force(psi(event), probe.q_e, probe.q_m, v, medium);
  };
  return rk4_step(probe, medium.c, dt, force_at, report);
}

AcProbe integrate_probe(const AcProbe& probe, const FieldEvaluator& z,
                        const AcMedium& medium, double dt,
                        ProbeStepReport* report) {
  medium.validate();
  if (!z) throw std::invalid_argument("integrate_probe: empty field evaluator");
  const auto force_at = [&](const SpacetimePoint& event, const Multivector&) {
    return ac_force(z(event), probe, medium);
  };
  return rk4_step(probe, medium.c, dt, force_at, report);
}

}  // namespace stf
