#include "stafields/em.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace stf {

namespace {

// Largest off-grade coefficient magnitude, where `keep` is a bitmask of
// grades 0..4 that are allowed to carry content.
double off_grade_linf(const Multivector& a, unsigned keep) {
  double worst = 0.0;
  for (int i = 0; i < kBladeCount; ++i) {
    if (keep & (1u << blade_grade(i))) continue;
    worst = std::max(worst, std::abs(a[i]));
  }
  return worst;
}

void require_grades(const Multivector& a, unsigned keep, const char* what) {
  const double scale = coeff_norm(a);
  if (off_grade_linf(a, keep) > 1e-12 * (scale + 1.0))
    throw std::invalid_argument(std::string(what) +
                                ": value has unexpected grade content");
}

// Deterministic spacetime points at which closed-form fields are checked
// for the grade content their role requires.
constexpr std::array<SpacetimePoint, 5> kProbePoints = {{
    {0.0, 0.0, 0.0, 0.0},
    {0.3, -1.7, 0.9, 2.2},
    {-2.1, 0.5, -0.8, 1.3},
    {1.0, 1.0, -1.0, 0.5},
    {0.7, -0.2, 2.5, -1.9},
}};

void require_grades_at_probes(const AnalyticField& f, unsigned keep,
                              const char* what) {
  for (const auto& x : kProbePoints) require_grades(f.value(x), keep, what);
}

constexpr unsigned kGrade = 1u;  // helper: kGrade << g selects grade g

}  // namespace

// --- potentials --------------------------------------------------------------

Multivector em_electric_potential_value(double phi_e,
                                        const std::array<double, 3>& A_e,
                                        const EmMedium& medium) {
  medium.validate();
  return Multivector::vector(phi_e / medium.c, A_e[0], A_e[1], A_e[2]);
}

Multivector em_magnetic_potential_value(double phi_m,
                                        const std::array<double, 3>& A_m,
                                        const EmMedium& medium) {
  medium.validate();
  return Multivector::vector(phi_m / medium.c, A_m[0], A_m[1], A_m[2]) *
         medium.zeta;
}

Multivector em_complex_potential_value(const Multivector& a_e,
                                       const Multivector& a_m,
                                       const EmMedium& medium) {
  medium.validate();
  require_grades(a_e, kGrade << 1, "em_complex_potential_value(a_e)");
  require_grades(a_m, kGrade << 1, "em_complex_potential_value(a_m)");
  return a_e * medium.lambda_minus +
         (a_m * Multivector::pseudoscalar()) * medium.lambda_plus;
}

AnalyticField em_complex_potential(const EmPotential& potential,
                                   const EmMedium& medium) {
  medium.validate();
  require_grades_at_probes(potential.a_e, kGrade << 1, "em potential a_e");
  require_grades_at_probes(potential.a_m, kGrade << 1, "em potential a_m");
  return potential.a_e.scaled(medium.lambda_minus) +
         potential.a_m.right_mul(Multivector::pseudoscalar())
             .scaled(medium.lambda_plus);
}

// --- field spinor --------------------------------------------------------------

AnalyticField em_spinor_from_potentials(const EmPotential& potential,
                                        const EmMedium& medium) {
  return em_complex_potential(potential, medium).grad();
}

MultivectorField em_spinor_from_potentials(const MultivectorField& z) {
  const std::size_t n = z.size();
  for (std::size_t i = 0; i < n; ++i)
    require_grades(z[i], (kGrade << 1) | (kGrade << 3), "em lattice potential");
  return vector_derivative(z);
}

EmFields3D em_fields_3d(const Multivector& psi, const EmMedium& medium,
                        const Frame& frame) {
  medium.validate();
  require_grades(psi, (kGrade << 0) | (kGrade << 2) | (kGrade << 4),
                 "em_fields_3d(psi)");
  const Multivector F = grade_project(psi, 2);
  const Multivector conj = frame.gamma0 * F * frame.gamma0;
  EmFields3D out;
  out.E = (F - conj) * (0.5 * medium.c);
  out.H = undual((F + conj) * 0.5) / medium.mu;
  out.W_e = psi[0] * medium.c * medium.c;
  out.W_m = psi[15] * medium.c;
  return out;
}

Multivector em_spinor_value(const EmFields3D& fields, const EmMedium& medium) {
  Multivector psi = fields.E / medium.c + dual(fields.H) * medium.mu;
  psi[0] += fields.W_e / (medium.c * medium.c);
  psi[15] += fields.W_m / medium.c;
  return psi;
}

// --- sources and equation of motion -------------------------------------------

Multivector em_current_value(const Multivector& j_e, const Multivector& j_m,
                             const EmMedium& medium) {
  medium.validate();
  require_grades(j_e, kGrade << 1, "em_current_value(j_e)");
  require_grades(j_m, kGrade << 1, "em_current_value(j_m)");
  return j_e + (j_m * Multivector::pseudoscalar()) / medium.c;
}

AnalyticField em_current(const EmSource& source, const EmMedium& medium) {
  medium.validate();
  require_grades_at_probes(source.j_e, kGrade << 1, "em source j_e");
  require_grades_at_probes(source.j_m, kGrade << 1, "em source j_m");
  return source.j_e + source.j_m.right_mul(Multivector::pseudoscalar())
                          .scaled(1.0 / medium.c);
}

AnalyticField maxwell_residual(const AnalyticField& psi,
                               const AnalyticField& j, const EmMedium& medium) {
  medium.validate();
  return psi.grad() + j.scaled(-medium.mu);
}

MultivectorField maxwell_residual(const MultivectorField& psi,
                                  const MultivectorField& j,
                                  const EmMedium& medium) {
  medium.validate();
  MultivectorField out = vector_derivative(psi);
  MultivectorField scaled_j = j;
  scaled_j *= -medium.mu;
  out += scaled_j;
  return out;
}

// --- stress tensor, energy, momentum -------------------------------------------

Multivector em_stress_tensor(const Multivector& psi, const Multivector& b,
                             const EmMedium& medium) {
  medium.validate();
  require_grades(psi, (kGrade << 0) | (kGrade << 2) | (kGrade << 4),
                 "em_stress_tensor(psi)");
  require_grades(b, kGrade << 1, "em_stress_tensor(b)");
  const Multivector rev = reverse(psi);
  const Multivector sum = rev * b * psi + psi * b * rev;
  // The symmetrized bilinear is reverse-invariant, so its odd part is pure
  // grade 1 up to rounding; the projection discards that rounding noise.
  return grade_project(sum, 1) / (4.0 * medium.mu * medium.c);
}

double em_energy_density(const EmFields3D& fields, const EmMedium& medium) {
  medium.validate();
  const double we = fields.W_e / medium.c;
  const double wm = fields.W_m / (medium.mu * medium.c);
  return 0.5 * (medium.epsilon * dot3(fields.E, fields.E) +
                medium.mu * dot3(fields.H, fields.H)) +
         0.5 * (medium.epsilon * we * we + medium.mu * wm * wm);
}

double em_energy_density(const Multivector& psi, const EmMedium& medium) {
  return em_energy_density(em_fields_3d(psi, medium), medium);
}

Multivector em_momentum_density(const EmFields3D& fields,
                                const EmMedium& medium) {
  medium.validate();
  return cross3(fields.E, fields.H) / (medium.c * medium.c);
}

Multivector em_momentum_density(const Multivector& psi,
                                const EmMedium& medium) {
  return em_momentum_density(em_fields_3d(psi, medium), medium);
}

// --- force on test charges -----------------------------------------------------

Multivector em_lab_velocity(const Multivector& u, const EmMedium& medium,
                            const Frame& frame) {
  medium.validate();
  require_grades(u, kGrade << 1, "em_lab_velocity(u)");
  const FrameSplit split = frame_split(u, frame);
  if (!(split.time > 0.0))
    throw std::invalid_argument("em_lab_velocity: u is not future-pointing");
  const double speed2 = dot3(split.spatial, split.spatial);
  if (!(speed2 < split.time * split.time))
    throw std::invalid_argument("em_lab_velocity: u is not timelike");
  return split.spatial * (medium.c / split.time);
}

EmForce3D em_lorentz_force(const Multivector& psi, double q_e, double q_m,
                           const Multivector& v, const EmMedium& medium,
                           const Frame& frame) {
  const EmFields3D f = em_fields_3d(psi, medium, frame);
  const double mu = medium.mu;
  const double inv_c2 = 1.0 / (medium.c * medium.c);
  EmForce3D out;
  out.power = q_e * dot3(f.E, v) + q_m * mu * dot3(f.H, v) + q_e * f.W_e +
              q_m * f.W_m;
  out.force = f.E * q_e + cross3(v, f.H) * (mu * q_e) +
              v * (q_e * f.W_e * inv_c2) + f.H * (mu * q_m) -
              cross3(v, f.E) * (q_m * inv_c2) + v * (q_m * f.W_m * inv_c2);
  return out;
}

EmForce3D em_lorentz_force(const Multivector& psi, const EmProbe& probe,
                           const EmMedium& medium, const Frame& frame) {
  return em_lorentz_force(psi, probe.q_e, probe.q_m,
                          em_lab_velocity(probe.velocity, medium, frame),
                          medium, frame);
}

Multivector em_force_covariant(const Multivector& psi,
                               const Multivector& j_p) {
  return (reverse(psi) * j_p + reverse(j_p) * psi) * -0.5;
}

// --- Lagrangians and the dual field ---------------------------------------------

double em_lagrangian_traditional(const Multivector& psi,
                                 const EmMedium& medium) {
  medium.validate();
  return -scalar_part(reverse(psi) * psi) / (2.0 * medium.mu);
}

EmLagrangians em_lagrangians(const EmPotential& potential,
                             const EmMedium& medium, const SpacetimePoint& x) {
  medium.validate();
  const Multivector grad_ae = potential.a_e.grad().value(x);
  const Multivector grad_am = potential.a_m.grad().value(x);
  const Multivector I = Multivector::pseudoscalar();
  const Multivector psi = grad_ae * medium.lambda_minus +
                          (grad_am * I) * medium.lambda_plus;
  const Multivector dual_rev =
      (grad_am * medium.lambda_plus + (grad_ae * I) * medium.lambda_minus) /
      medium.zeta;
  EmLagrangians out;
  out.traditional = em_lagrangian_traditional(psi, medium);
  out.dual = 0.5 * medium.c * (dual_rev * psi)[15];
  return out;
}

Multivector em_dual_field(const Multivector& F, const EmMedium& medium) {
  medium.validate();
  require_grades(F, kGrade << 2, "em_dual_field(F)");
  return reverse(F) * Multivector::pseudoscalar() / medium.zeta;
}

// --- gauge transformations ------------------------------------------------------

EmGaugeResult em_gauge_transform(const EmPotential& potential,
                                 const EmMedium& medium,
                                 const AnalyticField& chi_e,
                                 const AnalyticField& chi_m) {
  medium.validate();
  require_grades_at_probes(chi_e, kGrade << 0, "em gauge chi_e");
  require_grades_at_probes(chi_m, kGrade << 0, "em gauge chi_m");
  EmGaugeResult out;
  out.potential.a_e = potential.a_e + chi_e.grad();
  out.potential.a_m = potential.a_m + chi_m.grad();
  out.delta_W_e = chi_e.dalembertian().scaled(medium.lambda_minus * medium.c *
                                              medium.c);
  out.delta_W_m = chi_m.dalembertian().scaled(medium.lambda_plus * medium.c);
  return out;
}

// --- plane waves -----------------------------------------------------------------

EmPlaneWave em_plane_wave(const EmMedium& medium,
                          const std::array<double, 3>& k_hat, double omega,
                          int frequency_sign, const Multivector& a_e0,
                          const Multivector& a_m0, double phi0) {
  medium.validate();
  if (!(omega > 0.0))
    throw std::invalid_argument("em_plane_wave: omega must be positive");
  if (frequency_sign != 1 && frequency_sign != -1)
    throw std::invalid_argument("em_plane_wave: frequency_sign must be +1/-1");
  const double khat_norm =
      std::sqrt(k_hat[0] * k_hat[0] + k_hat[1] * k_hat[1] +
                k_hat[2] * k_hat[2]);
  if (std::abs(khat_norm - 1.0) > 1e-9)
    throw std::invalid_argument("em_plane_wave: k_hat must be a unit vector");
  require_grades(a_e0, kGrade << 1, "em_plane_wave(a_e0)");
  require_grades(a_m0, kGrade << 1, "em_plane_wave(a_m0)");
  const double ortho = std::abs(scalar_part(a_e0 * a_m0));
  if (ortho > 1e-9 * (coeff_norm(a_e0) * coeff_norm(a_m0) + 1e-300))
    throw std::invalid_argument(
        "em_plane_wave: a_e0 and a_m0 must be orthogonal");

  const double kc = omega / medium.c;
  const double s = static_cast<double>(frequency_sign);
  EmPlaneWave wave;
  wave.frequency_sign = frequency_sign;
  wave.phi0 = phi0;
  wave.k = Multivector::vector(kc, kc * k_hat[0], kc * k_hat[1],
                               kc * k_hat[2]);
  wave.w = {-s * kc, s * kc * k_hat[0], s * kc * k_hat[1], s * kc * k_hat[2]};

  const Multivector z0 = em_complex_potential_value(a_e0, a_m0, medium);
  wave.psi0 = (wave.k * z0) * -s;
  const Multivector I = Multivector::pseudoscalar();
  wave.z = AnalyticField::exponential(-(z0 * I), wave.w, phi0);
  wave.psi = AnalyticField::exponential(wave.psi0, wave.w, phi0);

  const double ratio_me = medium.lambda_plus / medium.lambda_minus;
  wave.potential.a_e = AnalyticField::sine(a_e0, wave.w, phi0) +
                       AnalyticField::cosine(a_m0 * ratio_me, wave.w, phi0);
  wave.potential.a_m =
      AnalyticField::sine(a_m0, wave.w, phi0) +
      AnalyticField::cosine(a_e0 * (-1.0 / ratio_me), wave.w, phi0);
  return wave;
}

}  // namespace stf
