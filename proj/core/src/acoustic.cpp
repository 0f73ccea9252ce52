#include "stafields/acoustic.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace stf {

namespace {

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

void require_relative_vector(const Multivector& a, const char* what) {
  if (!is_relative_vector(a))
    throw std::invalid_argument(std::string(what) +
                                ": value is not a relative vector");
}

void require_relative_vector_at_probes(const AnalyticField& f,
                                       const char* what) {
  for (const auto& x : kProbePoints) require_relative_vector(f.value(x), what);
}

constexpr unsigned kGrade = 1u;  // helper: kGrade << g selects grade g
constexpr unsigned kEven = (kGrade << 0) | (kGrade << 2) | (kGrade << 4);
constexpr unsigned kOdd13 = (kGrade << 1) | (kGrade << 3);

// Derivative acting from the right, sum_mu (d_mu f) gamma^mu with the
// reciprocal basis gamma^0 = gamma0, gamma^k = -gamma_k.
AnalyticField right_derivative(const AnalyticField& f) {
  AnalyticField out = f.partial(0).right_mul(Multivector::gamma(0));
  for (int k = 1; k < 4; ++k)
    out += f.partial(k).right_mul(Multivector::gamma(k)).scaled(-1.0);
  return out;
}

// grad ^ b = (grad b - b grad)/2 for a grade-1 valued field.
AnalyticField grad_wedge_vector(const AnalyticField& b) {
  return (b.grad() - right_derivative(b)).scaled(0.5);
}

// grad ^ B = (grad B + B grad)/2 for a grade-2 valued field.
AnalyticField grad_wedge_bivector(const AnalyticField& B) {
  return (B.grad() + right_derivative(B)).scaled(0.5);
}

// Spatial curl of a relative-vector field at a point.
std::array<double, 3> relative_curl(const AnalyticField& f,
                                    const SpacetimePoint& at) {
  std::array<std::array<double, 3>, 3> d{};  // d[j] = components of d_j f
  for (int j = 0; j < 3; ++j)
    d[j] = relvec_components(f.partial(j + 1).value(at));
  return {d[1][2] - d[2][1], d[2][0] - d[0][2], d[0][1] - d[1][0]};
}

}  // namespace

// --- potentials --------------------------------------------------------------

Multivector ac_angular_potential_value(const Multivector& x,
                                       const Multivector& y,
                                       const AcMedium& medium) {
  medium.validate();
  (void)relvec_components(x);
  (void)relvec_components(y);
  return (x + dual(y)) * medium.zeta;
}

AcDisplacements3D ac_displacements_3d(const Multivector& M,
                                      const AcMedium& medium,
                                      const Frame& frame) {
  medium.validate();
  require_grades(M, kGrade << 2, "ac_displacements_3d(M)");
  // Conjugation by gamma0 negates the relative-vector part of a bivector and
  // fixes the dualized part, so the half sum/difference separates them.
  const Multivector conj = frame.gamma0 * M * frame.gamma0;
  AcDisplacements3D out;
  out.x = (M - conj) * (0.5 / medium.zeta);
  out.y = undual((M + conj) * 0.5) / medium.zeta;
  return out;
}

Multivector ac_spinor_potential_value(double phi, const Multivector& M,
                                      double phi_w, const AcMedium& medium) {
  medium.validate();
  require_grades(M, kGrade << 2, "ac_spinor_potential_value(M)");
  Multivector psi = M * (medium.lambda_plus / 3.0);
  psi[0] += medium.lambda_minus * phi;
  psi[15] += medium.lambda_4 * phi_w;
  return psi;
}

AnalyticField ac_spinor_potential(const AcPotentialSpinor& potential,
                                  const AcMedium& medium) {
  medium.validate();
  require_grades_at_probes(potential.phi, kGrade << 0, "ac potential phi");
  require_grades_at_probes(potential.M, kGrade << 2, "ac potential M");
  require_grades_at_probes(potential.phi_w, kGrade << 0, "ac potential phi_w");
  return potential.phi.scaled(medium.lambda_minus) +
         potential.M.scaled(medium.lambda_plus / 3.0) +
         potential.phi_w.right_mul(Multivector::pseudoscalar())
             .scaled(medium.lambda_4);
}

// --- measurable field ---------------------------------------------------------

AnalyticField ac_field_from_potentials(const AcPotentialSpinor& potential,
                                       const AcMedium& medium) {
  return ac_spinor_potential(potential, medium).grad().scaled(-1.0);
}

MultivectorField ac_field_from_potentials(const MultivectorField& psi) {
  for (std::size_t i = 0; i < psi.size(); ++i)
    require_grades(psi[i], kEven, "ac_field_from_potentials(psi)");
  MultivectorField z = vector_derivative(psi);
  z *= -1.0;
  return z;
}

AcFields3D ac_fields_3d(const Multivector& z, const AcMedium& medium,
                        const Frame& frame) {
  medium.validate();
  require_grades(z, kOdd13, "ac_fields_3d(z)");
  const FrameSplit lin = frame_split(grade_project(z, 1), frame);
  const FrameSplit rot = frame_split(undual(grade_project(z, 3)), frame);
  AcFields3D out;
  out.P = lin.time * medium.c;
  out.rho_v = lin.spatial;
  out.P_w = rot.time * medium.c;
  out.rho_w = rot.spatial;
  return out;
}

Multivector ac_field_value(const AcFields3D& fields, const AcMedium& medium,
                           const Frame& frame) {
  medium.validate();
  return frame_join(fields.P / medium.c, fields.rho_v, frame) +
         dual(frame_join(fields.P_w / medium.c, fields.rho_w, frame));
}

// --- sources and equation of motion --------------------------------------------

Multivector ac_source_bivector_value(const Multivector& F,
                                     const Multivector& rho_Omega,
                                     const AcMedium& medium) {
  medium.validate();
  (void)relvec_components(F);
  (void)relvec_components(rho_Omega);
  return F / medium.c + rho_Omega * Multivector::pseudoscalar();
}

Multivector ac_source_value(double nu, const Multivector& F,
                            const Multivector& rho_Omega, double nu_w,
                            const AcMedium& medium) {
  Multivector psi_N = ac_source_bivector_value(F, rho_Omega, medium);
  psi_N[0] += nu;
  psi_N[15] += nu_w;
  return psi_N;
}

AnalyticField ac_source_spinor(const AcSource& source) {
  require_grades_at_probes(source.nu, kGrade << 0, "ac source nu");
  require_grades_at_probes(source.N, kGrade << 2, "ac source N");
  require_grades_at_probes(source.nu_w, kGrade << 0, "ac source nu_w");
  return source.nu + source.N +
         source.nu_w.right_mul(Multivector::pseudoscalar());
}

AnalyticField ac_residual(const AnalyticField& z,
                          const AnalyticField& psi_N) {
  return z.grad() + psi_N;
}

MultivectorField ac_residual(const MultivectorField& z,
                             const MultivectorField& psi_N) {
  MultivectorField out = vector_derivative(z);
  out += psi_N;
  return out;
}

// --- stress tensor, energy, momentum --------------------------------------------

Multivector ac_stress_tensor(const Multivector& z, const Multivector& b,
                             const AcMedium& medium) {
  medium.validate();
  require_grades(z, kOdd13, "ac_stress_tensor(z)");
  require_grades(b, kGrade << 1, "ac_stress_tensor(b)");
  const Multivector rev = reverse(z);
  const Multivector sum = rev * b * z + z * b * rev;
  // The symmetrized bilinear is reverse-invariant, so its odd part is pure
  // grade 1 up to rounding; the projection discards that rounding noise.
  return grade_project(sum, 1) / (4.0 * medium.rho * medium.c);
}

double ac_energy_density(const AcFields3D& fields, const AcMedium& medium) {
  medium.validate();
  const double inv_rho = 1.0 / medium.rho;
  return 0.5 * (inv_rho * dot3(fields.rho_v, fields.rho_v) +
                medium.beta * fields.P * fields.P) +
         0.5 * (inv_rho * dot3(fields.rho_w, fields.rho_w) +
                medium.beta * fields.P_w * fields.P_w);
}

double ac_energy_density(const Multivector& z, const AcMedium& medium) {
  return ac_energy_density(ac_fields_3d(z, medium), medium);
}

Multivector ac_momentum_density(const AcFields3D& fields,
                                const AcMedium& medium) {
  medium.validate();
  const double scale = 1.0 / (medium.rho * medium.c * medium.c);
  return fields.rho_v * (fields.P * scale) +
         fields.rho_w * (fields.P_w * scale);
}

Multivector ac_momentum_density(const Multivector& z, const AcMedium& medium) {
  return ac_momentum_density(ac_fields_3d(z, medium), medium);
}

// --- force on probe sources -----------------------------------------------------

AcForce3D ac_force(const Multivector& z, const AcProbe& probe,
                   const AcMedium& medium, const Frame& frame) {
  const AcFields3D f = ac_fields_3d(z, medium, frame);
  require_relative_vector(probe.force_density, "ac_force(force_density)");
  require_relative_vector(probe.vorticity_density,
                          "ac_force(vorticity_density)");
  const double inv_rho = 1.0 / medium.rho;
  const double inv_rho_c2 = inv_rho / (medium.c * medium.c);
  const Multivector v = f.rho_v * inv_rho;
  const Multivector w_vec = f.rho_w * inv_rho;
  const Multivector c_rot = probe.vorticity_density * medium.c;
  AcForce3D out;
  out.power = f.P * inv_rho * probe.mass_rate +
              f.P_w * inv_rho * probe.mass_rate_w -
              dot3(v, probe.force_density) - dot3(w_vec, c_rot);
  out.force = v * probe.mass_rate -
              probe.force_density * (f.P * inv_rho_c2) -
              cross3(v, c_rot) / medium.c + w_vec * probe.mass_rate_w -
              c_rot * (f.P_w * inv_rho_c2) +
              cross3(w_vec, probe.force_density) / medium.c;
  return out;
}

Multivector ac_force_covariant(const Multivector& z,
                               const Multivector& psi_Np,
                               const AcMedium& medium) {
  medium.validate();
  require_grades(z, kOdd13, "ac_force_covariant(z)");
  require_grades(psi_Np, kEven, "ac_force_covariant(psi_Np)");
  return grade_project(reverse(z) * psi_Np, 1) / medium.rho;
}

// --- Lagrangians and gauge transformations ---------------------------------------

double ac_lagrangian_traditional(const Multivector& z,
                                 const AcMedium& medium) {
  medium.validate();
  require_grades(z, kOdd13, "ac_lagrangian_traditional(z)");
  return -scalar_part(reverse(z) * z) / (2.0 * medium.rho);
}

AcLagrangians ac_lagrangians(const AcPotentialSpinor& potential,
                             const AcMedium& medium, const SpacetimePoint& x) {
  medium.validate();
  const Multivector I = Multivector::pseudoscalar();
  const AnalyticField psi = ac_spinor_potential(potential, medium);
  const Multivector z_val = psi.grad().value(x) * -1.0;
  // rev(z_dual) = zeta^{-1} grad(lambda_4 phi_w + lambda_plus M I / 3
  //                              - lambda_minus phi I)
  const AnalyticField dual_gen =
      potential.phi_w.scaled(medium.lambda_4) +
      potential.M.right_mul(I).scaled(medium.lambda_plus / 3.0) +
      potential.phi.right_mul(I).scaled(-medium.lambda_minus);
  const Multivector dual_rev = dual_gen.grad().value(x) / medium.zeta;
  AcLagrangians out;
  out.traditional = ac_lagrangian_traditional(z_val, medium);
  out.dual = 0.5 * medium.c * (dual_rev * z_val)[15];
  return out;
}

AcGaugeResult ac_gauge_transform(const AnalyticField& M,
                                 const AcMedium& medium,
                                 const AnalyticField& b0,
                                 const AnalyticField& b_vec) {
  medium.validate();
  require_grades_at_probes(M, kGrade << 2, "ac_gauge_transform(M)");
  require_grades_at_probes(b0, kGrade << 0, "ac_gauge_transform(b0)");
  require_relative_vector_at_probes(b_vec, "ac_gauge_transform(b_vec)");
  // b = rho c (b0/c + b_vec) gamma0, a grade-1 generator.  The grade-2 shift
  // grad . (b I) equals (grad ^ b) I, which the wedge form keeps in closed
  // form without a grade projection.
  const AnalyticField b =
      (b0.scaled(medium.rho) + b_vec.scaled(medium.zeta))
          .right_mul(Multivector::gamma(0));
  const AnalyticField delta_M =
      grad_wedge_vector(b).right_mul(Multivector::pseudoscalar());
  AcGaugeResult out;
  out.M = M + delta_M;
  out.delta_wedge = grad_wedge_bivector(delta_M);
  return out;
}

// --- plane waves ------------------------------------------------------------------

namespace {

// A r B cos(theta) and A r B sin(theta) as half sums of conjugate-phase
// modulated terms, with the trigonometric factor kept rightmost.
AnalyticField linear_cosine(const Multivector& A,
                            const std::array<double, 4>& w, double phi,
                            const Multivector& B) {
  const std::array<double, 4> neg_w = {-w[0], -w[1], -w[2], -w[3]};
  return AnalyticField::linear_exponential(A * 0.5, w, phi, B) +
         AnalyticField::linear_exponential(A * 0.5, neg_w, -phi, B);
}

AnalyticField linear_sine(const Multivector& A, const std::array<double, 4>& w,
                          double phi, const Multivector& B) {
  const std::array<double, 4> neg_w = {-w[0], -w[1], -w[2], -w[3]};
  const Multivector BI = B * Multivector::pseudoscalar();
  return AnalyticField::linear_exponential(A, w, phi, BI * -0.5) +
         AnalyticField::linear_exponential(A, neg_w, -phi, BI * 0.5);
}

}  // namespace

double AcPlaneWave::phase(const SpacetimePoint& x) const {
  return w[0] * x[0] + w[1] * x[1] + w[2] * x[2] + w[3] * x[3] + phi0;
}

Multivector AcPlaneWave::displacement_amplitude_x(
    const SpacetimePoint& x) const {
  if (branch == AcWaveBranch::kScalar) return Multivector{};
  const double s = static_cast<double>(frequency_sign);
  const double t = x[0] / medium.c;
  const Multivector r_rel = relvec(x[1], x[2], x[3]);
  const FrameSplit n = frame_split(r_n);
  const FrameSplit sp = frame_split(r_s);
  const Multivector v =
      relvec(k_hat[0], k_hat[1], k_hat[2]) *
      (pressure_amplitude / medium.zeta);
  const double amp_over_p0 = pressure_amplitude / medium.P0;
  return v * (s * t + n.time / medium.c) -
         (r_rel * s + n.spatial) * amp_over_p0 -
         cross3(sp.spatial, v) / medium.c;
}

Multivector AcPlaneWave::displacement_amplitude_y(
    const SpacetimePoint& x) const {
  if (branch == AcWaveBranch::kScalar) return Multivector{};
  const double s = static_cast<double>(frequency_sign);
  const Multivector r_rel = relvec(x[1], x[2], x[3]);
  const FrameSplit n = frame_split(r_n);
  const FrameSplit sp = frame_split(r_s);
  const Multivector v =
      relvec(k_hat[0], k_hat[1], k_hat[2]) *
      (pressure_amplitude / medium.zeta);
  return cross3(r_rel * s + n.spatial, v) / medium.c +
         v * (sp.time / medium.c) -
         sp.spatial * (pressure_amplitude / medium.P0);
}

Multivector AcPlaneWave::displacement_x(const SpacetimePoint& x) const {
  const double theta = phase(x);
  return displacement_amplitude_x(x) * std::cos(theta) -
         displacement_amplitude_y(x) * std::sin(theta);
}

Multivector AcPlaneWave::displacement_y(const SpacetimePoint& x) const {
  const double theta = phase(x);
  return displacement_amplitude_y(x) * std::cos(theta) +
         displacement_amplitude_x(x) * std::sin(theta);
}

Multivector AcPlaneWave::mass_moment_orbital(const SpacetimePoint& x) const {
  if (branch == AcWaveBranch::kScalar) return Multivector{};
  const double s = static_cast<double>(frequency_sign);
  const double t = x[0] / medium.c;
  const Multivector r_rel = relvec(x[1], x[2], x[3]);
  const Multivector rho_v = relvec(k_hat[0], k_hat[1], k_hat[2]) *
                            (pressure_amplitude / medium.c);
  const double inv_c2 = 1.0 / (medium.c * medium.c);
  return (rho_v * t - r_rel * (pressure_amplitude * inv_c2)) * s;
}

Multivector AcPlaneWave::mass_moment_spin() const {
  if (branch == AcWaveBranch::kScalar) return Multivector{};
  const FrameSplit n = frame_split(r_n);
  const FrameSplit sp = frame_split(r_s);
  const Multivector v =
      relvec(k_hat[0], k_hat[1], k_hat[2]) *
      (pressure_amplitude / medium.zeta);
  const double inv_c2 = 1.0 / (medium.c * medium.c);
  return v * (medium.rho * n.time / medium.c) -
         n.spatial * (pressure_amplitude * inv_c2) -
         cross3(sp.spatial, v) * (medium.rho / medium.c);
}

Multivector AcPlaneWave::angular_momentum_orbital(
    const SpacetimePoint& x) const {
  if (branch == AcWaveBranch::kScalar) return Multivector{};
  const double s = static_cast<double>(frequency_sign);
  const Multivector r_rel = relvec(x[1], x[2], x[3]);
  const Multivector rho_v = relvec(k_hat[0], k_hat[1], k_hat[2]) *
                            (pressure_amplitude / medium.c);
  return cross3(r_rel, rho_v) * s;
}

Multivector AcPlaneWave::angular_momentum_spin() const {
  if (branch == AcWaveBranch::kScalar) return Multivector{};
  const FrameSplit n = frame_split(r_n);
  const FrameSplit sp = frame_split(r_s);
  const Multivector rho_v = relvec(k_hat[0], k_hat[1], k_hat[2]) *
                            (pressure_amplitude / medium.c);
  return cross3(n.spatial, rho_v) + rho_v * sp.time -
         sp.spatial * (pressure_amplitude / medium.c);
}

AnalyticField AcPlaneWave::momentum_density() const {
  const double s = static_cast<double>(frequency_sign);
  return AnalyticField::cosine(relvec(k_hat[0], k_hat[1], k_hat[2]) *
                                   (s * pressure_amplitude / medium.c),
                               w, phi0);
}

AnalyticField AcPlaneWave::vorticity_free_displacement() const {
  if (branch == AcWaveBranch::kScalar) return AnalyticField::zero();
  return AnalyticField::sine(
      relvec(k_hat[0], k_hat[1], k_hat[2]) *
          (-pressure_amplitude / (medium.zeta * omega)),
      w, phi0);
}

AcPlaneWave ac_plane_wave(const AcMedium& medium,
                          const std::array<double, 3>& k_hat, double omega,
                          int frequency_sign, double pressure_amplitude,
                          double phi0, AcWaveBranch branch,
                          const Multivector& r_n, const Multivector& r_s) {
  medium.validate();
  if (!(omega > 0.0))
    throw std::invalid_argument("ac_plane_wave: omega must be positive");
  if (frequency_sign != 1 && frequency_sign != -1)
    throw std::invalid_argument("ac_plane_wave: frequency_sign must be +1/-1");
  if (!(pressure_amplitude > 0.0))
    throw std::invalid_argument(
        "ac_plane_wave: pressure amplitude must be positive");
  const double khat_norm = std::sqrt(
      k_hat[0] * k_hat[0] + k_hat[1] * k_hat[1] + k_hat[2] * k_hat[2]);
  if (std::abs(khat_norm - 1.0) > 1e-9)
    throw std::invalid_argument("ac_plane_wave: k_hat must be a unit vector");
  require_grades(r_n, kGrade << 1, "ac_plane_wave(r_n)");
  require_grades(r_s, kGrade << 1, "ac_plane_wave(r_s)");
  if (branch == AcWaveBranch::kScalar &&
      (coeff_norm(r_n) != 0.0 || coeff_norm(r_s) != 0.0))
    throw std::invalid_argument(
        "ac_plane_wave: the scalar branch carries no moment offsets");

  AcPlaneWave wave;
  wave.branch = branch;
  wave.medium = medium;
  if (branch == AcWaveBranch::kScalar) {
    wave.medium.lambda_minus = 1.0;
    wave.medium.lambda_plus = 1.0;
    wave.medium.lambda_4 = 1.0;
  } else {
    wave.medium.lambda_minus = 1.0 / 3.0;
    wave.medium.lambda_plus = 1.0;
    wave.medium.lambda_4 = 1.0 / 3.0;
  }
  wave.frequency_sign = frequency_sign;
  wave.phi0 = phi0;
  wave.pressure_amplitude = pressure_amplitude;
  wave.omega = omega;
  wave.k_hat = k_hat;
  wave.r_n = r_n;
  wave.r_s = r_s;

  const double kc = omega / medium.c;
  const double s = static_cast<double>(frequency_sign);
  wave.k =
      Multivector::vector(kc, kc * k_hat[0], kc * k_hat[1], kc * k_hat[2]);
  wave.w = {-s * kc, s * kc * k_hat[0], s * kc * k_hat[1], s * kc * k_hat[2]};
  wave.p_bar = wave.k * (pressure_amplitude / omega);
  wave.z = AnalyticField::exponential(wave.p_bar * s, wave.w, phi0);

  const Multivector I = Multivector::pseudoscalar();
  // Constant part of the canonical spinor amplitude; the full-spinor branch
  // adds the position-linear term s p_bar r / 3.
  Multivector C = I * (-pressure_amplitude / omega);
  if (branch == AcWaveBranch::kFullSpinor) C += wave.p_bar * (r_n + r_s * I);
  const double c0 = C[0];
  const double c4 = C[15];
  const Multivector C2 = grade_project(C, 2);

  wave.potential.phi =
      AnalyticField::cosine(Multivector::scalar(c0), wave.w, phi0) +
      AnalyticField::sine(Multivector::scalar(-c4), wave.w, phi0);
  wave.potential.phi_w =
      AnalyticField::cosine(Multivector::scalar(c4), wave.w, phi0) +
      AnalyticField::sine(Multivector::scalar(c0), wave.w, phi0);
  wave.potential.M = AnalyticField::cosine(C2, wave.w, phi0) +
                     AnalyticField::sine(C2 * I, wave.w, phi0);

  if (branch == AcWaveBranch::kScalar) {
    wave.psi = AnalyticField::exponential(C, wave.w, phi0);
  } else {
    wave.psi =
        AnalyticField::exponential(C * (1.0 / 3.0), wave.w, phi0) +
        AnalyticField::linear_exponential(wave.p_bar * (s / 3.0), wave.w,
                                          phi0);
    // Symmetrized halves of p_bar r split the position-linear term into its
    // scalar (p_bar . r) and bivector (p_bar ^ r) contributions.
    const Multivector half_p = wave.p_bar * (s * 0.5);
    const Multivector half = Multivector::scalar(s * 0.5);
    wave.potential.phi += linear_cosine(half_p, wave.w, phi0,
                                        Multivector::scalar(1.0)) +
                          linear_cosine(half, wave.w, phi0, wave.p_bar);
    wave.potential.phi_w += linear_sine(half_p, wave.w, phi0,
                                        Multivector::scalar(1.0)) +
                            linear_sine(half, wave.w, phi0, wave.p_bar);
    wave.potential.M +=
        linear_cosine(half_p, wave.w, phi0, Multivector::scalar(1.0)) -
        linear_cosine(half, wave.w, phi0, wave.p_bar) +
        linear_sine(half_p, wave.w, phi0, I) -
        linear_sine(half, wave.w, phi0, wave.p_bar * I);
  }
  return wave;
}

// --- spin density ------------------------------------------------------------------

Multivector ac_spin_density(const AnalyticField& x_disp,
                            const AnalyticField& y_disp,
                            const AnalyticField& rho_v,
                            const SpacetimePoint& at, double gauge_tol) {
  const Multivector x_val = x_disp.value(at);
  const Multivector rho_v_val = rho_v.value(at);
  require_relative_vector(x_val, "ac_spin_density(x)");
  require_relative_vector(rho_v_val, "ac_spin_density(rho_v)");
  const std::array<double, 3> curl_x = relative_curl(x_disp, at);
  const std::array<double, 3> dt_y_over_c =
      relvec_components(y_disp.partial(0).value(at));
  double residual = 0.0;
  double scale = 0.0;
  for (int i = 0; i < 3; ++i) {
    residual = std::max(residual, std::abs(curl_x[i] + dt_y_over_c[i]));
    scale += std::abs(curl_x[i]) + std::abs(dt_y_over_c[i]);
  }
  if (residual > gauge_tol * (scale + 1e-300))
    throw std::invalid_argument(
        "ac_spin_density: displacement is not vorticity-free (|curl x + "
        "dt y / c| = " +
        std::to_string(residual) + ")");
  return cross3(x_val, rho_v_val) * 0.5;
}

}  // namespace stf
