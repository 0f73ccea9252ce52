#include "stafields/polar.hpp"

#include <cmath>

namespace stf {

namespace {

// Extracts the (scalar, pseudoscalar) pair of q, requiring everything else
// to vanish within tol * scale.
ComplexScalar complex_scalar_part(const Multivector& q, double tol,
                                  double scale, const char* what) {
  for (int i = 1; i < 15; ++i)
    if (std::abs(q[i]) > tol * scale)
      throw std::invalid_argument(std::string(what) +
                                  ": contraction is not a complex scalar");
  return ComplexScalar{q[0], q[15]};
}

// atan2 with the pseudoscalar coefficient normalized so that exact zeros
// land on the positive branch (phase pi, not -pi, for negative reals).
double principal_phase(double beta, double alpha) {
  if (beta == 0.0) beta = 0.0;  // collapse -0.0 to +0.0
  return std::atan2(beta, alpha);
}

}  // namespace

ComplexScalar ComplexScalar::from_multivector(const Multivector& m,
                                              double tol) {
  const double scale = 1.0 + linf_norm(m);
  for (int i = 1; i < 15; ++i)
    if (std::abs(m[i]) > tol * scale)
      throw std::invalid_argument(
          "ComplexScalar: input has non-scalar content");
  return ComplexScalar{m[0], m[15]};
}

Multivector ComplexScalar::to_multivector() const {
  Multivector m;
  m[0] = alpha;
  m[15] = beta;
  return m;
}

Multivector phase_factor(double theta) {
  Multivector m;
  m[0] = std::cos(theta);
  m[15] = std::sin(theta);
  return m;
}

Multivector PolarForm::reconstruct() const {
  const double angle =
      sector == PolarSector::kScalar ? phase : 0.5 * phase;
  return canonical * phase_factor(angle);
}

PolarForm scalar_polar(const ComplexScalar& z) {
  PolarForm p;
  p.sector = PolarSector::kScalar;
  const double mod = std::sqrt(z.modulus2());
  if (mod == 0.0) {
    p.is_null = true;
    p.canonical = Multivector{};
    return p;
  }
  p.magnitude = mod;
  p.phase = principal_phase(z.beta, z.alpha);
  p.canonical = Multivector::scalar(mod);
  return p;
}

PolarForm vector_polar(const Multivector& z, double tol) {
  const double scale = 1.0 + linf_norm(z);
  for (int i = 0; i < 16; ++i)
    if (blade_grade(i) % 2 == 0 && std::abs(z[i]) > tol * scale)
      throw std::invalid_argument(
          "vector_polar: input must be odd (grades 1 and 3)");

  PolarForm p;
  p.sector = PolarSector::kVector;
  const Multivector q = reverse(z) * z;
  const double n2 = coeff_norm(z) * coeff_norm(z);
  const ComplexScalar zz =
      complex_scalar_part(q, 1e-10, 1.0 + n2, "vector_polar");
  const double invariant = std::sqrt(zz.modulus2());
  if (invariant <= 1e-12 * n2) {
    p.is_null = true;
    p.canonical = z;
    return p;
  }
  p.phase = principal_phase(zz.beta, zz.alpha);
  p.magnitude = std::sqrt(invariant);
  p.canonical = z * phase_factor(-0.5 * p.phase);
  return p;
}

PolarForm bivector_polar(const Multivector& F, double tol) {
  const double scale = 1.0 + linf_norm(F);
  if (!is_homogeneous(F, 2, tol * scale))
    throw std::invalid_argument("bivector_polar: input must be grade-2");

  PolarForm p;
  p.sector = PolarSector::kBivector;
  const Multivector q = F * F;
  const double n2 = coeff_norm(F) * coeff_norm(F);
  const ComplexScalar ff =
      complex_scalar_part(q, 1e-10, 1.0 + n2, "bivector_polar");
  const double invariant = std::sqrt(ff.modulus2());
  if (invariant <= 1e-12 * n2) {
    p.is_null = true;
    p.canonical = F;
    return p;
  }
  p.phase = principal_phase(ff.beta, ff.alpha);
  p.magnitude = std::sqrt(invariant);
  p.canonical = F * phase_factor(-0.5 * p.phase);
  return p;
}

}  // namespace stf
