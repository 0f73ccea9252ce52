#pragma once

// Polar decompositions for the three phase-bearing sectors of the algebra:
// complex scalars alpha + beta I, complex 4-vectors z = a + b I, and
// bivectors F.  Each sector factors a global dual phase exp(I phi) out of
// the invariant contraction (z~z or F*F), leaving a canonical representative
// whose contraction is a pure real scalar.  Null inputs (vanishing
// invariant) have no preferred phase and are returned unchanged.

#include "stafields/multivector.hpp"

namespace stf {

// A scalar + pseudoscalar pair, the commuting complex unit of the algebra.
struct ComplexScalar {
  double alpha = 0.0;  // scalar part
  double beta = 0.0;   // pseudoscalar coefficient

  static ComplexScalar from_multivector(const Multivector& m,
                                        double tol = 1e-12);
  Multivector to_multivector() const;
  ComplexScalar conjugate() const { return {alpha, -beta}; }
  double modulus2() const { return alpha * alpha + beta * beta; }
};

// exp(I theta) = cos(theta) + I sin(theta).
Multivector phase_factor(double theta);

enum class PolarSector { kScalar, kVector, kBivector };

struct PolarForm {
  PolarSector sector = PolarSector::kScalar;
  Multivector canonical;   // phase-free part (input itself when null)
  double phase = 0.0;      // principal value in (-pi, pi]; 0 when null
  double magnitude = 0.0;  // >= 0, linear in the input; 0 when null
  bool is_null = false;

  // canonical * exp(I phase) in the scalar sector, canonical *
  // exp(I phase/2) in the vector/bivector sectors; reproduces the input.
  Multivector reconstruct() const;
};

// Complex polar form: magnitude sqrt(alpha^2+beta^2), phase atan2(beta,
// alpha), canonical the pure-scalar magnitude.  Zero input is null.
PolarForm scalar_polar(const ComplexScalar& z);

// Polar form of z = a + bI (grades {1,3}): z~z = (a.a - b.b) + 2(a.b) I,
// phase atan2(<z~z>_4, <z~z>_0), canonical z0 = z exp(-I phase/2) with
// z0~z0 a nonnegative real scalar.  Null when |z~z| <= 1e-12 ||z||^2
// (Euclidean coefficient norm).
PolarForm vector_polar(const Multivector& z, double tol = 1e-12);

// Polar form of a bivector: F*F = (|A|^2-|B|^2) + 2(A.B) I for any relative
// split F = A + B I; canonical F0 = F exp(-I phase/2) with F0*F0 a real
// scalar.  Null (e.g. circular polarization) when |F*F| <= 1e-12 ||F||^2.
PolarForm bivector_polar(const Multivector& F, double tol = 1e-12);

}  // namespace stf
