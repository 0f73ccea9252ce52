#pragma once

// Rotors of the spacetime algebra: even-graded unit multivectors applied by
// the half-angle sandwich R a R~.  Planes with B*B = +1 generate hyperbolic
// rotations (boosts); planes with B*B = -1 generate elliptic rotations.

#include "stafields/multivector.hpp"

namespace stf {

struct Rotor {
  Multivector value = Multivector::scalar(1.0);

  Multivector reversed() const { return reverse(value); }
};

// exp(theta*B/2) for a homogeneous grade-2 B with B*B = +1 or -1 (within
// tol).  The full-angle exponential exp(theta*B) equals
// cosh(theta) + B sinh(theta) in the hyperbolic case and
// cos(theta) + B sin(theta) in the elliptic case; the returned rotor carries
// the half angle so that sandwich(R, a) rotates a by theta.
Rotor rotor_exp(const Multivector& B, double theta, double tol = 1e-12);

// R a R~.
Multivector sandwich(const Rotor& R, const Multivector& a);

// True if R R~ = 1 within tol and R is even-graded.
bool is_unit_rotor(const Rotor& R, double tol = 1e-12);

}  // namespace stf
