#pragma once

// Material constants for the electromagnetic theory.  The wave speed and
// impedance are stored explicitly (configs may carry all four numbers) and
// validated for consistency with the permittivity and permeability.

#include <cmath>
#include <stdexcept>

namespace stf {

struct EmMedium {
  double epsilon = 0.0;  // permittivity (F/m)
  double mu = 0.0;       // permeability (H/m)
  double c = 0.0;        // wave speed 1/sqrt(epsilon mu) (m/s)
  double zeta = 0.0;     // wave impedance mu c (Ohm)
  // Relative weights of the electric and magnetic potential contributions;
  // symmetrized to 1/2 each for vacuum wave propagation.
  double lambda_minus = 0.5;
  double lambda_plus = 0.5;

  static EmMedium make(double epsilon, double mu, double lambda_minus = 0.5,
                       double lambda_plus = 0.5) {
    if (!(epsilon > 0.0) || !(mu > 0.0))
      throw std::invalid_argument("EmMedium: epsilon and mu must be positive");
    EmMedium m;
    m.epsilon = epsilon;
    m.mu = mu;
    m.c = 1.0 / std::sqrt(epsilon * mu);
    m.zeta = mu * m.c;
    m.lambda_minus = lambda_minus;
    m.lambda_plus = lambda_plus;
    m.validate();
    return m;
  }

  // SI vacuum constants.
  static EmMedium vacuum() {
    return make(8.8541878128e-12, 1.25663706212e-6);
  }

  void validate() const {
    if (!(epsilon > 0.0) || !(mu > 0.0) || !(c > 0.0) || !(zeta > 0.0))
      throw std::invalid_argument("EmMedium: constants must be positive");
    const double c_ref = 1.0 / std::sqrt(epsilon * mu);
    if (std::abs(c - c_ref) > 1e-12 * c_ref)
      throw std::invalid_argument("EmMedium: c inconsistent with epsilon, mu");
    if (std::abs(zeta - mu * c) > 1e-12 * zeta)
      throw std::invalid_argument("EmMedium: zeta inconsistent with mu, c");
    if (!(lambda_minus > 0.0) || !(lambda_plus > 0.0))
      throw std::invalid_argument("EmMedium: couplings must be positive");
  }
};

}  // namespace stf
