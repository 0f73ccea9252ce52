#pragma once

// Cycle-averaged spin densities of monochromatic fields.
//
// A monochromatic real field E(t) = Re[E_bar e^{-i omega t}] is described by
// its complex 3-vector envelope E_bar.  The scalar imaginary i used here is
// plain bookkeeping for the time dependence and is unrelated to the
// geometric pseudoscalar; results are returned as real relative vectors.
// With this convention cycle averages obey <E(t) x dE/dt> =
// (omega/2) Im(conj(E_bar) x E_bar), which ties the formulas below to the
// instantaneous rotation of the field vectors.

#include <array>
#include <complex>

#include "stafields/medium.hpp"
#include "stafields/multivector.hpp"

namespace stf {

using Complex3 = std::array<std::complex<double>, 3>;

// Dual-symmetric spin density Im(eps conj(E) x E + mu conj(H) x H) / (4 omega).
Multivector em_spin_density(const Complex3& E, const Complex3& H, double omega,
                            const EmMedium& medium);

// Electric-biased variant eps Im(conj(E) x E) / (2 omega); agrees with the
// dual-symmetric form on self-dual (circularly polarized) waves and differs
// on fields whose electric and magnetic rotations are unbalanced.
Multivector em_spin_density_electric(const Complex3& E, double omega,
                                     const EmMedium& medium);

// Cycle-averaged acoustic spin density rho Im(conj(v) x v) / (4 omega) for a
// monochromatic velocity envelope.
Multivector ac_spin_cycle_avg(const Complex3& v, double omega, double rho);

}  // namespace stf
