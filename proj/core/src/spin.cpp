#include "stafields/spin.hpp"

#include <stdexcept>

#include "stafields/frame.hpp"

namespace stf {

namespace {

// Imaginary part of conj(a) x a.  The product is purely imaginary
// componentwise; its imaginary part measures the rotation of the real field
// vector over a cycle.
std::array<double, 3> imag_self_cross(const Complex3& a) {
  const Complex3 c = {std::conj(a[0]), std::conj(a[1]), std::conj(a[2])};
  return {
      std::imag(c[1] * a[2] - c[2] * a[1]),
      std::imag(c[2] * a[0] - c[0] * a[2]),
      std::imag(c[0] * a[1] - c[1] * a[0]),
  };
}

void require_positive_omega(double omega, const char* what) {
  if (!(omega > 0.0))
    throw std::invalid_argument(std::string(what) +
                                ": omega must be positive");
}

}  // namespace

Multivector em_spin_density(const Complex3& E, const Complex3& H, double omega,
                            const EmMedium& medium) {
  medium.validate();
  require_positive_omega(omega, "em_spin_density");
  const std::array<double, 3> se = imag_self_cross(E);
  const std::array<double, 3> sh = imag_self_cross(H);
  const double k = 1.0 / (4.0 * omega);
  return relvec(k * (medium.epsilon * se[0] + medium.mu * sh[0]),
                k * (medium.epsilon * se[1] + medium.mu * sh[1]),
                k * (medium.epsilon * se[2] + medium.mu * sh[2]));
}

Multivector em_spin_density_electric(const Complex3& E, double omega,
                                     const EmMedium& medium) {
  medium.validate();
  require_positive_omega(omega, "em_spin_density_electric");
  const std::array<double, 3> se = imag_self_cross(E);
  const double k = medium.epsilon / (2.0 * omega);
  return relvec(k * se[0], k * se[1], k * se[2]);
}

Multivector ac_spin_cycle_avg(const Complex3& v, double omega, double rho) {
  require_positive_omega(omega, "ac_spin_cycle_avg");
  if (!(rho > 0.0))
    throw std::invalid_argument("ac_spin_cycle_avg: rho must be positive");
  const std::array<double, 3> sv = imag_self_cross(v);
  const double k = rho / (4.0 * omega);
  return relvec(k * sv[0], k * sv[1], k * sv[2]);
}

}  // namespace stf
