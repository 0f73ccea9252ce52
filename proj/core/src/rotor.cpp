#include "stafields/rotor.hpp"

#include <cmath>

namespace stf {

Rotor rotor_exp(const Multivector& B, double theta, double tol) {
  const double scale = 1.0 + linf_norm(B);
  if (!is_homogeneous(B, 2, tol * scale))
    throw std::invalid_argument("rotor_exp: plane must be grade-2");
  const Multivector sq = B * B;
  const double s = scalar_part(sq);
  // B*B must be a pure scalar of magnitude 1: B a unit simple plane.
  if (linf_norm(sq - Multivector::scalar(s)) > tol * (1.0 + std::abs(s)))
    throw std::invalid_argument("rotor_exp: plane must be simple (B*B scalar)");
  const double half = 0.5 * theta;
  Rotor r;
  if (std::abs(s - 1.0) <= tol) {
    r.value = Multivector::scalar(std::cosh(half)) + B * std::sinh(half);
  } else if (std::abs(s + 1.0) <= tol) {
    r.value = Multivector::scalar(std::cos(half)) + B * std::sin(half);
  } else {
    throw std::invalid_argument("rotor_exp: plane must satisfy B*B = +/-1");
  }
  return r;
}

Multivector sandwich(const Rotor& R, const Multivector& a) {
  return R.value * a * reverse(R.value);
}

bool is_unit_rotor(const Rotor& R, double tol) {
  for (int i = 0; i < 16; ++i)
    if (blade_grade(i) % 2 != 0 && std::abs(R.value[i]) > tol) return false;
  return approx_equal(R.value * reverse(R.value), Multivector::scalar(1.0),
                      tol);
}

}  // namespace stf
