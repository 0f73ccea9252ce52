#include "stafields/frame.hpp"

#include <cmath>

namespace stf {

Frame Frame::from_timelike(const Multivector& g0, double tol) {
  if (!is_homogeneous(g0, 1, tol))
    throw std::invalid_argument("Frame: gamma0 must be grade-1");
  const Multivector sq = g0 * g0;
  if (std::abs(scalar_part(sq) - 1.0) > tol)
    throw std::invalid_argument("Frame: gamma0 must square to +1");
  Frame f;
  f.gamma0 = g0;
  return f;
}

Multivector sigma(int k) {
  if (k < 1 || k > 3) throw std::invalid_argument("sigma: k must be in 1..3");
  return Multivector::gamma(k) * Multivector::gamma(0);
}

Multivector relvec(double x, double y, double z) {
  return sigma(1) * x + sigma(2) * y + sigma(3) * z;
}

Multivector relvec(const std::array<double, 3>& v) {
  return relvec(v[0], v[1], v[2]);
}

bool is_relative_vector(const Multivector& a, double tol) {
  // sigma_k = g_k g_0 occupies the timelike bivector blades g0k.
  for (int i = 0; i < 16; ++i) {
    const bool allowed = (i >= 5 && i <= 7);
    if (!allowed && std::abs(a[i]) > tol) return false;
  }
  return true;
}

std::array<double, 3> relvec_components(const Multivector& a, double tol) {
  if (!is_relative_vector(a, tol))
    throw std::invalid_argument(
        "relvec_components: input is not a relative 3-vector");
  std::array<double, 3> v{};
  for (int k = 1; k <= 3; ++k) {
    const Multivector s = sigma(k);
    // sigma_k has a single nonzero canonical coefficient; project on it.
    for (int i = 5; i <= 7; ++i)
      if (s[i] != 0.0) v[static_cast<unsigned>(k - 1)] = a[i] / s[i];
  }
  return v;
}

FrameSplit frame_split(const Multivector& a, const Frame& f) {
  if (!is_homogeneous(a, 1, 1e-12 * (1.0 + linf_norm(a))))
    throw std::invalid_argument("frame_split: input must be grade-1");
  const Multivector prod = a * f.gamma0;
  return FrameSplit{scalar_part(prod), grade_project(prod, 2)};
}

Multivector frame_join(double time, const Multivector& spatial,
                       const Frame& f) {
  return (Multivector::scalar(time) + spatial) * f.gamma0;
}

Multivector cross3(const Multivector& u, const Multivector& v) {
  if (!is_relative_vector(u, 1e-12 * (1.0 + linf_norm(u))) ||
      !is_relative_vector(v, 1e-12 * (1.0 + linf_norm(v))))
    throw std::invalid_argument("cross3: inputs must be relative 3-vectors");
  // The relative wedge of two relative vectors is the grade-2 (spatial
  // bivector) part of their product; the cross product is its undual
  // u x v = -I (u ^ v).
  return undual(grade_project(u * v, 2));
}

double dot3(const Multivector& u, const Multivector& v) {
  const auto a = relvec_components(u, 1e-9 * (1.0 + linf_norm(u)));
  const auto b = relvec_components(v, 1e-9 * (1.0 + linf_norm(v)));
  return a[0] * b[0] + a[1] * b[1] + a[2] * b[2];
}

}  // namespace stf
