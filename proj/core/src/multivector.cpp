#include "stafields/multivector.hpp"

namespace stf {

int dominant_grade(const Multivector& a) {
  double best = 0;
  int grade = 0;
  for (int i = 0; i < 16; ++i) {
    const double x = a[i] < 0 ? -a[i] : a[i];
    if (x > best) {
      best = x;
      grade = blade_grade(i);
    }
  }
  if (best == 0.0) return 0;
  for (int i = 0; i < 16; ++i) {
    const double x = a[i] < 0 ? -a[i] : a[i];
    if (blade_grade(i) != grade && x > 1e-12 * best)
      throw std::invalid_argument(
          "dominant_grade: multivector is not homogeneous");
  }
  return grade;
}

Multivector dot(const Multivector& a, const Multivector& b) {
  return dot(a, dominant_grade(a), b, dominant_grade(b));
}

Multivector wedge(const Multivector& a, const Multivector& b) {
  return wedge(a, dominant_grade(a), b, dominant_grade(b));
}

}  // namespace stf
