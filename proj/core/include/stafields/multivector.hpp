#pragma once

// Dense multivectors over the real spacetime algebra Cl(1,3) with metric
// signature (+,-,-,-).  A multivector is stored as 16 doubles in the
// canonical blade order
//
//   { 1;  g0, g1, g2, g3;  g01, g02, g03, g12, g13, g23;
//     Ig0, Ig1, Ig2, Ig3;  I }
//
// where gk are the orthonormal frame vectors, gij = gi gj, and
// I = g0 g1 g2 g3 is the unit pseudoscalar (I*I = -1).  The grade-3 basis
// elements are oriented as I times a frame vector, which keeps duality maps
// sign-transparent.
//
// Every product sign in the algebra is derived at compile time from a single
// blade-product routine on bit masks; no sign is ever entered by hand.

#include <array>
#include <bit>
#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace stf {

inline constexpr int kBladeCount = 16;

// Canonical basis blades as bit masks: bit m set means the generator gm is a
// factor of the blade's ascending monomial.
inline constexpr std::array<unsigned, 16> kBladeMask = {
    0b0000,                                       // 1
    0b0001, 0b0010, 0b0100, 0b1000,               // g0 g1 g2 g3
    0b0011, 0b0101, 0b1001, 0b0110, 0b1010, 0b1100,  // g01 g02 g03 g12 g13 g23
    0b1110, 0b1101, 0b1011, 0b0111,               // Ig0 Ig1 Ig2 Ig3
    0b1111,                                       // I
};

inline constexpr std::array<int, 16> kBladeGrade = {0, 1, 1, 1, 1, 2, 2, 2,
                                                    2, 2, 2, 3, 3, 3, 3, 4};

inline constexpr std::array<const char*, 16> kBladeName = {
    "1",   "g0",  "g1",  "g2",  "g3",  "g01", "g02", "g03",
    "g12", "g13", "g23", "Ig0", "Ig1", "Ig2", "Ig3", "I"};

namespace detail {

// Metric of the orthonormal generators: g0*g0 = +1, gk*gk = -1.
constexpr int metric_sign(unsigned mu) { return mu == 0 ? +1 : -1; }

// Sign of monomial(a) * monomial(b) relative to monomial(a XOR b), where
// monomial(m) is the ascending ordered product of the generators in mask m.
// Generators of b are absorbed left-to-right; each one anticommutes past the
// accumulated generators with larger index and contracts on the metric when
// already present.
constexpr int monomial_product_sign(unsigned a, unsigned b) {
  int sign = 1;
  unsigned acc = a;
  for (unsigned j = 0; j < 4; ++j) {
    if (!(b & (1u << j))) continue;
    const unsigned higher = acc & ~((2u << j) - 1u);
    if (std::popcount(higher) & 1) sign = -sign;
    if (acc & (1u << j)) {
      sign *= metric_sign(j);
      acc &= ~(1u << j);
    } else {
      acc |= (1u << j);
    }
  }
  return sign;
}

constexpr std::array<int, 16> make_mask_to_index() {
  std::array<int, 16> inv{};
  for (int i = 0; i < 16; ++i) inv[kBladeMask[static_cast<unsigned>(i)]] = i;
  return inv;
}

inline constexpr std::array<int, 16> kMaskToIndex = make_mask_to_index();

// Orientation of each canonical blade on its ascending monomial:
// blade_i = orient_i * monomial(mask_i).  The grade-3 blades are defined as
// I * g_mu, so their orientation falls out of the monomial product.
constexpr std::array<int, 16> make_orientations() {
  std::array<int, 16> o{};
  for (int i = 0; i < 16; ++i) o[static_cast<unsigned>(i)] = 1;
  for (unsigned mu = 0; mu < 4; ++mu)
    o[11 + mu] = monomial_product_sign(0b1111u, 1u << mu);
  return o;
}

inline constexpr std::array<int, 16> kBladeOrient = make_orientations();

struct CayleyCell {
  std::uint8_t index;
  std::int8_t sign;
};

constexpr std::array<std::array<CayleyCell, 16>, 16> make_cayley() {
  std::array<std::array<CayleyCell, 16>, 16> t{};
  for (int i = 0; i < 16; ++i) {
    for (int j = 0; j < 16; ++j) {
      const unsigned mi = kBladeMask[static_cast<unsigned>(i)];
      const unsigned mj = kBladeMask[static_cast<unsigned>(j)];
      const int k = kMaskToIndex[mi ^ mj];
      int s = kBladeOrient[static_cast<unsigned>(i)] *
              kBladeOrient[static_cast<unsigned>(j)] *
              monomial_product_sign(mi, mj) *
              kBladeOrient[static_cast<unsigned>(k)];
      t[static_cast<unsigned>(i)][static_cast<unsigned>(j)] =
          CayleyCell{static_cast<std::uint8_t>(k), static_cast<std::int8_t>(s)};
    }
  }
  return t;
}

inline constexpr std::array<std::array<CayleyCell, 16>, 16> kCayley =
    make_cayley();

// Per-grade signs of the three involutions.
inline constexpr std::array<int, 5> kReverseSign = {+1, +1, -1, -1, +1};
inline constexpr std::array<int, 5> kInvoluteSign = {+1, -1, +1, -1, +1};

}  // namespace detail

class Multivector {
 public:
  constexpr Multivector() : c_{} {}

  static constexpr Multivector scalar(double s) {
    Multivector m;
    m.c_[0] = s;
    return m;
  }

  // Basis blade by canonical index, optionally scaled.
  static constexpr Multivector blade(int index, double coeff = 1.0) {
    Multivector m;
    m.c_[static_cast<unsigned>(index)] = coeff;
    return m;
  }

  // Frame vector g_mu, mu in {0,1,2,3}.
  static constexpr Multivector gamma(int mu) { return blade(1 + mu); }

  static constexpr Multivector pseudoscalar() { return blade(15); }

  // Grade-1 vector from contravariant components: sum_mu a^mu g_mu.
  static constexpr Multivector vector(double a0, double a1, double a2,
                                      double a3) {
    Multivector m;
    m.c_[1] = a0;
    m.c_[2] = a1;
    m.c_[3] = a2;
    m.c_[4] = a3;
    return m;
  }

  constexpr double& operator[](int i) { return c_[static_cast<unsigned>(i)]; }
  constexpr double operator[](int i) const {
    return c_[static_cast<unsigned>(i)];
  }

  constexpr const std::array<double, 16>& coeffs() const { return c_; }
  constexpr std::array<double, 16>& coeffs() { return c_; }

  constexpr Multivector& operator+=(const Multivector& o) {
    for (int i = 0; i < 16; ++i) c_[static_cast<unsigned>(i)] += o[i];
    return *this;
  }
  constexpr Multivector& operator-=(const Multivector& o) {
    for (int i = 0; i < 16; ++i) c_[static_cast<unsigned>(i)] -= o[i];
    return *this;
  }
  constexpr Multivector& operator*=(double s) {
    for (auto& x : c_) x *= s;
    return *this;
  }

  friend constexpr Multivector operator+(Multivector a, const Multivector& b) {
    a += b;
    return a;
  }
  friend constexpr Multivector operator-(Multivector a, const Multivector& b) {
    a -= b;
    return a;
  }
  friend constexpr Multivector operator-(const Multivector& a) {
    Multivector r;
    for (int i = 0; i < 16; ++i) r[i] = -a[i];
    return r;
  }
  friend constexpr Multivector operator*(Multivector a, double s) {
    a *= s;
    return a;
  }
  friend constexpr Multivector operator*(double s, Multivector a) {
    a *= s;
    return a;
  }
  friend constexpr Multivector operator/(Multivector a, double s) {
    a *= 1.0 / s;
    return a;
  }

  // Geometric product.  Accumulation order is fixed (row-major over the
  // Cayley table) so results are bit-identical across runs and platforms
  // with the same FP environment.
  friend constexpr Multivector operator*(const Multivector& a,
                                         const Multivector& b) {
    Multivector r;
    for (int i = 0; i < 16; ++i) {
      const double ai = a[i];
      if (ai == 0.0) continue;
      for (int j = 0; j < 16; ++j) {
        const auto cell = detail::kCayley[static_cast<unsigned>(i)]
                                         [static_cast<unsigned>(j)];
        r[cell.index] += (cell.sign > 0 ? ai : -ai) * b[j];
      }
    }
    return r;
  }

  friend constexpr bool operator==(const Multivector& a,
                                   const Multivector& b) {
    for (int i = 0; i < 16; ++i)
      if (a[i] != b[i]) return false;
    return true;
  }

 private:
  std::array<double, 16> c_;
};

inline constexpr int blade_grade(int index) {
  return kBladeGrade[static_cast<unsigned>(index)];
}

// --- Grade structure ------------------------------------------------------

inline constexpr Multivector grade_project(const Multivector& a, int k) {
  if (k < 0 || k > 4) throw std::invalid_argument("grade_project: grade must be in 0..4");
  Multivector r;
  for (int i = 0; i < 16; ++i)
    if (blade_grade(i) == k) r[i] = a[i];
  return r;
}

inline constexpr double scalar_part(const Multivector& a) { return a[0]; }

inline constexpr Multivector reverse(const Multivector& a) {
  Multivector r;
  for (int i = 0; i < 16; ++i)
    r[i] = detail::kReverseSign[static_cast<unsigned>(blade_grade(i))] * a[i];
  return r;
}

inline constexpr Multivector grade_involution(const Multivector& a) {
  Multivector r;
  for (int i = 0; i < 16; ++i)
    r[i] = detail::kInvoluteSign[static_cast<unsigned>(blade_grade(i))] * a[i];
  return r;
}

inline constexpr Multivector clifford_conjugate(const Multivector& a) {
  return reverse(grade_involution(a));
}

// --- Duality ----------------------------------------------------------------

// Right-multiplication convention: dual(a) = a I.  With I*I = -1 the inverse
// is undual(a) = -a I, and dual(dual(a)) = -a.
inline constexpr Multivector dual(const Multivector& a) {
  return a * Multivector::pseudoscalar();
}

inline constexpr Multivector undual(const Multivector& a) {
  return -(a * Multivector::pseudoscalar());
}

// --- Norms and comparisons --------------------------------------------------

// Scalar magnitude <a~ a>_0 (can be negative in a mixed-signature algebra).
inline constexpr double scalar_norm2(const Multivector& a) {
  return scalar_part(reverse(a) * a);
}

inline double coeff_norm(const Multivector& a) {
  double s = 0;
  for (int i = 0; i < 16; ++i) s += a[i] * a[i];
  return std::sqrt(s);
}

inline constexpr double linf_norm(const Multivector& a) {
  double m = 0;
  for (int i = 0; i < 16; ++i) {
    const double x = a[i] < 0 ? -a[i] : a[i];
    if (x > m) m = x;
  }
  return m;
}

inline constexpr bool approx_equal(const Multivector& a, const Multivector& b,
                                   double tol) {
  return linf_norm(a - b) <= tol;
}

inline constexpr bool is_homogeneous(const Multivector& a, int k,
                                     double tol = 1e-12) {
  for (int i = 0; i < 16; ++i)
    if (blade_grade(i) != k && !(a[i] < tol && a[i] > -tol)) return false;
  return true;
}

// --- Derived products --------------------------------------------------------

// Grade-lowering inner product <a b>_{|r-s|} for homogeneous a (grade r) and
// b (grade s).  Inputs must be homogeneous; use grade_project on mixed-grade
// values first.
inline Multivector dot(const Multivector& a, int ga, const Multivector& b,
                       int gb) {
  return grade_project(a * b, ga > gb ? ga - gb : gb - ga);
}

// Grade-raising outer product <a b>_{r+s} for homogeneous inputs.
inline Multivector wedge(const Multivector& a, int ga, const Multivector& b,
                         int gb) {
  const int g = ga + gb;
  if (g > 4) return Multivector{};
  return grade_project(a * b, g);
}

// Infers grades from content; throws if either input is not homogeneous
// within 1e-12 of its dominant grade.
int dominant_grade(const Multivector& a);
Multivector dot(const Multivector& a, const Multivector& b);
Multivector wedge(const Multivector& a, const Multivector& b);

// Commutator product (ab - ba)/2.
inline constexpr Multivector commutator(const Multivector& a,
                                        const Multivector& b) {
  return (a * b - b * a) * 0.5;
}

}  // namespace stf
