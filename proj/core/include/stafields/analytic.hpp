#pragma once

// Closed-form multivector fields over spacetime with exact differentiation.
//
// A field is a sum of terms of the shape
//
//   pre * [r] * post * (cos(theta) + I sin(theta)),
//   theta(x) = sum_mu w_mu x^mu + phi,
//
// where pre/post are constant multivectors, r = x^mu gamma_mu is the
// position vector (present only when with_r is set), and x^mu are the
// contravariant coordinates (ct, x, y, z).  The family is closed under
// coordinate derivatives:
//
//   d_mu term = pre gamma_mu post E            (from the r factor)
//             + pre [r] (post I w_mu) E        (from the phase),
//
// so the vector derivative (Dirac operator) with the reciprocal basis
// gamma^0 = gamma0, gamma^k = -gamma_k, and the d'Alembertian
// d^2_ct - sum_k d^2_k, are all evaluated without truncation error.
// Real-valued waves are represented as half-sums of conjugate phases:
// A cos(theta) = A/2 e^{I theta} + A/2 e^{-I theta}.
//
// Phase coefficients w_mu are plain per-coordinate values; any metric signs
// (e.g. the Minkowski k.r = k^0 x^0 - kvec.xvec) are the caller's business.

#include <array>
#include <vector>

#include "stafields/multivector.hpp"

namespace stf {

using SpacetimePoint = std::array<double, 4>;  // (ct, x, y, z)

class AnalyticField {
 public:
  struct Term {
    Multivector pre;
    bool with_r = false;
    Multivector post;
    std::array<double, 4> w{};  // phase gradient, per coordinate
    double phi = 0.0;           // phase offset
  };

  AnalyticField() = default;

  // --- constructors -------------------------------------------------------

  static AnalyticField zero() { return AnalyticField{}; }
  static AnalyticField constant(const Multivector& A);
  // A * r * B
  static AnalyticField linear(const Multivector& A, const Multivector& B);
  // A * exp(I (w.x + phi)) * B
  static AnalyticField exponential(const Multivector& A,
                                   const std::array<double, 4>& w, double phi,
                                   const Multivector& B =
                                       Multivector::scalar(1.0));
  // A cos(w.x + phi), A sin(w.x + phi): real trigonometric waves.
  static AnalyticField cosine(const Multivector& A,
                              const std::array<double, 4>& w, double phi);
  static AnalyticField sine(const Multivector& A,
                            const std::array<double, 4>& w, double phi);
  // A * r * B * exp(I (w.x + phi)): position-linear modulated wave.
  static AnalyticField linear_exponential(const Multivector& A,
                                          const std::array<double, 4>& w,
                                          double phi,
                                          const Multivector& B =
                                              Multivector::scalar(1.0));

  // --- algebra -------------------------------------------------------------

  AnalyticField& operator+=(const AnalyticField& o);
  friend AnalyticField operator+(AnalyticField a, const AnalyticField& b) {
    a += b;
    return a;
  }
  friend AnalyticField operator-(const AnalyticField& a,
                                 const AnalyticField& b) {
    return a + b.scaled(-1.0);
  }
  AnalyticField scaled(double s) const;
  // Pointwise A * f(x) and f(x) * A.
  AnalyticField left_mul(const Multivector& A) const;
  AnalyticField right_mul(const Multivector& A) const;

  // --- calculus ------------------------------------------------------------

  // d/dx^mu, exact.
  AnalyticField partial(int mu) const;
  // Dirac operator: sum_mu gamma^mu d_mu.
  AnalyticField grad() const;
  // d^2_ct - sum_k d^2_k (signature Laplacian), exact.
  AnalyticField dalembertian() const;

  // --- evaluation ----------------------------------------------------------

  Multivector value(const SpacetimePoint& x) const;

  std::size_t term_count() const { return terms_.size(); }
  const std::vector<Term>& terms() const { return terms_; }

 private:
  void push(Term t);  // drops exact-zero terms
  std::vector<Term> terms_;
};

// Position vector r = x^mu gamma_mu as a multivector.
Multivector position_vector(const SpacetimePoint& x);

}  // namespace stf
