#include "stafields/analytic.hpp"

#include <cmath>

namespace stf {

namespace {

bool exactly_zero(const Multivector& m) {
  for (int i = 0; i < 16; ++i)
    if (m[i] != 0.0) return false;
  return true;
}

}  // namespace

Multivector position_vector(const SpacetimePoint& x) {
  return Multivector::vector(x[0], x[1], x[2], x[3]);
}

void AnalyticField::push(Term t) {
  if (exactly_zero(t.pre) || exactly_zero(t.post)) return;
  terms_.push_back(std::move(t));
}

AnalyticField AnalyticField::constant(const Multivector& A) {
  AnalyticField f;
  f.push(Term{A, false, Multivector::scalar(1.0), {}, 0.0});
  return f;
}

AnalyticField AnalyticField::linear(const Multivector& A,
                                    const Multivector& B) {
  AnalyticField f;
  f.push(Term{A, true, B, {}, 0.0});
  return f;
}

AnalyticField AnalyticField::exponential(const Multivector& A,
                                         const std::array<double, 4>& w,
                                         double phi, const Multivector& B) {
  AnalyticField f;
  f.push(Term{A, false, B, w, phi});
  return f;
}

AnalyticField AnalyticField::cosine(const Multivector& A,
                                    const std::array<double, 4>& w,
                                    double phi) {
  // A cos = A/2 e^{I theta} + A/2 e^{-I theta}
  AnalyticField f;
  f.push(Term{A, false, Multivector::scalar(0.5), w, phi});
  f.push(Term{A, false, Multivector::scalar(0.5),
              {-w[0], -w[1], -w[2], -w[3]}, -phi});
  return f;
}

AnalyticField AnalyticField::sine(const Multivector& A,
                                  const std::array<double, 4>& w,
                                  double phi) {
  // A sin = -A I/2 e^{I theta} + A I/2 e^{-I theta}
  AnalyticField f;
  f.push(Term{A, false, Multivector::pseudoscalar() * -0.5, w, phi});
  f.push(Term{A, false, Multivector::pseudoscalar() * 0.5,
              {-w[0], -w[1], -w[2], -w[3]}, -phi});
  return f;
}

AnalyticField AnalyticField::linear_exponential(const Multivector& A,
                                                const std::array<double, 4>& w,
                                                double phi,
                                                const Multivector& B) {
  AnalyticField f;
  f.push(Term{A, true, B, w, phi});
  return f;
}

AnalyticField& AnalyticField::operator+=(const AnalyticField& o) {
  for (const auto& t : o.terms_) push(t);
  return *this;
}

AnalyticField AnalyticField::scaled(double s) const {
  AnalyticField f;
  for (auto t : terms_) {
    t.pre *= s;
    f.push(std::move(t));
  }
  return f;
}

AnalyticField AnalyticField::left_mul(const Multivector& A) const {
  AnalyticField f;
  for (auto t : terms_) {
    t.pre = A * t.pre;
    f.push(std::move(t));
  }
  return f;
}

AnalyticField AnalyticField::right_mul(const Multivector& A) const {
  // value() keeps E(theta) rightmost, and E(theta) commutes with the even
  // part of A while conjugating against the odd part: E(theta) A_odd =
  // A_odd E(-theta).  Folding A into post therefore splits each term in
  // two, the odd half taking the conjugate phase.
  Multivector even, odd;
  for (int i = 0; i < kBladeCount; ++i) {
    if (blade_grade(i) % 2 == 0)
      even[i] = A[i];
    else
      odd[i] = A[i];
  }
  AnalyticField f;
  for (const auto& t : terms_) {
    if (!exactly_zero(even))
      f.push(Term{t.pre, t.with_r, t.post * even, t.w, t.phi});
    if (!exactly_zero(odd))
      f.push(Term{t.pre, t.with_r, t.post * odd,
                  {-t.w[0], -t.w[1], -t.w[2], -t.w[3]}, -t.phi});
  }
  return f;
}

AnalyticField AnalyticField::partial(int mu) const {
  if (mu < 0 || mu > 3)
    throw std::invalid_argument("AnalyticField::partial: mu must be in 0..3");
  AnalyticField f;
  for (const auto& t : terms_) {
    if (t.with_r) {
      // derivative of the position factor
      f.push(Term{t.pre * Multivector::gamma(mu), false, t.post, t.w, t.phi});
    }
    if (t.w[static_cast<unsigned>(mu)] != 0.0) {
      // derivative of the phase: multiplies by I w_mu next to E(theta)
      f.push(Term{t.pre, t.with_r,
                  t.post * Multivector::pseudoscalar() *
                      t.w[static_cast<unsigned>(mu)],
                  t.w, t.phi});
    }
  }
  return f;
}

AnalyticField AnalyticField::grad() const {
  AnalyticField f;
  for (int mu = 0; mu < 4; ++mu) {
    const double sign = (mu == 0) ? 1.0 : -1.0;  // reciprocal basis
    f += partial(mu).left_mul(Multivector::gamma(mu) * sign);
  }
  return f;
}

AnalyticField AnalyticField::dalembertian() const {
  AnalyticField f;
  for (int mu = 0; mu < 4; ++mu) {
    const double sign = (mu == 0) ? 1.0 : -1.0;
    f += partial(mu).partial(mu).scaled(sign);
  }
  return f;
}

Multivector AnalyticField::value(const SpacetimePoint& x) const {
  Multivector acc;
  const Multivector r = position_vector(x);
  for (const auto& t : terms_) {
    Multivector v = t.pre;
    if (t.with_r) v = v * r;
    v = v * t.post;
    double theta = t.phi;
    for (int mu = 0; mu < 4; ++mu)
      theta += t.w[static_cast<unsigned>(mu)] * x[static_cast<unsigned>(mu)];
    if (theta != 0.0 || t.w != std::array<double, 4>{}) {
      Multivector E;
      E[0] = std::cos(theta);
      E[15] = std::sin(theta);
      v = v * E;
    }
    acc += v;
  }
  return acc;
}

}  // namespace stf
