#pragma once

// Frame-dependent (paravector) views of spacetime quantities.  A frame is
// fixed by a unit timelike vector gamma0; the relative basis it induces is
// sigma_k = g_k g_0, which squares to +1 and satisfies
// sigma_1 sigma_2 sigma_3 = I.  A grade-1 momentum p then splits as
// p = (E/c + pvec) g_0 with pvec = sum_k p_k sigma_k.

#include <array>
#include <stdexcept>

#include "stafields/multivector.hpp"

namespace stf {

struct Frame {
  Multivector gamma0 = Multivector::gamma(0);

  // Validated constructor for non-standard (e.g. boosted) frames.
  static Frame from_timelike(const Multivector& g0, double tol = 1e-12);
};

// Relative basis vector sigma_k = g_k g_0 of the standard frame, k in 1..3.
Multivector sigma(int k);

// x sigma_1 + y sigma_2 + z sigma_3.
Multivector relvec(double x, double y, double z);
Multivector relvec(const std::array<double, 3>& v);

// True if a lies in span{sigma_1, sigma_2, sigma_3} within tol.
bool is_relative_vector(const Multivector& a, double tol = 1e-12);

// Components of a relative 3-vector on {sigma_k}; rejects other content.
std::array<double, 3> relvec_components(const Multivector& a,
                                        double tol = 1e-12);

// Splits a grade-1 vector against the frame: returns (a . g0, a ^ g0), so
// that a = (scalar + relative) g0 exactly.  Rejects non-grade-1 input.
struct FrameSplit {
  double time;          // a . gamma0
  Multivector spatial;  // a ^ gamma0, a relative 3-vector
};
FrameSplit frame_split(const Multivector& a, const Frame& f = Frame{});

// Reassembles (s + v) gamma0 from a split.
Multivector frame_join(double time, const Multivector& spatial,
                       const Frame& f = Frame{});

// Gibbs cross product u x v = -I (u ^ v) for relative 3-vectors.
Multivector cross3(const Multivector& u, const Multivector& v);

// Euclidean dot product of two relative 3-vectors.
double dot3(const Multivector& u, const Multivector& v);

}  // namespace stf
