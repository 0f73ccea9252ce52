#pragma once

// Periodic 4D lattices of multivector values with central-difference
// discretizations of the vector derivative (Dirac operator), its grade
// split, and the signature d'Alembertian.  Periodic boundaries make the
// difference operators commute exactly, so the discrete Bianchi identities
// hold to round-off — the main structural test surface.

#include <array>
#include <cstddef>
#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "stafields/analytic.hpp"
#include "stafields/multivector.hpp"

namespace stf {

struct LatticeSpec {
  std::array<int, 4> dims{};      // Nt, Nx, Ny, Nz
  std::array<double, 4> spacing{};  // c*dt, dx, dy, dz (meters)

  // All dims >= 4 (central stencil support), spacings > 0.
  void validate() const;
  std::size_t site_count() const {
    return static_cast<std::size_t>(dims[0]) *
           static_cast<std::size_t>(dims[1]) *
           static_cast<std::size_t>(dims[2]) *
           static_cast<std::size_t>(dims[3]);
  }
  friend bool operator==(const LatticeSpec&, const LatticeSpec&) = default;
};

class MultivectorField {
 public:
  MultivectorField() = default;
  explicit MultivectorField(const LatticeSpec& spec);

  static MultivectorField sample(
      const LatticeSpec& spec,
      const std::function<Multivector(const SpacetimePoint&)>& fn);
  static MultivectorField sample(const LatticeSpec& spec,
                                 const AnalyticField& f);

  const LatticeSpec& spec() const { return spec_; }
  std::size_t size() const { return data_.size(); }

  // Site-major flat index ((t*Nx + x)*Ny + y)*Nz + z.
  std::size_t index(int t, int x, int y, int z) const {
    const auto& d = spec_.dims;
    return ((static_cast<std::size_t>(t) * static_cast<std::size_t>(d[1]) +
             static_cast<std::size_t>(x)) *
                static_cast<std::size_t>(d[2]) +
            static_cast<std::size_t>(y)) *
               static_cast<std::size_t>(d[3]) +
           static_cast<std::size_t>(z);
  }
  std::array<int, 4> coords(std::size_t flat) const;
  // Physical coordinates of a site: x^mu = i_mu * h_mu.
  SpacetimePoint point(const std::array<int, 4>& idx) const;

  Multivector& operator[](std::size_t i) { return data_[i]; }
  const Multivector& operator[](std::size_t i) const { return data_[i]; }
  Multivector& at(int t, int x, int y, int z) {
    return data_[index(t, x, y, z)];
  }
  const Multivector& at(int t, int x, int y, int z) const {
    return data_[index(t, x, y, z)];
  }

  MultivectorField& operator+=(const MultivectorField& o);
  MultivectorField& operator-=(const MultivectorField& o);
  MultivectorField& operator*=(double s);

  double linf() const;        // max over sites of the blade max-norm
  double max_site_norm() const;  // max over sites of the Euclidean norm

 private:
  LatticeSpec spec_;
  std::vector<Multivector> data_;
};

// Dirac operator: (grad f)(x) = sum_mu gamma^mu (f(x+e_mu) - f(x-e_mu)) /
// (2 h_mu) with reciprocal basis gamma^0 = gamma0, gamma^k = -gamma_k;
// periodic wrap.
MultivectorField vector_derivative(const MultivectorField& f);

// Grade-raising and grade-lowering parts of the Dirac operator: for each
// grade-g component of f, curl4 keeps the grade g+1 part of grad and div4
// the grade g-1 part, so curl4(f) + div4(f) = vector_derivative(f).
MultivectorField curl4(const MultivectorField& f);
MultivectorField div4(const MultivectorField& f);

// (max |curl4(curl4 f)|, max |div4(div4 f)|): both vanish to round-off on
// periodic lattices.
std::pair<double, double> bianchi_residuals(const MultivectorField& f);

// Signature Laplacian d^2_ct - sum_k d^2_k with compact 3-point second
// differences per axis (grade-preserving; differs from grad(grad f)) at
// O(h^2) stencil width).
MultivectorField dalembertian(const MultivectorField& f);

// --- snapshots ---------------------------------------------------------------

// CSV with header t,x,y,z,<16 blade names>, one row per site in flat order,
// 17 significant digits; JSON sidecar carries the LatticeSpec.  Round-trips
// bit-exactly.
void write_field_csv(const MultivectorField& f, const std::string& csv_path,
                     const std::string& sidecar_path);
MultivectorField read_field_csv(const std::string& csv_path,
                                const std::string& sidecar_path);

}  // namespace stf
