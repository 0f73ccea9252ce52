#include "stafields/simulate.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>
#include <utility>

#include "stafields/threading.hpp"

namespace stf {

namespace {

double theory_sign(SimTheory theory) {
  return theory == SimTheory::kEm ? 1.0 : -1.0;
}

// Three-point Laplacian of f at site (i, j, k), periodic in every axis.
// Lane-wise arithmetic only: grade content can never leak between blades.
Multivector laplacian_site(const GridSpec& g, const GridData& f, int i, int j,
                           int k) {
  const int im = i == 0 ? g.dims[0] - 1 : i - 1;
  const int ip = i == g.dims[0] - 1 ? 0 : i + 1;
  const int jm = j == 0 ? g.dims[1] - 1 : j - 1;
  const int jp = j == g.dims[1] - 1 ? 0 : j + 1;
  const int km = k == 0 ? g.dims[2] - 1 : k - 1;
  const int kp = k == g.dims[2] - 1 ? 0 : k + 1;
  const Multivector& c0 = f[g.index(i, j, k)];
  const Multivector& xm = f[g.index(im, j, k)];
  const Multivector& xp = f[g.index(ip, j, k)];
  const Multivector& ym = f[g.index(i, jm, k)];
  const Multivector& yp = f[g.index(i, jp, k)];
  const Multivector& zm = f[g.index(i, j, km)];
  const Multivector& zp = f[g.index(i, j, kp)];
  const double ax = 1.0 / (g.spacing[0] * g.spacing[0]);
  const double ay = 1.0 / (g.spacing[1] * g.spacing[1]);
  const double az = 1.0 / (g.spacing[2] * g.spacing[2]);
  Multivector lap;
  for (int l = 0; l < 16; ++l) {
    lap[l] = (xp[l] - 2.0 * c0[l] + xm[l]) * ax +
             (yp[l] - 2.0 * c0[l] + ym[l]) * ay +
             (zp[l] - 2.0 * c0[l] + zm[l]) * az;
  }
  return lap;
}

// Central-difference Dirac spatial part sum_k gamma^k d_k f = sum_k
// (-gamma_k) (f_+ - f_-)/(2 h_k) at site (i, j, k).
Multivector vector_derivative_site(const GridSpec& g, const GridData& f,
                                   int i, int j, int k) {
  const int im = i == 0 ? g.dims[0] - 1 : i - 1;
  const int ip = i == g.dims[0] - 1 ? 0 : i + 1;
  const int jm = j == 0 ? g.dims[1] - 1 : j - 1;
  const int jp = j == g.dims[1] - 1 ? 0 : j + 1;
  const int km = k == 0 ? g.dims[2] - 1 : k - 1;
  const int kp = k == g.dims[2] - 1 ? 0 : k + 1;
  const Multivector dx =
      (f[g.index(ip, j, k)] - f[g.index(im, j, k)]) * (0.5 / g.spacing[0]);
  const Multivector dy =
      (f[g.index(i, jp, k)] - f[g.index(i, jm, k)]) * (0.5 / g.spacing[1]);
  const Multivector dz =
      (f[g.index(i, j, kp)] - f[g.index(i, j, km)]) * (0.5 / g.spacing[2]);
  return Multivector::gamma(1) * dx * -1.0 + Multivector::gamma(2) * dy * -1.0 +
         Multivector::gamma(3) * dz * -1.0;
}

void check_levels(const GridSpec& grid, const GridData& prev,
                  const GridData& curr) {
  if (prev.size() != grid.site_count() || curr.size() != grid.site_count())
    throw std::invalid_argument(
        "field levels do not match the grid site count");
}

void check_step(const GridSpec& grid, double dct) {
  if (!(dct > 0.0))
    throw std::invalid_argument("time step dct must be positive");
  if (dct > cfl_limit(grid))
    throw std::invalid_argument(
        "CFL violation: dct must not exceed min(spacing)/sqrt(3)");
}

void check_parity(const GridData& prev, const GridData& curr, int parity,
                  const char* what) {
  const double scale =
      1.0 + std::max(max_site_norm(prev), max_site_norm(curr));
  if (parity_violation(prev, parity) > 1e-12 * scale ||
      parity_violation(curr, parity) > 1e-12 * scale)
    throw std::invalid_argument(std::string(what) +
                                " initial data has the wrong grade parity");
}

double field_invariant(const SimState& state) {
  const GridSpec& g = state.grid;
  const double inv_dct = 1.0 / state.dct;
  const double pref = state.theory == SimTheory::kEm
                          ? 1.0 / state.em_medium.mu
                          : 1.0 / state.ac_medium.rho;
  const double sum =
      parallel_sum(g.site_count(), [&](std::size_t site) -> double {
        const auto c = g.coords(site);
        const Multivector lap = laplacian_site(g, state.prev, c[0], c[1], c[2]);
        double kin = 0.0;
        double pot = 0.0;
        for (int l = 0; l < 16; ++l) {
          const double zd = (state.curr[site][l] - state.prev[site][l]) * inv_dct;
          kin += zd * zd;
          pot += -lap[l] * state.curr[site][l];
        }
        return 0.5 * (kin + pot);
      });
  return pref * g.cell_volume() * sum;
}

double probes_energy(const SimState& state) {
  double e = 0.0;
  for (const EmProbe& p : state.em_probes)
    e += probe_kinetic_energy(p.mass, state.em_medium.c, p.velocity);
  for (const AcProbe& p : state.ac_probes)
    e += probe_kinetic_energy(p.mass, state.ac_medium.c, p.velocity);
  return e;
}

double total_energy(const SimState& state) {
  return field_invariant(state) + probes_energy(state);
}

SimState assemble_state(SimTheory theory, const GridSpec& grid, double dct,
                        GridData prev, GridData curr, double ct0,
                        SimSource source) {
  grid.validate();
  check_step(grid, dct);
  check_levels(grid, prev, curr);
  check_parity(prev, curr, potential_parity(theory), "potential");
  SimState state;
  state.theory = theory;
  state.grid = grid;
  state.dct = dct;
  state.ct = ct0;
  state.prev = std::move(prev);
  state.curr = std::move(curr);
  state.source = std::move(source);
  return state;
}

DiracState assemble_dirac(SimTheory theory, const GridSpec& grid, double dct,
                          const AnalyticField& measurable, double ct0,
                          SimSource source) {
  grid.validate();
  check_step(grid, dct);
  DiracState state;
  state.theory = theory;
  state.grid = grid;
  state.dct = dct;
  state.ct = ct0;
  state.prev = sample_slice(grid, ct0 - dct, measurable);
  state.curr = sample_slice(grid, ct0, measurable);
  state.source = std::move(source);
  check_parity(state.prev, state.curr, measurable_parity(theory),
               "measurable");
  return state;
}

}  // namespace

// --- GridSpec ----------------------------------------------------------------

void GridSpec::validate() const {
  for (int a = 0; a < 3; ++a) {
    if (dims[a] < 4)
      throw std::invalid_argument(
          "grid needs at least 4 sites per axis for central stencils");
    if (!(spacing[a] > 0.0))
      throw std::invalid_argument("grid spacings must be positive");
  }
}

std::array<int, 3> GridSpec::coords(std::size_t flat) const {
  const auto d2 = static_cast<std::size_t>(dims[2]);
  const auto d1 = static_cast<std::size_t>(dims[1]);
  const std::size_t k = flat % d2;
  const std::size_t rest = flat / d2;
  const std::size_t j = rest % d1;
  const std::size_t i = rest / d1;
  return {static_cast<int>(i), static_cast<int>(j), static_cast<int>(k)};
}

SpacetimePoint GridSpec::point(double ct, const std::array<int, 3>& idx) const {
  return {ct, idx[0] * spacing[0], idx[1] * spacing[1], idx[2] * spacing[2]};
}

double GridSpec::min_spacing() const {
  return std::min({spacing[0], spacing[1], spacing[2]});
}

// --- Sampling and stencils ----------------------------------------------------

GridData sample_slice(
    const GridSpec& grid, double ct,
    const std::function<Multivector(const SpacetimePoint&)>& fn) {
  grid.validate();
  if (!fn) throw std::invalid_argument("sample_slice: empty field closure");
  GridData out(grid.site_count());
  parallel_for_blocks(out.size(), [&](std::size_t begin, std::size_t end) {
    for (std::size_t s = begin; s < end; ++s)
      out[s] = fn(grid.point(ct, grid.coords(s)));
  });
  return out;
}

GridData sample_slice(const GridSpec& grid, double ct, const AnalyticField& f) {
  grid.validate();
  GridData out(grid.site_count());
  parallel_for_blocks(out.size(), [&](std::size_t begin, std::size_t end) {
    for (std::size_t s = begin; s < end; ++s)
      out[s] = f.value(grid.point(ct, grid.coords(s)));
  });
  return out;
}

GridData spatial_laplacian(const GridSpec& grid, const GridData& f) {
  grid.validate();
  check_levels(grid, f, f);
  GridData out(f.size());
  parallel_for_blocks(f.size(), [&](std::size_t begin, std::size_t end) {
    for (std::size_t s = begin; s < end; ++s) {
      const auto c = grid.coords(s);
      out[s] = laplacian_site(grid, f, c[0], c[1], c[2]);
    }
  });
  return out;
}

GridData spatial_vector_derivative(const GridSpec& grid, const GridData& f) {
  grid.validate();
  check_levels(grid, f, f);
  GridData out(f.size());
  parallel_for_blocks(f.size(), [&](std::size_t begin, std::size_t end) {
    for (std::size_t s = begin; s < end; ++s) {
      const auto c = grid.coords(s);
      out[s] = vector_derivative_site(grid, f, c[0], c[1], c[2]);
    }
  });
  return out;
}

GridData grid_average(const GridData& a, const GridData& b) {
  if (a.size() != b.size())
    throw std::invalid_argument("grid_average: size mismatch");
  GridData out(a.size());
  parallel_for_blocks(a.size(), [&](std::size_t begin, std::size_t end) {
    for (std::size_t s = begin; s < end; ++s) out[s] = (a[s] + b[s]) * 0.5;
  });
  return out;
}

double max_site_norm(const GridData& f) {
  double m = 0.0;
  for (const Multivector& v : f) m = std::max(m, coeff_norm(v));
  return m;
}

double max_site_distance(const GridData& a, const GridData& b) {
  if (a.size() != b.size())
    throw std::invalid_argument("max_site_distance: size mismatch");
  double m = 0.0;
  for (std::size_t s = 0; s < a.size(); ++s)
    m = std::max(m, coeff_norm(a[s] - b[s]));
  return m;
}

// --- Grade bookkeeping ---------------------------------------------------------

int potential_parity(SimTheory theory) {
  return theory == SimTheory::kEm ? 1 : 0;
}

int measurable_parity(SimTheory theory) {
  return theory == SimTheory::kEm ? 0 : 1;
}

double parity_violation(const GridData& f, int parity) {
  if (parity != 0 && parity != 1)
    throw std::invalid_argument("parity must be 0 (even) or 1 (odd)");
  double worst = 0.0;
  for (const Multivector& v : f) {
    double s = 0.0;
    for (int l = 0; l < 16; ++l)
      if ((blade_grade(l) & 1) != parity) s += v[l] * v[l];
    worst = std::max(worst, s);
  }
  return std::sqrt(worst);
}

// --- State construction ---------------------------------------------------------

double cfl_limit(const GridSpec& grid) {
  return grid.min_spacing() / std::sqrt(3.0);
}

SimState make_em_state(const EmMedium& medium, const GridSpec& grid,
                       double dct, const AnalyticField& potential, double ct0,
                       SimSource source) {
  medium.validate();
  grid.validate();
  check_step(grid, dct);
  SimState state = assemble_state(
      SimTheory::kEm, grid, dct, sample_slice(grid, ct0 - dct, potential),
      sample_slice(grid, ct0, potential), ct0, std::move(source));
  state.em_medium = medium;
  state.reference_energy = total_energy(state);
  return state;
}

SimState make_em_state(const EmMedium& medium, const GridSpec& grid,
                       double dct, GridData prev, GridData curr, double ct0,
                       SimSource source) {
  medium.validate();
  SimState state =
      assemble_state(SimTheory::kEm, grid, dct, std::move(prev),
                     std::move(curr), ct0, std::move(source));
  state.em_medium = medium;
  state.reference_energy = total_energy(state);
  return state;
}

SimState make_ac_state(const AcMedium& medium, const GridSpec& grid,
                       double dct, const AnalyticField& potential, double ct0,
                       SimSource source) {
  medium.validate();
  grid.validate();
  check_step(grid, dct);
  SimState state = assemble_state(
      SimTheory::kAcoustic, grid, dct, sample_slice(grid, ct0 - dct, potential),
      sample_slice(grid, ct0, potential), ct0, std::move(source));
  state.ac_medium = medium;
  state.reference_energy = total_energy(state);
  return state;
}

SimState make_ac_state(const AcMedium& medium, const GridSpec& grid,
                       double dct, GridData prev, GridData curr, double ct0,
                       SimSource source) {
  medium.validate();
  SimState state =
      assemble_state(SimTheory::kAcoustic, grid, dct, std::move(prev),
                     std::move(curr), ct0, std::move(source));
  state.ac_medium = medium;
  state.reference_energy = total_energy(state);
  return state;
}

// --- Leapfrog stepping -----------------------------------------------------------

void step_wave(SimState& state) {
  const GridSpec& g = state.grid;
  g.validate();
  check_step(g, state.dct);
  check_levels(g, state.prev, state.curr);
  const double dct2 = state.dct * state.dct;
  const bool sourced = static_cast<bool>(state.source);
  const double ct_now = state.ct;
  GridData& next = state.prev;  // retiring level is overwritten in place
  const GridData& curr = state.curr;
  parallel_for_blocks(g.site_count(), [&](std::size_t begin, std::size_t end) {
    for (std::size_t s = begin; s < end; ++s) {
      const auto c = g.coords(s);
      const Multivector lap = laplacian_site(g, curr, c[0], c[1], c[2]);
      Multivector nxt;
      for (int l = 0; l < 16; ++l)
        nxt[l] = 2.0 * curr[s][l] - next[s][l] + dct2 * lap[l];
      if (sourced) nxt += state.source(g.point(ct_now, c)) * dct2;
      next[s] = nxt;
    }
  });
  std::swap(state.prev, state.curr);
  state.ct += state.dct;
  ++state.steps;
}

GridData measurable_field(const SimState& state) {
  const GridSpec& g = state.grid;
  g.validate();
  check_levels(g, state.prev, state.curr);
  const double sign = theory_sign(state.theory);
  const double inv_dct = 1.0 / state.dct;
  const Multivector g0 = Multivector::gamma(0);
  const GridData avg = grid_average(state.prev, state.curr);
  GridData out(g.site_count());
  parallel_for_blocks(out.size(), [&](std::size_t begin, std::size_t end) {
    for (std::size_t s = begin; s < end; ++s) {
      const auto c = g.coords(s);
      const Multivector dz = (state.curr[s] - state.prev[s]) * inv_dct;
      out[s] =
          (g0 * dz + vector_derivative_site(g, avg, c[0], c[1], c[2])) * sign;
    }
  });
  return out;
}

double measurable_time(const SimState& state) {
  return state.ct - 0.5 * state.dct;
}

// --- First-order verification twin --------------------------------------------------

DiracState make_em_dirac_state(const GridSpec& grid, double dct,
                               const AnalyticField& measurable, double ct0,
                               SimSource source) {
  return assemble_dirac(SimTheory::kEm, grid, dct, measurable, ct0,
                        std::move(source));
}

DiracState make_ac_dirac_state(const GridSpec& grid, double dct,
                               const AnalyticField& measurable, double ct0,
                               SimSource source) {
  return assemble_dirac(SimTheory::kAcoustic, grid, dct, measurable, ct0,
                        std::move(source));
}

void step_dirac(DiracState& state) {
  const GridSpec& g = state.grid;
  g.validate();
  check_step(g, state.dct);
  check_levels(g, state.prev, state.curr);
  const double sign = theory_sign(state.theory);
  const double two_dct = 2.0 * state.dct;
  const bool sourced = static_cast<bool>(state.source);
  const double ct_now = state.ct;
  const Multivector g0 = Multivector::gamma(0);
  GridData& next = state.prev;
  const GridData& curr = state.curr;
  parallel_for_blocks(g.site_count(), [&](std::size_t begin, std::size_t end) {
    for (std::size_t s = begin; s < end; ++s) {
      const auto c = g.coords(s);
      Multivector rhs =
          vector_derivative_site(g, curr, c[0], c[1], c[2]) * -1.0;
      if (sourced) rhs += state.source(g.point(ct_now, c)) * sign;
      next[s] = next[s] + g0 * rhs * two_dct;
    }
  });
  std::swap(state.prev, state.curr);
  state.ct += state.dct;
  ++state.steps;
}

// --- Conservation audit ---------------------------------------------------------

ContinuityReport continuity_audit(const SimState& state) {
  state.grid.validate();
  check_levels(state.grid, state.prev, state.curr);
  ContinuityReport report;
  report.time = state.ct;
  report.field_energy = field_invariant(state);
  report.probe_energy = probes_energy(state);
  report.total_energy = report.field_energy + report.probe_energy;
  report.boundary_flux = 0.0;
  if (state.reference_energy == 0.0) {
    report.drift = report.total_energy == 0.0
                       ? 0.0
                       : std::numeric_limits<double>::infinity();
  } else {
    report.drift = std::abs(report.total_energy - state.reference_energy) /
                   std::abs(state.reference_energy);
  }
  return report;
}

void rebaseline_energy(SimState& state) {
  state.reference_energy = total_energy(state);
}

}  // namespace stf
