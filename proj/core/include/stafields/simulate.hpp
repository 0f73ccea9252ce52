#pragma once

// Time-domain evolution of potential fields on a periodic spatial grid,
// probe-particle integration under the full force laws, and conservation
// audits.
//
// Both theories share one linear structure: a potential field z obeying the
// componentwise wave equation d^2_ct z = lap z + s, whose vector derivative
// is the measurable field.  Electromagnetism evolves the odd-grade complex
// potential (measurable spinor even); acoustics evolves the even-grade
// potential spinor (measurable field odd).  The primary scheme is the
// standard second-order leapfrog on the potential; a first-order-in-time
// "Dirac" stepper evolving the measurable field directly is provided as a
// verification twin.  Probes couple one way (field -> probe).

#include <array>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <vector>

#include "stafields/acoustic.hpp"
#include "stafields/analytic.hpp"
#include "stafields/em.hpp"
#include "stafields/multivector.hpp"

namespace stf {

enum class SimTheory { kEm, kAcoustic };

// ---------------------------------------------------------------------------
// Spatial grid
// ---------------------------------------------------------------------------

// Periodic spatial grid.  Unlike the spacetime lattice, time is not an axis
// here: the simulator stores field snapshots at discrete times instead.
struct GridSpec {
  std::array<int, 3> dims{};        // sites along x, y, z
  std::array<double, 3> spacing{};  // dx, dy, dz

  // All dims >= 4 (central stencils), spacings positive.
  void validate() const;

  std::size_t site_count() const {
    return static_cast<std::size_t>(dims[0]) *
           static_cast<std::size_t>(dims[1]) *
           static_cast<std::size_t>(dims[2]);
  }
  std::size_t index(int i, int j, int k) const {
    return (static_cast<std::size_t>(i) * static_cast<std::size_t>(dims[1]) +
            static_cast<std::size_t>(j)) *
               static_cast<std::size_t>(dims[2]) +
           static_cast<std::size_t>(k);
  }
  std::array<int, 3> coords(std::size_t flat) const;

  // Event coordinates (ct, i dx, j dy, k dz) of a site at time ct.
  SpacetimePoint point(double ct, const std::array<int, 3>& idx) const;

  double min_spacing() const;
  double cell_volume() const { return spacing[0] * spacing[1] * spacing[2]; }

  bool operator==(const GridSpec& o) const {
    return dims == o.dims && spacing == o.spacing;
  }
};

// One multivector per site, flat in GridSpec::index order.
using GridData = std::vector<Multivector>;

// Samples f (or an analytic field) on the slice at fixed time ct.
GridData sample_slice(const GridSpec& grid, double ct,
                      const std::function<Multivector(const SpacetimePoint&)>&
                          fn);
GridData sample_slice(const GridSpec& grid, double ct, const AnalyticField& f);

// Spatial 7-point Laplacian sum_k d^2_k f (periodic).
GridData spatial_laplacian(const GridSpec& grid, const GridData& f);

// Spatial part of the vector derivative, sum_k gamma^k d_k f with
// gamma^k = -gamma_k, central differences, periodic.
GridData spatial_vector_derivative(const GridSpec& grid, const GridData& f);

// Sitewise midpoint (a + b)/2; sizes must match.
GridData grid_average(const GridData& a, const GridData& b);

double max_site_norm(const GridData& f);
double max_site_distance(const GridData& a, const GridData& b);

// ---------------------------------------------------------------------------
// Grade bookkeeping
// ---------------------------------------------------------------------------

// Grade parity (0 even, 1 odd) of the evolved potential / measurable field.
int potential_parity(SimTheory theory);
int measurable_parity(SimTheory theory);

// Largest site norm of the blades of the wrong parity; exactly zero for
// parity-pure data, and the steppers preserve it exactly.
double parity_violation(const GridData& f, int parity);

// ---------------------------------------------------------------------------
// Simulation state
// ---------------------------------------------------------------------------

// Source closure s(x), sampled at the event (ct, x, y, z): the right-hand
// side of the potential wave equation d^2_ct z = lap z + s.  For
// electromagnetism s = mu j (from grad psi = mu j with psi = grad z); for
// acoustics s = psi_N (from grad z = -psi_N with z = -grad psi), so the
// measurable field obeys grad f = sigma s with the theory sign sigma = +1
// (EM) or -1 (acoustic).  An empty function means source-free.
using SimSource = std::function<Multivector(const SpacetimePoint&)>;

struct SimState {
  SimTheory theory = SimTheory::kEm;
  EmMedium em_medium{};             // used when theory == kEm
  AcMedium ac_medium{};             // used when theory == kAcoustic
  GridSpec grid{};
  double dct = 0.0;                 // time step c dt (length units)
  double ct = 0.0;                  // time of the `curr` level
  std::uint64_t steps = 0;          // completed steps
  GridData prev;                    // potential at ct - dct
  GridData curr;                    // potential at ct
  SimSource source{};
  std::vector<EmProbe> em_probes;   // advanced by the caller via
  std::vector<AcProbe> ac_probes;   // integrate_probe; audited here
  double reference_energy = 0.0;    // audit baseline, see rebaseline_energy
};

// Largest stable time step, min(dx,dy,dz)/sqrt(3).  Construction and every
// step require dct <= cfl_limit (hard precondition, never clamped).
double cfl_limit(const GridSpec& grid);

// Build a state whose two levels sample `potential` at ct0 - dct and ct0,
// or adopt explicitly provided levels.  Throws std::invalid_argument on an
// invalid grid, non-positive or CFL-violating dct, mismatched level sizes,
// or initial data of the wrong grade parity.
SimState make_em_state(const EmMedium& medium, const GridSpec& grid,
                       double dct, const AnalyticField& potential,
                       double ct0 = 0.0, SimSource source = {});
SimState make_em_state(const EmMedium& medium, const GridSpec& grid,
                       double dct, GridData prev, GridData curr,
                       double ct0 = 0.0, SimSource source = {});
SimState make_ac_state(const AcMedium& medium, const GridSpec& grid,
                       double dct, const AnalyticField& potential,
                       double ct0 = 0.0, SimSource source = {});
SimState make_ac_state(const AcMedium& medium, const GridSpec& grid,
                       double dct, GridData prev, GridData curr,
                       double ct0 = 0.0, SimSource source = {});

// One leapfrog step of every potential component; per-site updates are
// data-parallel, steps strictly sequential.
void step_wave(SimState& state);

// Measurable field sigma grad z by stencils (sigma = +1 EM, -1 acoustic):
// the time derivative (curr - prev)/dct is exactly centered at ct - dct/2,
// the spatial derivative acts on the level average.  Use measurable_time()
// for the matching instant.
GridData measurable_field(const SimState& state);
double measurable_time(const SimState& state);

// ---------------------------------------------------------------------------
// First-order verification twin
// ---------------------------------------------------------------------------

// Evolves the measurable field f directly via d_ct f = gamma0 (sigma s - D f)
// with D = sum_k gamma^k d_k and the theory sign sigma (+1 EM, -1 acoustic),
// using a central (two-level) time difference.  Used only to cross-check
// step_wave on identical initial data.
struct DiracState {
  SimTheory theory = SimTheory::kEm;
  GridSpec grid{};
  double dct = 0.0;
  double ct = 0.0;
  std::uint64_t steps = 0;
  GridData prev;   // measurable field at ct - dct
  GridData curr;   // measurable field at ct
  SimSource source{};
};

DiracState make_em_dirac_state(const GridSpec& grid, double dct,
                               const AnalyticField& measurable,
                               double ct0 = 0.0, SimSource source = {});
DiracState make_ac_dirac_state(const GridSpec& grid, double dct,
                               const AnalyticField& measurable,
                               double ct0 = 0.0, SimSource source = {});

void step_dirac(DiracState& state);

// ---------------------------------------------------------------------------
// Conservation audit
// ---------------------------------------------------------------------------

struct ContinuityReport {
  double time = 0.0;           // ct of the current level
  double total_energy = 0.0;   // field + probes
  double field_energy = 0.0;
  double probe_energy = 0.0;   // sum of m c^2 (gamma - 1)
  double boundary_flux = 0.0;  // identically zero for periodic boundaries
  double drift = 0.0;          // |total - reference| / |reference|
};

// Field term: the exact discrete invariant of the leapfrog scheme,
//   pref * vol * sum_sites [ 1/2 |(curr - prev)/dct|^2
//                            + 1/2 <(-lap prev), curr> ]
// with blade-Euclidean products and pref = 1/mu (EM) or 1/rho (acoustic);
// conserved to roundoff for source-free runs under CFL.  Deterministic for
// any thread count.
ContinuityReport continuity_audit(const SimState& state);

// Resets the drift baseline to the current total (call after attaching
// probes or editing levels by hand).
void rebaseline_energy(SimState& state);

// ---------------------------------------------------------------------------
// Probe integration
// ---------------------------------------------------------------------------

// Measurable field at an arbitrary event, supplied by the caller (analytic
// closure or grid interpolation).
using FieldEvaluator = std::function<Multivector(const SpacetimePoint&)>;

// gamma (c + v) gamma0 for a relative 3-velocity v, |v| < c.
Multivector lab_four_velocity(double c, const Multivector& v_rel);

// m c^2 (gamma - 1) with gamma = (u . gamma0)/c.
double probe_kinetic_energy(double mass, double c, const Multivector& u);

struct ProbeStepReport {
  double mass_shell_drift = 0.0;   // |sqrt(<uu>)/c - 1| before projection
  double proper_time_delta = 0.0;
};

// One classic fourth-order step of size dt in lab time:
//   dx/dt = (c + v) gamma0,   du/dt = (power/c + force) gamma0 / m,
//   dtau/dt = 1/gamma,
// with the force pair re-evaluated per stage and u projected back to the
// mass shell afterwards (drift reported).  Throws std::invalid_argument on
// bad probe data or dt <= 0, std::runtime_error if the velocity leaves the
// future light cone (numeric abort).
EmProbe integrate_probe(const EmProbe& probe, const FieldEvaluator& psi,
                        const EmMedium& medium, double dt,
                        ProbeStepReport* report = nullptr);
AcProbe integrate_probe(const AcProbe& probe, const FieldEvaluator& z,
                        const AcMedium& medium, double dt,
                        ProbeStepReport* report = nullptr);

}  // namespace stf
