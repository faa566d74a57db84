#pragma once

#include <vector>

#include "pipeleak/field.hpp"
#include "pipeleak/pipeline.hpp"

namespace pipeleak {

// Truncation and degeneracy controls for the eigenfunction series.
struct SeriesConfig {
    int n_terms = 20;
    double c_const = 1.0;
    // Relative spread below which an eigenrate and the leak decay rate are
    // treated as equal (resonant kernel branch).
    double degeneracy_tol = 1e-10;

    void validate() const;
};

// How the leak source term is scaled.  The two families differ by the
// gravitational factor g; the "half upstream" variants halve the transient on
// the damaged line upstream of the leak.  reconcile_amplitude() in fd.hpp
// picks the variant that best matches the finite-difference solution;
// FluxCalibrated is the shipped default because it agrees with the
// finite-difference oracle to a few tenths of a percent.
enum class LeakAmplitude {
    GravityScaled = 0,
    FluxCalibrated,
    GravityScaledHalfUpstream,
    FluxCalibratedHalfUpstream,
};

inline constexpr LeakAmplitude kReconciledAmplitude =
    LeakAmplitude::FluxCalibrated;

// Stable identifier used in reports and CSV output.
const char* amplitude_tag(LeakAmplitude amplitude);

// Integral of exp(-beta*s) over [0, t]: (1 - exp(-beta*t))/beta, continuous
// at beta = 0 where it equals t.
double leak_ramp(double beta, double t);

// Time response of one eigenmode with relaxation `rate` driven by a source
// decaying at `beta`:
//   exp(-beta*t) * (1 - exp(-(rate-beta)*t)) / (rate - beta)
// with the resonant limit t*exp(-beta*t) when |rate - beta| is within a
// relative tolerance `tol` of the larger magnitude.
double series_kernel(double rate, double beta, double t, double tol = 1e-10);

// Transient pressure on one segment at global coordinate x and time t.
// Throws OutOfDomain when x lies outside the segment (intact: [0, L];
// upstream of leak: [0, l]; downstream: [l, L]) and InvalidTime for t < 0.
double pressure_at(const PipelineSpec& spec, const FlowBoundary& boundary,
                   const LeakScenario& scenario, const SeriesConfig& series,
                   SegmentId segment, double x, double t,
                   LeakAmplitude amplitude = kReconciledAmplitude);

// Pressure sampled on the given grids; cells outside a segment's domain are
// absent.  Throws EmptyGrid when either grid is empty and InvalidTime when
// the time grid reaches below zero.
ScalarField pressure_field(const PipelineSpec& spec,
                           const FlowBoundary& boundary,
                           const LeakScenario& scenario,
                           const SeriesConfig& series,
                           std::vector<double> x_grid,
                           std::vector<double> t_grid,
                           LeakAmplitude amplitude = kReconciledAmplitude);

// Per-line mass flux G = -P_x / (2a) obtained by differencing a pressure
// field along x (three-point one-sided stencils at segment ends, central
// stencils inside; spacing may be nonuniform).  Throws InvalidField when the
// input is not a pressure field and InsufficientGrid when a segment is
// present at fewer than three grid columns.
ScalarField flux_from_pressure(const PipelineSpec& spec,
                               const ScalarField& pressure);

// Upper bound, uniform in x and t, on the pressure contribution of the
// series terms beyond n_terms.  Throws InvalidSeries when the first omitted
// eigenrate does not exceed the leak decay rate (the bound would diverge).
double truncation_tail_bound(const PipelineSpec& spec,
                             const FlowBoundary& boundary,
                             const LeakScenario& scenario,
                             const SeriesConfig& series,
                             LeakAmplitude amplitude = kReconciledAmplitude);

}  // namespace pipeleak
