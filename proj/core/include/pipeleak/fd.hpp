#pragma once

#include <string>
#include <vector>

#include "pipeleak/analytic.hpp"
#include "pipeleak/field.hpp"
#include "pipeleak/pipeline.hpp"

namespace pipeleak {

enum class FdScheme { ImplicitEuler, CrankNicolson };

struct FdConfig {
    // Nodes per line, including both shared end nodes.
    std::size_t nx_per_line = 2001;
    double dt = 0.5;
    double t_end = 600.0;
    FdScheme scheme = FdScheme::CrankNicolson;

    void validate() const;
};

// Integrates the coupled twin-line diffusion system from the steady profile
// with the leak switched on at t = 0.  The two lines share the end nodes; the
// leak is a point sink on the damaged line and must coincide with an interior
// grid node (GridMismatch otherwise).  Crank-Nicolson steps are started with
// two implicit-Euler half-steps so the switch-on transient does not ring.
//
// `out_times` selects the snapshots stored in the returned field; each must
// land on a completed step (GridMismatch otherwise).  When empty, 13 evenly
// spaced snapshots from 0 to t_end are stored (rounded to whole steps).
// Throws NumericalBlowup if the solution leaves the positive finite range.
ScalarField fd_solve(const PipelineSpec& spec, const FlowBoundary& boundary,
                     const LeakScenario& scenario, const FdConfig& config,
                     std::vector<double> out_times = {});

// Largest normalized defect of the diffusion equation over the interior of a
// pressure field: |P_xx - (2a/c^2) P_t| scaled by (2a/c^2)*P_ref/T where
// P_ref is the largest pressure magnitude in the field and T the time span.
// Derivatives use nonuniform central stencils; the first/last column and
// time slice of each segment are skipped, as are the two columns either side
// of the leak node on the damaged line (the kink is not differentiable).
// Requires at least 5 columns and 3 time slices per present segment
// (InsufficientGrid).
double pde_residual(const PipelineSpec& spec, const LeakScenario& scenario,
                    const ScalarField& field);

struct DiscrepancyReport {
    double max_rel = 0.0;
    double mean_rel = 0.0;
    SegmentId worst_segment = SegmentId::Intact;
    double worst_x = 0.0;
    double worst_t = 0.0;
    std::string variant_tag;
};

// Pointwise relative difference |a-b| / max(|a|,|b|) over the cells present
// in both fields.  The grids must match exactly (GridMismatch), the fields
// must measure the same quantity (InvalidField), and at least one cell must
// be present in both (GridMismatch).
DiscrepancyReport compare_fields(const ScalarField& a, const ScalarField& b);

struct ReconciliationOutcome {
    LeakAmplitude selected = kReconciledAmplitude;
    // One report per LeakAmplitude variant, in enum order.
    std::vector<DiscrepancyReport> reports;
};

// Runs the finite-difference reference once, evaluates every closed-form
// amplitude variant on the same grid, and selects the variant with the
// smallest maximum relative discrepancy (first in enum order on ties).
ReconciliationOutcome reconcile_amplitude(const PipelineSpec& spec,
                                          const FlowBoundary& boundary,
                                          const LeakScenario& scenario,
                                          const SeriesConfig& series,
                                          const FdConfig& config,
                                          std::vector<double> out_times = {});

}  // namespace pipeleak
