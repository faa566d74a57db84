#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "pipeleak/errors.hpp"
#include "pipeleak/pipeline.hpp"

namespace pipeleak {

/// Timestamped inlet-pressure samples (sensor readings or synthetic).
struct PressureSeries {
    struct Sample {
        double t; ///< [s]
        double p; ///< [Pa]
    };
    std::vector<Sample> samples;

    /// Throws InvalidSeries unless times are strictly increasing, all
    /// pressures are positive and at least one sample is present.
    void validate() const;
};

enum class BetaMethod {
    LogLinearThroughOrigin, ///< closed-form slope of ln(p/P1) through origin
    NonlinearLS,            ///< scalar search on the exponential-model SSE
};

/// Result of fitting the decay rate of p(t) = P1 * e^(-beta t).
struct BetaFit {
    double beta;             ///< fitted decay rate [1/s]
    BetaMethod method;
    double rms_residual;     ///< RMS of p_i - P1 e^(-beta t_i) [Pa]
    std::size_t sample_count;
};

/// Which formula produces the calibration coefficient K.
///
/// FluxScaled (default) returns 2a c^2 G0 / P1: paired with the leak-rate
/// amplitude it forces G(0) = G0 exactly and matches the published value for
/// the bundled scenario. GravityScaled returns 2a c^2 G0 / (g P1), the strict
/// dimensionless form.
enum class KMode { FluxScaled, GravityScaled };

/// Calibration coefficient K from the steady state. Throws InvalidBoundary
/// for P1 <= 0.
double calibrate_k(const PipelineSpec& spec, const FlowBoundary& boundary,
                   KMode mode = KMode::FluxScaled);

/// Leak mass-flux G0 * e^(-beta t)  [Pa*s/m]. The calibration pins the
/// initial rate to the base flux G0 regardless of K mode. Throws InvalidTime
/// for t < 0.
double leak_rate(const PipelineSpec& spec, const FlowBoundary& boundary,
                 const LeakScenario& scenario, double t);

/// Modeled inlet pressure P1 * e^(-beta t)  [Pa].
double inlet_model(double P1, double beta, double t);

/// Fits the decay rate of a pressure series against the model
/// p(t) = P1 e^(-beta t).
///
/// LogLinearThroughOrigin: beta = -sum(t_i ln(p_i/P1)) / sum(t_i^2) over
/// samples with t_i > 0 (the t = 0 sample contributes nothing to a
/// through-origin slope). NonlinearLS: minimizes sum (p_i - P1 e^(-beta t_i))^2
/// by a bracketed scalar search seeded from the log-linear estimate; all
/// samples participate. Both report the RMS residual of the fitted curve over
/// the full series.
///
/// Throws InsufficientData (< 3 samples), NonDecayingData (some p_i exceeds
/// P1 * (1 + 1e-6)), DegenerateTimes (no sample has t > 0).
BetaFit fit_beta(const PressureSeries& series, double P1,
                 BetaMethod method = BetaMethod::LogLinearThroughOrigin);

/// One-line report comparing a fit against an externally quoted decay rate;
/// used by tooling to surface disagreement instead of hiding it.
std::string beta_comparison_note(const BetaFit& fit, double reference_beta);

}  // namespace pipeleak
