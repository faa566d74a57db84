#include "pipeleak/analytic.hpp"

#include <cmath>
#include <numbers>
#include <string>

namespace pipeleak {

namespace {

bool half_upstream(LeakAmplitude amplitude) {
    return amplitude == LeakAmplitude::GravityScaledHalfUpstream ||
           amplitude == LeakAmplitude::FluxCalibratedHalfUpstream;
}

bool gravity_scaled(LeakAmplitude amplitude) {
    return amplitude == LeakAmplitude::GravityScaled ||
           amplitude == LeakAmplitude::GravityScaledHalfUpstream;
}

// Source amplitude in Pa/s: K*P1/(2*(2a)*L), including the gravitational
// factor for the gravity-scaled variants.
double source_amplitude(const PipelineSpec& spec, const FlowBoundary& boundary,
                        const LeakScenario& scenario, LeakAmplitude amplitude) {
    double A = scenario.coeff_K * boundary.inlet_pressure_P1 /
               (2.0 * spec.lin_coeff_2a * spec.length_L);
    if (gravity_scaled(amplitude)) A *= spec.gravity_g;
    return A;
}

// Mirror coordinate passed to the cosine eigenfunctions.  At x = 0 the
// intact and upstream arguments coincide, and at the leak the two damaged
// segments join continuously.
double segment_argument(const PipelineSpec& spec, const LeakScenario& scenario,
                        SegmentId segment, double x) {
    switch (segment) {
        case SegmentId::Intact:
            return spec.length_L - scenario.location_l - x;
        case SegmentId::UpstreamOfLeak:
            return spec.length_L - scenario.location_l + x;
        case SegmentId::DownstreamOfLeak:
            return spec.length_L + scenario.location_l - x;
    }
    throw InvalidField("segment_argument: unknown segment");
}

bool in_segment(const PipelineSpec& spec, const LeakScenario& scenario,
                SegmentId segment, double x) {
    switch (segment) {
        case SegmentId::Intact:
            return x >= 0.0 && x <= spec.length_L;
        case SegmentId::UpstreamOfLeak:
            return x >= 0.0 && x <= scenario.location_l;
        case SegmentId::DownstreamOfLeak:
            return x >= scenario.location_l && x <= spec.length_L;
    }
    return false;
}

// Transient drawdown (positive means pressure deficit) at mirror argument
// `arg`, before the amplitude factor.
double leak_bracket(const PipelineSpec& spec, const LeakScenario& scenario,
                    const SeriesConfig& series, double arg, double t) {
    const double alpha = alpha_eigenrate(spec);
    double sum = 0.0;
    double sign = -1.0;  // (-1)^n starting at n = 1
    for (int n = 1; n <= series.n_terms; ++n, sign = -sign) {
        const double rate = alpha * static_cast<double>(n) *
                            static_cast<double>(n);
        sum += sign * series.c_const *
               std::cos(std::numbers::pi * n * arg / spec.length_L) *
               series_kernel(rate, scenario.decay_beta, t,
                             series.degeneracy_tol);
    }
    return leak_ramp(scenario.decay_beta, t) + 2.0 * sum;
}

}  // namespace

void SeriesConfig::validate() const {
    if (n_terms < 1)
        throw InvalidSeries("SeriesConfig: n_terms must be at least 1, got " +
                            std::to_string(n_terms));
    if (!std::isfinite(c_const))
        throw InvalidSeries("SeriesConfig: c_const must be finite");
    if (!(degeneracy_tol > 0.0))
        throw InvalidSeries("SeriesConfig: degeneracy_tol must be positive");
}

const char* amplitude_tag(LeakAmplitude amplitude) {
    switch (amplitude) {
        case LeakAmplitude::GravityScaled:
            return "gravity_scaled";
        case LeakAmplitude::FluxCalibrated:
            return "flux_calibrated";
        case LeakAmplitude::GravityScaledHalfUpstream:
            return "gravity_scaled_half_upstream";
        case LeakAmplitude::FluxCalibratedHalfUpstream:
            return "flux_calibrated_half_upstream";
    }
    return "unknown";
}

double leak_ramp(double beta, double t) {
    if (beta == 0.0) return t;
    return -std::expm1(-beta * t) / beta;
}

double series_kernel(double rate, double beta, double t, double tol) {
    const double scale = std::max(std::abs(rate), std::abs(beta));
    if (std::abs(rate - beta) <= tol * scale) return t * std::exp(-beta * t);
    return std::exp(-beta * t) * (-std::expm1(-(rate - beta) * t)) /
           (rate - beta);
}

double pressure_at(const PipelineSpec& spec, const FlowBoundary& boundary,
                   const LeakScenario& scenario, const SeriesConfig& series,
                   SegmentId segment, double x, double t,
                   LeakAmplitude amplitude) {
    spec.validate();
    boundary.validate(spec);
    scenario.validate(spec);
    series.validate();
    if (t < 0.0)
        throw InvalidTime("pressure_at: t must be nonnegative, got " +
                          std::to_string(t));
    if (!in_segment(spec, scenario, segment, x))
        throw OutOfDomain("pressure_at: x = " + std::to_string(x) +
                          " lies outside the segment");
    const double half =
        (half_upstream(amplitude) && segment == SegmentId::UpstreamOfLeak)
            ? 0.5
            : 1.0;
    const double arg = segment_argument(spec, scenario, segment, x);
    return steady_profile(spec, boundary, x) -
           half * source_amplitude(spec, boundary, scenario, amplitude) *
               leak_bracket(spec, scenario, series, arg, t);
}

ScalarField pressure_field(const PipelineSpec& spec,
                           const FlowBoundary& boundary,
                           const LeakScenario& scenario,
                           const SeriesConfig& series,
                           std::vector<double> x_grid,
                           std::vector<double> t_grid,
                           LeakAmplitude amplitude) {
    spec.validate();
    boundary.validate(spec);
    scenario.validate(spec);
    series.validate();
    if (x_grid.empty() || t_grid.empty())
        throw EmptyGrid("pressure_field: x and t grids must be nonempty");
    if (t_grid.front() < 0.0)
        throw InvalidTime("pressure_field: t grid must be nonnegative");

    const double A = source_amplitude(spec, boundary, scenario, amplitude);
    ScalarField field = ScalarField::make(FieldQuantity::Pressure,
                                          std::move(x_grid), std::move(t_grid));
    field.validate();  // strictly increasing grids
    for (int seg = 0; seg < 3; ++seg) {
        const auto segment = static_cast<SegmentId>(seg);
        const double half =
            (half_upstream(amplitude) && segment == SegmentId::UpstreamOfLeak)
                ? 0.5
                : 1.0;
        for (std::size_t ix = 0; ix < field.nx(); ++ix) {
            const double x = field.x_grid[ix];
            if (!in_segment(spec, scenario, segment, x)) continue;
            const double steady = steady_profile(spec, boundary, x);
            const double arg = segment_argument(spec, scenario, segment, x);
            for (std::size_t it = 0; it < field.nt(); ++it)
                field.at(segment, ix, it) =
                    steady - half * A *
                                 leak_bracket(spec, scenario, series, arg,
                                              field.t_grid[it]);
        }
    }
    return field;
}

ScalarField flux_from_pressure(const PipelineSpec& spec,
                               const ScalarField& pressure) {
    spec.validate();
    pressure.validate();
    if (pressure.quantity != FieldQuantity::Pressure)
        throw InvalidField("flux_from_pressure: input must be a pressure "
                           "field");

    ScalarField flux = ScalarField::make(FieldQuantity::MassFlux,
                                         pressure.x_grid, pressure.t_grid);
    const auto derivative = [&](const std::vector<std::size_t>& cols,
                                std::size_t pos, SegmentId seg,
                                std::size_t it) {
        // Three-point Lagrange derivative on possibly nonuniform spacing.
        const std::size_t c = pos == 0                 ? 0
                              : pos + 1 == cols.size() ? cols.size() - 3
                                                       : pos - 1;
        const double x0 = pressure.x_grid[cols[c]];
        const double x1 = pressure.x_grid[cols[c + 1]];
        const double x2 = pressure.x_grid[cols[c + 2]];
        const double f0 = *pressure.at(seg, cols[c], it);
        const double f1 = *pressure.at(seg, cols[c + 1], it);
        const double f2 = *pressure.at(seg, cols[c + 2], it);
        const double x = pressure.x_grid[cols[pos]];
        return f0 * (2.0 * x - x1 - x2) / ((x0 - x1) * (x0 - x2)) +
               f1 * (2.0 * x - x0 - x2) / ((x1 - x0) * (x1 - x2)) +
               f2 * (2.0 * x - x0 - x1) / ((x2 - x0) * (x2 - x1));
    };

    for (int seg = 0; seg < 3; ++seg) {
        const auto segment = static_cast<SegmentId>(seg);
        for (std::size_t it = 0; it < pressure.nt(); ++it) {
            std::vector<std::size_t> cols;
            for (std::size_t ix = 0; ix < pressure.nx(); ++ix)
                if (pressure.at(segment, ix, it)) cols.push_back(ix);
            if (cols.empty()) continue;
            if (cols.size() < 3)
                throw InsufficientGrid(
                    "flux_from_pressure: segment " + std::to_string(seg) +
                    " is present at fewer than 3 grid columns");
            for (std::size_t pos = 0; pos < cols.size(); ++pos)
                flux.at(segment, cols[pos], it) =
                    -derivative(cols, pos, segment, it) / spec.lin_coeff_2a;
        }
    }
    return flux;
}

double truncation_tail_bound(const PipelineSpec& spec,
                             const FlowBoundary& boundary,
                             const LeakScenario& scenario,
                             const SeriesConfig& series,
                             LeakAmplitude amplitude) {
    spec.validate();
    boundary.validate(spec);
    scenario.validate(spec);
    series.validate();
    const double alpha = alpha_eigenrate(spec);
    const double beta = scenario.decay_beta;
    const double n1 = static_cast<double>(series.n_terms) + 1.0;
    if (!(alpha * n1 * n1 > beta))
        throw InvalidSeries(
            "truncation_tail_bound: first omitted eigenrate does not exceed "
            "the leak decay rate; the bound diverges");

    // Sum 1/(alpha*n^2 - beta) over omitted modes; after an explicit block,
    // close with the integral remainder.
    double sum = 0.0;
    const long long n_explicit = series.n_terms + 100000;
    for (long long n = series.n_terms + 1; n <= n_explicit; ++n) {
        const double nn = static_cast<double>(n);
        sum += 1.0 / (alpha * nn * nn - beta);
    }
    const double M = static_cast<double>(n_explicit) + 0.5;
    if (beta > 0.0) {
        const double d = std::sqrt(beta / alpha);
        sum += std::log((M + d) / (M - d)) / (2.0 * alpha * d);
    } else {
        sum += 1.0 / (alpha * M);
    }
    return 2.0 * std::abs(series.c_const) *
           std::abs(source_amplitude(spec, boundary, scenario, amplitude)) *
           sum;
}

}  // namespace pipeleak
