#include "pipeleak/fd.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "pipeleak/detail/banded.hpp"

namespace pipeleak {

namespace {

// Unknown ordering: [p0, u_1, w_1, ..., u_{J-1}, w_{J-1}, p_J] where u is the
// intact line, w the damaged line and the end nodes are shared.  Interleaving
// keeps the coupled system pentadiagonal.
struct Layout {
    std::size_t J;           // cells per line; J+1 nodes
    std::size_t jl;          // leak node index
    double dx;

    std::size_t n() const { return 2 * J; }
    std::size_t p0() const { return 0; }
    std::size_t pJ() const { return 2 * J - 1; }
    std::size_t u(std::size_t i) const { return 2 * i - 1; }
    std::size_t w(std::size_t i) const { return 2 * i; }
};

struct Assembled {
    Layout lay;
    std::vector<double> mass;       // diagonal of M
    detail::BandedMatrix S;         // spatial operator
    std::vector<double> f_const;    // constant part of the load
    std::size_t leak_row;
    double leak_coeff;              // multiplies G(t)
};

Assembled assemble(const PipelineSpec& spec, const FlowBoundary& boundary,
                   const LeakScenario& scenario, const FdConfig& config) {
    Layout lay;
    lay.J = config.nx_per_line - 1;
    lay.dx = spec.length_L / static_cast<double>(lay.J);
    const double snapped = scenario.location_l / lay.dx;
    const auto jl = static_cast<long long>(std::llround(snapped));
    if (std::abs(snapped - static_cast<double>(jl)) > 1e-6)
        throw GridMismatch("fd_solve: leak location " +
                           std::to_string(scenario.location_l) +
                           " m does not coincide with a grid node at dx = " +
                           std::to_string(lay.dx) + " m");
    if (jl <= 0 || jl >= static_cast<long long>(lay.J))
        throw GridMismatch("fd_solve: leak node must be interior");
    lay.jl = static_cast<std::size_t>(jl);

    const double m = spec.lin_coeff_2a;
    const double c2 = spec.sound_speed_c * spec.sound_speed_c;
    const double inv_dx2 = 1.0 / (lay.dx * lay.dx);
    const std::size_t n = lay.n();

    Assembled a{lay,
                std::vector<double>(n, m / c2),
                detail::BandedMatrix(n, 2, 2),
                std::vector<double>(n, 0.0),
                lay.w(lay.jl),
                -m / lay.dx};
    a.mass[lay.p0()] = m / c2 * lay.dx;
    a.mass[lay.pJ()] = m / c2 * lay.dx;

    // Shared end nodes: half-cells of both lines, fed/drained at rate G0.
    a.S(lay.p0(), lay.p0()) = -2.0 / lay.dx;
    a.S(lay.p0(), lay.u(1)) = 1.0 / lay.dx;
    a.S(lay.p0(), lay.w(1)) = 1.0 / lay.dx;
    a.f_const[lay.p0()] = m * boundary.base_mass_flux_G0;

    a.S(lay.pJ(), lay.pJ()) = -2.0 / lay.dx;
    a.S(lay.pJ(), lay.u(lay.J - 1)) = 1.0 / lay.dx;
    a.S(lay.pJ(), lay.w(lay.J - 1)) = 1.0 / lay.dx;
    a.f_const[lay.pJ()] = -m * boundary.base_mass_flux_G0;

    for (std::size_t i = 1; i < lay.J; ++i) {
        const std::size_t left_u = i == 1 ? lay.p0() : lay.u(i - 1);
        const std::size_t right_u = i == lay.J - 1 ? lay.pJ() : lay.u(i + 1);
        a.S(lay.u(i), left_u) += inv_dx2;
        a.S(lay.u(i), lay.u(i)) += -2.0 * inv_dx2;
        a.S(lay.u(i), right_u) += inv_dx2;

        const std::size_t left_w = i == 1 ? lay.p0() : lay.w(i - 1);
        const std::size_t right_w = i == lay.J - 1 ? lay.pJ() : lay.w(i + 1);
        a.S(lay.w(i), left_w) += inv_dx2;
        a.S(lay.w(i), lay.w(i)) += -2.0 * inv_dx2;
        a.S(lay.w(i), right_w) += inv_dx2;
    }
    return a;
}

std::vector<double> load_at(const Assembled& a, const LeakScenario& scenario,
                            const FlowBoundary& boundary, double t) {
    std::vector<double> f = a.f_const;
    f[a.leak_row] += a.leak_coeff * boundary.base_mass_flux_G0 *
                     std::exp(-scenario.decay_beta * t);
    return f;
}

// One theta step of size dt from time t: (M/dt - theta*S) z_next =
// (M/dt + (1-theta)*S) z + theta*f(t+dt) + (1-theta)*f(t).
struct Stepper {
    const Assembled& a;
    double theta;
    double dt;
    detail::BandedMatrix lhs;

    Stepper(const Assembled& a_, double theta_, double dt_)
        : a(a_), theta(theta_), dt(dt_), lhs(a_.lay.n(), 2, 2) {
        for (std::size_t i = 0; i < a.lay.n(); ++i) {
            lhs(i, i) = a.mass[i] / dt;
            const std::size_t lo = i >= 2 ? i - 2 : 0;
            const std::size_t hi = std::min(a.lay.n() - 1, i + 2);
            for (std::size_t j = lo; j <= hi; ++j)
                lhs(i, j) -= theta * a.S.at(i, j);
        }
        lhs.lu_factor();
    }

    void advance(std::vector<double>& z, const LeakScenario& scenario,
                 const FlowBoundary& boundary, double t) const {
        std::vector<double> rhs(a.lay.n());
        if (theta == 1.0) {
            for (std::size_t i = 0; i < a.lay.n(); ++i)
                rhs[i] = a.mass[i] / dt * z[i];
        } else {
            rhs = a.S.multiply(z);
            for (std::size_t i = 0; i < a.lay.n(); ++i)
                rhs[i] = a.mass[i] / dt * z[i] + (1.0 - theta) * rhs[i];
        }
        const auto f_next = load_at(a, scenario, boundary, t + dt);
        for (std::size_t i = 0; i < a.lay.n(); ++i)
            rhs[i] += theta * f_next[i];
        if (theta != 1.0) {
            const auto f_now = load_at(a, scenario, boundary, t);
            for (std::size_t i = 0; i < a.lay.n(); ++i)
                rhs[i] += (1.0 - theta) * f_now[i];
        }
        lhs.lu_solve(rhs);
        z = std::move(rhs);
    }
};

void check_state(const std::vector<double>& z, double t) {
    for (double v : z)
        if (!std::isfinite(v) || !(v > 0.0))
            throw NumericalBlowup(
                "fd_solve: solution left the positive finite range at t = " +
                std::to_string(t));
}

}  // namespace

void FdConfig::validate() const {
    if (nx_per_line < 11)
        throw InvalidConfig("FdConfig: nx_per_line must be at least 11, got " +
                            std::to_string(nx_per_line));
    if (!(dt > 0.0)) throw InvalidConfig("FdConfig: dt must be positive");
    if (!(t_end > 0.0))
        throw InvalidConfig("FdConfig: t_end must be positive");
    if (dt > t_end / 10.0)
        throw InvalidConfig("FdConfig: dt must not exceed t_end/10");
    const double steps = t_end / dt;
    if (std::abs(steps - std::round(steps)) > 1e-6)
        throw InvalidConfig("FdConfig: t_end must be a whole number of steps");
}

ScalarField fd_solve(const PipelineSpec& spec, const FlowBoundary& boundary,
                     const LeakScenario& scenario, const FdConfig& config,
                     std::vector<double> out_times) {
    spec.validate();
    boundary.validate(spec);
    scenario.validate(spec);
    config.validate();

    const auto n_steps = static_cast<long long>(
        std::llround(config.t_end / config.dt));
    if (out_times.empty()) {
        for (int k = 0; k <= 12; ++k)
            out_times.push_back(
                static_cast<double>(std::llround(
                    static_cast<double>(k * n_steps) / 12.0)) *
                config.dt);
        out_times.erase(std::unique(out_times.begin(), out_times.end()),
                        out_times.end());
    }

    std::vector<long long> out_steps;
    for (double t : out_times) {
        const auto k = static_cast<long long>(std::llround(t / config.dt));
        if (std::abs(static_cast<double>(k) * config.dt - t) >
            1e-6 * std::max(config.dt, std::abs(t)))
            throw GridMismatch("fd_solve: requested output time " +
                               std::to_string(t) +
                               " does not land on a completed step");
        if (k < 0 || k > n_steps)
            throw GridMismatch("fd_solve: requested output time " +
                               std::to_string(t) +
                               " lies outside [0, t_end]");
        out_steps.push_back(k);
    }

    const Assembled a = assemble(spec, boundary, scenario, config);
    const Layout& lay = a.lay;

    std::vector<double> x_grid(lay.J + 1);
    for (std::size_t i = 0; i <= lay.J; ++i)
        x_grid[i] = static_cast<double>(i) * lay.dx;
    ScalarField field =
        ScalarField::make(FieldQuantity::Pressure, x_grid, out_times);
    field.validate();  // catches unsorted/duplicate requested times

    std::vector<double> z(lay.n());
    z[lay.p0()] = steady_profile(spec, boundary, 0.0);
    z[lay.pJ()] = steady_profile(spec, boundary, spec.length_L);
    for (std::size_t i = 1; i < lay.J; ++i) {
        const double p = steady_profile(spec, boundary, x_grid[i]);
        z[lay.u(i)] = p;
        z[lay.w(i)] = p;
    }

    const auto snapshot = [&](long long step) {
        for (std::size_t s = 0; s < out_steps.size(); ++s) {
            if (out_steps[s] != step) continue;
            for (std::size_t i = 0; i <= lay.J; ++i) {
                const double u = i == 0        ? z[lay.p0()]
                                 : i == lay.J  ? z[lay.pJ()]
                                               : z[lay.u(i)];
                const double w = i == 0        ? z[lay.p0()]
                                 : i == lay.J  ? z[lay.pJ()]
                                               : z[lay.w(i)];
                field.at(SegmentId::Intact, i, s) = u;
                if (i <= lay.jl) field.at(SegmentId::UpstreamOfLeak, i, s) = w;
                if (i >= lay.jl)
                    field.at(SegmentId::DownstreamOfLeak, i, s) = w;
            }
        }
    };

    snapshot(0);
    long long step = 0;
    if (config.scheme == FdScheme::CrankNicolson && n_steps > 0) {
        // Rannacher start: two implicit-Euler half-steps damp the switch-on
        // transient that plain Crank-Nicolson would carry undamped.
        const Stepper startup(a, 1.0, config.dt / 2.0);
        startup.advance(z, scenario, boundary, 0.0);
        startup.advance(z, scenario, boundary, config.dt / 2.0);
        check_state(z, config.dt);
        step = 1;
        snapshot(step);
    }
    const Stepper main_stepper(
        a, config.scheme == FdScheme::CrankNicolson ? 0.5 : 1.0, config.dt);
    for (; step < n_steps; ++step) {
        main_stepper.advance(z, scenario, boundary,
                             static_cast<double>(step) * config.dt);
        check_state(z, static_cast<double>(step + 1) * config.dt);
        snapshot(step + 1);
    }
    return field;
}

double pde_residual(const PipelineSpec& spec, const LeakScenario& scenario,
                    const ScalarField& field) {
    spec.validate();
    field.validate();
    if (field.quantity != FieldQuantity::Pressure)
        throw InvalidField("pde_residual: input must be a pressure field");
    if (field.nt() < 3)
        throw InsufficientGrid(
            "pde_residual: need at least 3 time slices, got " +
            std::to_string(field.nt()));

    double p_ref = 0.0;
    for (const auto& plane : field.cells)
        for (const auto& cell : plane)
            if (cell) p_ref = std::max(p_ref, std::abs(*cell));
    const double t_span = field.t_grid.back() - field.t_grid.front();
    const double m_over_c2 =
        spec.lin_coeff_2a / (spec.sound_speed_c * spec.sound_speed_c);
    const double scale = m_over_c2 * p_ref / t_span;

    double worst = 0.0;
    for (int seg = 0; seg < 3; ++seg) {
        const auto segment = static_cast<SegmentId>(seg);
        // Segments are present on contiguous column ranges and at all times.
        std::vector<std::size_t> cols;
        for (std::size_t ix = 0; ix < field.nx(); ++ix)
            if (field.at(segment, ix, 0)) cols.push_back(ix);
        if (cols.empty()) continue;
        if (cols.size() < 5)
            throw InsufficientGrid("pde_residual: segment " +
                                   std::to_string(seg) +
                                   " has fewer than 5 grid columns");

        // Two columns either side of the leak node are skipped on the
        // damaged line; the point sink makes the profile kinked there.
        std::ptrdiff_t kink = -10;
        if (segment != SegmentId::Intact) {
            double best = std::numeric_limits<double>::infinity();
            for (std::size_t p = 0; p < cols.size(); ++p) {
                const double d =
                    std::abs(field.x_grid[cols[p]] - scenario.location_l);
                if (d < best) {
                    best = d;
                    kink = static_cast<std::ptrdiff_t>(p);
                }
            }
        }

        for (std::size_t p = 1; p + 1 < cols.size(); ++p) {
            if (segment != SegmentId::Intact &&
                std::abs(static_cast<std::ptrdiff_t>(p) - kink) <= 2)
                continue;
            const double x0 = field.x_grid[cols[p - 1]];
            const double x1 = field.x_grid[cols[p]];
            const double x2 = field.x_grid[cols[p + 1]];
            for (std::size_t it = 1; it + 1 < field.nt(); ++it) {
                const double f0 = *field.at(segment, cols[p - 1], it);
                const double f1 = *field.at(segment, cols[p], it);
                const double f2 = *field.at(segment, cols[p + 1], it);
                const double pxx =
                    2.0 * (f0 / ((x1 - x0) * (x2 - x0)) -
                           f1 / ((x1 - x0) * (x2 - x1)) +
                           f2 / ((x2 - x0) * (x2 - x1)));
                const double t0 = field.t_grid[it - 1];
                const double t1 = field.t_grid[it];
                const double t2 = field.t_grid[it + 1];
                const double g0 = *field.at(segment, cols[p], it - 1);
                const double g2 = *field.at(segment, cols[p], it + 1);
                const double pt =
                    g0 * (t1 - t2) / ((t0 - t1) * (t0 - t2)) +
                    f1 * (2.0 * t1 - t0 - t2) / ((t1 - t0) * (t1 - t2)) +
                    g2 * (t1 - t0) / ((t2 - t0) * (t2 - t1));
                worst = std::max(worst,
                                 std::abs(pxx - m_over_c2 * pt) / scale);
            }
        }
    }
    return worst;
}

DiscrepancyReport compare_fields(const ScalarField& a, const ScalarField& b) {
    a.validate();
    b.validate();
    if (a.quantity != b.quantity)
        throw InvalidField("compare_fields: fields measure different "
                           "quantities");
    if (a.x_grid != b.x_grid || a.t_grid != b.t_grid)
        throw GridMismatch("compare_fields: grids differ");

    DiscrepancyReport report;
    double sum = 0.0;
    std::size_t count = 0;
    for (int seg = 0; seg < 3; ++seg) {
        const auto segment = static_cast<SegmentId>(seg);
        for (std::size_t ix = 0; ix < a.nx(); ++ix)
            for (std::size_t it = 0; it < a.nt(); ++it) {
                const auto& va = a.at(segment, ix, it);
                const auto& vb = b.at(segment, ix, it);
                if (!va || !vb) continue;
                const double denom = std::max(std::abs(*va), std::abs(*vb));
                const double rel =
                    denom > 0.0 ? std::abs(*va - *vb) / denom : 0.0;
                sum += rel;
                ++count;
                if (rel > report.max_rel) {
                    report.max_rel = rel;
                    report.worst_segment = segment;
                    report.worst_x = a.x_grid[ix];
                    report.worst_t = a.t_grid[it];
                }
            }
    }
    if (count == 0)
        throw GridMismatch("compare_fields: fields share no co-present cells");
    report.mean_rel = sum / static_cast<double>(count);
    return report;
}

ReconciliationOutcome reconcile_amplitude(const PipelineSpec& spec,
                                          const FlowBoundary& boundary,
                                          const LeakScenario& scenario,
                                          const SeriesConfig& series,
                                          const FdConfig& config,
                                          std::vector<double> out_times) {
    const ScalarField reference =
        fd_solve(spec, boundary, scenario, config, std::move(out_times));

    ReconciliationOutcome outcome;
    constexpr LeakAmplitude variants[] = {
        LeakAmplitude::GravityScaled, LeakAmplitude::FluxCalibrated,
        LeakAmplitude::GravityScaledHalfUpstream,
        LeakAmplitude::FluxCalibratedHalfUpstream};
    double best = std::numeric_limits<double>::infinity();
    for (LeakAmplitude variant : variants) {
        const ScalarField closed =
            pressure_field(spec, boundary, scenario, series,
                           reference.x_grid, reference.t_grid, variant);
        DiscrepancyReport report = compare_fields(closed, reference);
        report.variant_tag = amplitude_tag(variant);
        if (report.max_rel < best) {
            best = report.max_rel;
            outcome.selected = variant;
        }
        outcome.reports.push_back(std::move(report));
    }
    return outcome;
}

}  // namespace pipeleak
