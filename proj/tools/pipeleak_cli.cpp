// pipeleak — command-line diagnostics for twin-line gas pipelines.
//
// Subcommands wire the library into batch workflows: closed-form simulation,
// finite-difference reconciliation, decay-rate fitting, leak-coefficient
// calibration, leak localization, synthetic scenario generation, and
// profile tables.  All numeric console output is fixed scientific with six
// significant digits; output files are deterministic for fixed inputs.

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "pipeleak/analytic.hpp"
#include "pipeleak/calibration.hpp"
#include "pipeleak/fd.hpp"
#include "pipeleak/localization.hpp"
#include "pipeleak/pipeline.hpp"
#include "pipeleak/scenario_io.hpp"

namespace fs = std::filesystem;
using namespace pipeleak;

namespace {

std::string fmt6(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.5e", v);
    return buf;
}

const char* segment_name(SegmentId seg) {
    switch (seg) {
        case SegmentId::Intact: return "intact";
        case SegmentId::UpstreamOfLeak: return "upstream";
        case SegmentId::DownstreamOfLeak: return "downstream";
    }
    return "unknown";
}

LoadedConfig load_and_warn(const std::string& path) {
    LoadedConfig loaded = load_config(fs::path(path));
    for (const auto& w : loaded.warnings)
        std::cerr << "warning: " << w << "\n";
    return loaded;
}

std::vector<double> x_grid_for(const PipelineSpec& spec, double xstep) {
    if (!(xstep > 0.0))
        throw InvalidConfig("x grid: --xstep must be positive");
    std::vector<double> xs;
    const auto n = static_cast<std::size_t>(
        std::floor(spec.length_L / xstep + 1e-9));
    for (std::size_t k = 0; k <= n; ++k)
        xs.push_back(static_cast<double>(k) * xstep);
    if (xs.back() < spec.length_L - 1e-9 * spec.length_L)
        xs.push_back(spec.length_L);
    return xs;
}

std::vector<double> clean_times(std::vector<double> times) {
    if (times.empty())
        throw InvalidConfig("time grid: --times must not be empty");
    std::sort(times.begin(), times.end());
    times.erase(std::unique(times.begin(), times.end()), times.end());
    return times;
}

void ensure_dir(const std::string& dir) {
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec)
        throw IoError("cannot create directory " + dir + ": " + ec.message());
}

std::ofstream open_out(const fs::path& path) {
    if (path.has_parent_path()) {
        std::error_code ec;
        fs::create_directories(path.parent_path(), ec);
        if (ec)
            throw IoError("cannot create directory " +
                          path.parent_path().string() + ": " + ec.message());
    }
    std::ofstream out(path);
    if (!out) throw IoError("cannot open " + path.string() + " for writing");
    return out;
}

const std::map<std::string, LeakAmplitude>& variant_map() {
    static const std::map<std::string, LeakAmplitude> m = {
        {"gravity_scaled", LeakAmplitude::GravityScaled},
        {"flux_calibrated", LeakAmplitude::FluxCalibrated},
        {"gravity_scaled_half_upstream",
         LeakAmplitude::GravityScaledHalfUpstream},
        {"flux_calibrated_half_upstream",
         LeakAmplitude::FluxCalibratedHalfUpstream}};
    return m;
}

int exit_code_for(const Error& e) {
    switch (e.kind()) {
        case ErrorKind::InvalidInput: return 2;
        case ErrorKind::NoResult: return 3;
        case ErrorKind::Io: return 4;
    }
    return 2;
}

struct SimulateOpts {
    std::string config, out;
    double xstep = 1000.0;
    std::vector<double> times = {0, 100, 200, 300, 400, 500, 600};
    LeakAmplitude variant = kReconciledAmplitude;
};

void run_simulate(const SimulateOpts& o) {
    const LoadedConfig loaded = load_and_warn(o.config);
    const ScenarioBundle& b = loaded.bundle;
    const ScalarField field =
        pressure_field(b.spec, b.boundary, b.scenario, b.series,
                       x_grid_for(b.spec, o.xstep), clean_times(o.times),
                       o.variant);
    ensure_dir(o.out);
    const fs::path table_path = fs::path(o.out) / "pressure_profile.csv";
    auto out = open_out(table_path);
    write_profile_table(out, field);

    std::cout << "variant = " << amplitude_tag(o.variant) << "\n";
    std::cout << "alpha = " << fmt6(alpha_eigenrate(b.spec)) << " 1/s\n";
    std::cout << "series_tail_bound = "
              << fmt6(truncation_tail_bound(b.spec, b.boundary, b.scenario,
                                            b.series, o.variant))
              << " Pa\n";
    std::cout << "wrote " << table_path.string() << "\n";
}

struct OracleOpts {
    std::string config, out;
    std::size_t nx = 2001;
    double dt = 0.5;
    double t_end = 600.0;
    FdScheme scheme = FdScheme::CrankNicolson;
};

void run_oracle(const OracleOpts& o) {
    const LoadedConfig loaded = load_and_warn(o.config);
    const ScenarioBundle& b = loaded.bundle;
    FdConfig config;
    config.nx_per_line = o.nx;
    config.dt = o.dt;
    config.t_end = o.t_end;
    config.scheme = o.scheme;
    const ReconciliationOutcome outcome =
        reconcile_amplitude(b.spec, b.boundary, b.scenario, b.series, config);

    ensure_dir(o.out);
    const fs::path report_path = fs::path(o.out) / "reconciliation.csv";
    auto out = open_out(report_path);
    out << "variant,max_rel,mean_rel,worst_segment,worst_x_m,worst_t_s\n";
    for (const auto& r : outcome.reports) {
        out << r.variant_tag << ',' << fmt6(r.max_rel) << ','
            << fmt6(r.mean_rel) << ',' << segment_name(r.worst_segment) << ','
            << fmt6(r.worst_x) << ',' << fmt6(r.worst_t) << '\n';
        std::cout << r.variant_tag << ": max_rel = " << fmt6(r.max_rel)
                  << ", mean_rel = " << fmt6(r.mean_rel) << "\n";
    }
    if (!out) throw IoError("cannot write " + report_path.string());
    std::cout << "selected: " << amplitude_tag(outcome.selected) << "\n";
    std::cout << "wrote " << report_path.string() << "\n";
}

struct FitBetaOpts {
    std::string series;
    BetaMethod method = BetaMethod::LogLinearThroughOrigin;
    double p1 = 0.0;
    bool p1_set = false;
    double reference_beta = 0.0;
    bool reference_set = false;
};

void run_fit_beta(const FitBetaOpts& o) {
    const PressureSeries series = read_series(fs::path(o.series));
    const double p1 = o.p1_set ? o.p1 : series.samples.front().p;
    const BetaFit fit = fit_beta(series, p1, o.method);
    std::cout << "method = "
              << (fit.method == BetaMethod::LogLinearThroughOrigin
                      ? "loglinear"
                      : "nls")
              << "\n";
    std::cout << "beta = " << fmt6(fit.beta) << " 1/s\n";
    std::cout << "rms_residual = " << fmt6(fit.rms_residual) << " Pa\n";
    std::cout << "samples = " << fit.sample_count << "\n";
    if (o.reference_set)
        std::cout << beta_comparison_note(fit, o.reference_beta) << "\n";
}

struct CalibrateOpts {
    std::string config;
    KMode mode = KMode::FluxScaled;
};

void run_calibrate(const CalibrateOpts& o) {
    const LoadedConfig loaded = load_and_warn(o.config);
    const ScenarioBundle& b = loaded.bundle;
    std::cout << "mode = "
              << (o.mode == KMode::FluxScaled ? "flux_scaled"
                                              : "gravity_scaled")
              << "\n";
    std::cout << "K = " << fmt6(calibrate_k(b.spec, b.boundary, o.mode))
              << "\n";
}

struct LocalizeOpts {
    std::string series, config, out;
    WindowPolicy window = WindowPolicy::DelayScaled;
    double step = 1000.0;
    bool no_refine = false;
};

void run_localize(const LocalizeOpts& o) {
    const LoadedConfig loaded = load_and_warn(o.config);
    const ScenarioBundle& b = loaded.bundle;
    const PressureSeries observed = read_series(fs::path(o.series));
    SearchConfig search;
    search.window_policy = o.window;
    search.l_grid_step = o.step;
    search.refine = !o.no_refine;
    const LocalizationResult result = localize(b.spec, b.boundary, b.scenario,
                                               b.series, observed, search);

    std::cout << "l_hat = " << fmt6(result.l_hat) << " m\n";
    std::cout << "window = [" << fmt6(result.window.first) << ", "
              << fmt6(result.window.second) << "] s\n";
    if (result.intersection_time)
        std::cout << "intersection_time = " << fmt6(*result.intersection_time)
                  << " s\n";
    else
        std::cout << "intersection_time = none\n";
    std::cout << "beta_used = " << fmt6(result.beta_used) << " 1/s\n";

    if (o.out.empty()) return;
    ensure_dir(o.out);
    const fs::path curve_path = fs::path(o.out) / "objective_curve.csv";
    {
        auto out = open_out(curve_path);
        out << "l_m,mismatch\n";
        for (const auto& [l, mm] : result.objective_curve)
            out << fmt6(l) << ',' << fmt6(mm) << '\n';
        if (!out) throw IoError("cannot write " + curve_path.string());
    }

    // Normalized curves at the estimate, over the admissible window samples.
    const double tau = wave_delay(result.l_hat, b.spec.sound_speed_c);
    std::vector<double> ts, lhs, rhs;
    for (double t = std::ceil(result.window.first);
         t <= std::floor(result.window.second) + 0.5; t += 1.0) {
        if (t < tau) continue;
        LeakScenario candidate{result.l_hat, b.scenario.coeff_K,
                               result.beta_used};
        ts.push_back(t);
        lhs.push_back(lhs_series(b.spec, candidate, b.series, t));
        rhs.push_back(rhs_curve(b.spec, b.boundary, candidate, t));
    }
    const fs::path norm_path = fs::path(o.out) / "normalized_curves.csv";
    auto out = open_out(norm_path);
    write_plot_data(out, {{"lhs_normalized", ts, normalize_curve(lhs)},
                          {"rhs_normalized", ts, normalize_curve(rhs)}});
    std::cout << "wrote " << curve_path.string() << " and "
              << norm_path.string() << "\n";
}

struct GenScenarioOpts {
    std::string config, out;
    double noise = 0.0;
    std::uint64_t seed = 0;
    ForwardSource source = ForwardSource::AnalyticForward;
    double t_start = 0.0, t_end = 1500.0, dt = 300.0;
};

void run_gen_scenario(const GenScenarioOpts& o) {
    const LoadedConfig loaded = load_and_warn(o.config);
    const PressureSeries series =
        synth_series(loaded.bundle, Sampling{o.t_start, o.t_end, o.dt},
                     o.source, NoiseSpec{o.noise, o.seed});
    write_series(fs::path(o.out), series);
    std::cout << "wrote " << o.out << " (" << series.samples.size()
              << " samples)\n";
}

struct ProfileOpts {
    std::string config, out;
    std::vector<double> times = {100, 300, 600};
    double xstep = 5000.0;
    LeakAmplitude variant = kReconciledAmplitude;
};

void run_profile(const ProfileOpts& o) {
    const LoadedConfig loaded = load_and_warn(o.config);
    const ScenarioBundle& b = loaded.bundle;
    const ScalarField field =
        pressure_field(b.spec, b.boundary, b.scenario, b.series,
                       x_grid_for(b.spec, o.xstep), clean_times(o.times),
                       o.variant);
    auto out = open_out(fs::path(o.out));
    write_profile_table(out, field);
    std::cout << "wrote " << o.out << "\n";
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Twin-line gas pipeline leak diagnostics"};
    app.require_subcommand(1);

    const std::map<std::string, WindowPolicy> window_map = {
        {"fixed", WindowPolicy::FixedWindow},
        {"delay", WindowPolicy::DelayScaled}};
    const std::map<std::string, FdScheme> scheme_map = {
        {"cn", FdScheme::CrankNicolson}, {"ie", FdScheme::ImplicitEuler}};
    const std::map<std::string, BetaMethod> method_map = {
        {"loglinear", BetaMethod::LogLinearThroughOrigin},
        {"nls", BetaMethod::NonlinearLS}};
    const std::map<std::string, ForwardSource> source_map = {
        {"analytic", ForwardSource::AnalyticForward},
        {"fd", ForwardSource::FdForward},
        {"exponential", ForwardSource::PureExponential}};

    SimulateOpts sim;
    auto* simulate =
        app.add_subcommand("simulate", "Closed-form pressure field table");
    simulate->add_option("--config", sim.config, "Scenario config file")
        ->required()
        ->check(CLI::ExistingFile);
    simulate->add_option("--out", sim.out, "Output directory")->required();
    simulate->add_option("--xstep", sim.xstep, "Grid spacing in meters");
    simulate->add_option("--times", sim.times, "Snapshot times in seconds")
        ->delimiter(',');
    simulate
        ->add_option("--variant", sim.variant, "Leak amplitude variant")
        ->transform(CLI::CheckedTransformer(variant_map()));
    simulate->callback([&] { run_simulate(sim); });

    OracleOpts ora;
    auto* oracle = app.add_subcommand(
        "oracle", "Finite-difference reconciliation of amplitude variants");
    oracle->add_option("--config", ora.config, "Scenario config file")
        ->required()
        ->check(CLI::ExistingFile);
    oracle->add_option("--out", ora.out, "Output directory")->required();
    oracle->add_option("--nx", ora.nx, "Grid nodes per line");
    oracle->add_option("--dt", ora.dt, "Time step in seconds");
    oracle->add_option("--t-end", ora.t_end, "End time in seconds");
    oracle->add_option("--scheme", ora.scheme, "Time scheme")
        ->transform(CLI::CheckedTransformer(scheme_map));
    oracle->callback([&] { run_oracle(ora); });

    FitBetaOpts fitb;
    auto* fitbeta = app.add_subcommand(
        "fit-beta", "Fit the inlet decay rate from a pressure series");
    fitbeta->add_option("--series", fitb.series, "CSV series (t_s,p_pa)")
        ->required()
        ->check(CLI::ExistingFile);
    fitbeta->add_option("--method", fitb.method, "Fit method")
        ->transform(CLI::CheckedTransformer(method_map));
    auto* p1_opt = fitbeta->add_option(
        "--p1", fitb.p1, "Initial pressure (default: first sample)");
    auto* ref_opt = fitbeta->add_option("--reference-beta", fitb.reference_beta,
                                        "Reference rate to compare against");
    fitbeta->callback([&] {
        fitb.p1_set = p1_opt->count() > 0;
        fitb.reference_set = ref_opt->count() > 0;
        run_fit_beta(fitb);
    });

    CalibrateOpts cal;
    auto* calibrate =
        app.add_subcommand("calibrate", "Leak coefficient K for a scenario");
    calibrate->add_option("--config", cal.config, "Scenario config file")
        ->required()
        ->check(CLI::ExistingFile);
    calibrate->add_option("--mode", cal.mode, "Calibration mode")
        ->transform(CLI::CheckedTransformer(std::map<std::string, KMode>{
            {"flux", KMode::FluxScaled}, {"gravity", KMode::GravityScaled}}));
    calibrate->callback([&] { run_calibrate(cal); });

    LocalizeOpts loc;
    auto* localize_cmd = app.add_subcommand(
        "localize", "Estimate the leak location from an inlet series");
    localize_cmd->add_option("--series", loc.series, "CSV series (t_s,p_pa)")
        ->required()
        ->check(CLI::ExistingFile);
    localize_cmd->add_option("--config", loc.config, "Scenario config file")
        ->required()
        ->check(CLI::ExistingFile);
    localize_cmd->add_option("--window", loc.window, "Window policy")
        ->transform(CLI::CheckedTransformer(window_map));
    localize_cmd->add_option("--step", loc.step,
                             "Candidate grid spacing in meters");
    localize_cmd->add_flag("--no-refine", loc.no_refine,
                           "Skip the 100 m refinement scan");
    localize_cmd->add_option("--out", loc.out,
                             "Directory for objective/curve CSV output");
    localize_cmd->callback([&] { run_localize(loc); });

    GenScenarioOpts gen;
    auto* genscen = app.add_subcommand(
        "gen-scenario", "Generate a synthetic inlet pressure series");
    genscen->add_option("--config", gen.config, "Scenario config file")
        ->required()
        ->check(CLI::ExistingFile);
    genscen->add_option("--out", gen.out, "Output CSV path")->required();
    genscen->add_option("--noise", gen.noise,
                        "Relative noise sigma (multiplicative)");
    genscen->add_option("--seed", gen.seed, "Noise RNG seed");
    genscen->add_option("--source", gen.source, "Forward model")
        ->transform(CLI::CheckedTransformer(source_map));
    genscen->add_option("--t-start", gen.t_start, "First sample time");
    genscen->add_option("--t-end", gen.t_end, "Last sample time");
    genscen->add_option("--dt", gen.dt, "Sample spacing in seconds");
    genscen->callback([&] { run_gen_scenario(gen); });

    ProfileOpts prof;
    auto* profile = app.add_subcommand(
        "profile", "Per-segment pressure table at selected times");
    profile->add_option("--config", prof.config, "Scenario config file")
        ->required()
        ->check(CLI::ExistingFile);
    profile->add_option("--times", prof.times, "Times in seconds")
        ->delimiter(',');
    profile->add_option("--out", prof.out, "Output CSV path")->required();
    profile->add_option("--xstep", prof.xstep, "Row spacing in meters");
    profile->add_option("--variant", prof.variant, "Leak amplitude variant")
        ->transform(CLI::CheckedTransformer(variant_map()));
    profile->callback([&] { run_profile(prof); });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    } catch (const Error& e) {
        std::cerr << "error [" << e.name() << "]: " << e.what() << "\n";
        return exit_code_for(e);
    }
    return 0;
}
