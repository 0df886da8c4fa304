#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "flapevo/coeff_table.hpp"
#include "flapevo/design_io.hpp"
#include "flapevo/errors.hpp"
#include "flapevo/evolve.hpp"
#include "flapevo/manufacture.hpp"
#include "flapevo/sim.hpp"
#include "flapevo/textio.hpp"
#include "flapevo/transfer.hpp"
#include "flapevo/wing.hpp"

namespace fs = std::filesystem;
using namespace flapevo;

namespace {

constexpr double kDegPerRad = 180.0 / 3.14159265358979323846;
constexpr double kMillinewtonPerGram = 9.81;  // reporting convention: 1 g = 9.81 mN

struct CommonOpts {
    std::string config_path;
    std::vector<std::string> overrides;
    std::string coeffs_path;
};

void add_common(CLI::App* cmd, CommonOpts& opts, bool with_coeffs) {
    cmd->add_option("--config", opts.config_path,
                    "JSON config file (sections: evolution, flap, sim, material)")
        ->check(CLI::ExistingFile);
    cmd->add_option("--set", opts.overrides,
                    "Override one config value as section.key=value (repeatable)");
    if (with_coeffs) {
        cmd->add_option("--coeffs", opts.coeffs_path,
                        "Aerodynamic coefficient table CSV (alpha_deg,cl,cd)")
            ->check(CLI::ExistingFile);
    }
}

EvolutionConfig make_config(const CommonOpts& opts) {
    EvolutionConfig cfg;
    if (!opts.config_path.empty()) cfg = load_evolution_config(opts.config_path);
    for (const std::string& kv : opts.overrides) {
        const auto eq = kv.find('=');
        if (eq == std::string::npos) {
            throw ConfigError("--set expects section.key=value, got '" + kv + "'");
        }
        apply_override(cfg, kv.substr(0, eq), kv.substr(eq + 1));
    }
    return cfg;
}

CoefficientTable make_table(const CommonOpts& opts) {
    return opts.coeffs_path.empty() ? CoefficientTable::flat_plate_default()
                                    : CoefficientTable::load_csv(opts.coeffs_path);
}

// Relative output paths resolve under $FLAPEVO_OUT_ROOT when it is set.
fs::path resolve_out(const std::string& out) {
    fs::path p = out;
    if (p.is_relative()) {
        if (const char* root = std::getenv("FLAPEVO_OUT_ROOT")) p = fs::path(root) / p;
    }
    return p;
}

void print_ndf_table(const std::vector<Individual>& ndf, int b_max, double s_max) {
    if (ndf.empty()) {
        std::printf("final front: empty (no feasible member)\n");
        return;
    }
    std::printf("final front (%zu members):\n", ndf.size());
    std::printf("%-8s %3s %9s %10s %10s %11s %6s\n", "label", "B", "S_mm", "lift_mN",
                "power_mW", "torque_mNm", "C_MS");
    for (std::size_t i = 0; i < ndf.size(); ++i) {
        const Individual& ind = ndf[i];
        const int b = static_cast<int>(ind.phenotype.blades.size());
        const double s = wing_span(ind.phenotype);
        std::printf("ndf_%02zu %4d %9.2f %10.3f %10.3f %11.4f %6.3f\n", i, b, s,
                    ind.objectives.lift_n * 1e3, ind.objectives.power_w * 1e3,
                    ind.objectives.torque_nm * 1e3, compute_cms(b, s, b_max, s_max));
    }
}

int cmd_evolve(const CommonOpts& common, EvolutionConfig cfg, const std::string& out,
               bool dump_config) {
    if (dump_config) {
        std::fputs(evolution_config_to_json_text(cfg).c_str(), stdout);
        return 0;
    }
    const fs::path out_dir = resolve_out(out);
    EvalContext ctx(cfg, make_table(common));
    (void)ctx;  // validates config and table before any file is touched
    const RunRecord record = run_evolution(cfg, out_dir);
    std::printf("run directory: %s\n", record.out_dir.string().c_str());
    std::printf("population: %d   generations: %d   seed: %llu\n", cfg.population,
                cfg.generations, static_cast<unsigned long long>(cfg.seed));
    int b_max = 1;
    double s_max = 1.0;
    for (const Individual& ind : record.final_population) {
        if (ind.phenotype.blades.empty()) continue;
        b_max = std::max(b_max, static_cast<int>(ind.phenotype.blades.size()));
        s_max = std::max(s_max, wing_span(ind.phenotype));
    }
    print_ndf_table(record.ndf, b_max, s_max);
    return 0;
}

int cmd_simulate(const CommonOpts& common, const EvolutionConfig& cfg,
                 const std::string& design_path, const std::string& export_path) {
    EvolutionConfig effective = cfg;
    if (!export_path.empty()) effective.sim.record_timeseries = true;
    const FeasibleRanges ranges = default_feasible_ranges(effective.material);
    const LoadedDesign design = load_design(design_path, expression_ranges(ranges));
    const WingPhenotype& wing = design.phenotype;

    std::printf("design: %s (%zu blade(s), span %.2f mm, mass %.3f g)\n",
                wing.label.empty() ? "(unnamed)" : wing.label.c_str(), wing.blades.size(),
                wing_span(wing), wing_total_mass_kg(wing, effective.material) * 1e3);
    const FeasibilityReport report = validate_phenotype(wing, ranges);
    if (!report.feasible()) {
        std::printf("note: design is outside the manufacturable box (distance %.4f); "
                    "simulating as specified\n",
                    report.distance);
    }

    const SimResult result = simulate(wing, effective.material, effective.profile, effective.sim,
                                      make_table(common));
    const double lift_mn = result.lift_mean_n * 1e3;
    std::printf("lift: %.4f mN (%.3f g)\n", lift_mn, lift_mn / kMillinewtonPerGram);
    std::printf("drive power (mean positive): %.4f mW\n", result.drive_power_mean_w * 1e3);
    std::printf("drive torque (RMS): %.5f mNm\n", result.drive_torque_rms_nm * 1e3);
    std::printf("per-cycle lift (mN):");
    for (double v : result.per_cycle_lift_n) std::printf(" %.4f", v * 1e3);
    std::printf("\n");
    std::printf("tare: %.4f mN   steps: %ld   max joint angle: %.3f rad   stop events: %d\n",
                result.tare_n * 1e3, result.steps, result.max_abs_joint_angle_rad,
                result.stop_events);
    if (!export_path.empty()) {
        export_timeseries(result, resolve_out(export_path));
        std::printf("time series written to %s\n", resolve_out(export_path).string().c_str());
    }
    return 0;
}

int cmd_express(const EvolutionConfig& cfg, const std::string& genotype_path,
                std::string out_path, double b_max, double s_max) {
    const FeasibleRanges ranges = default_feasible_ranges(cfg.material);
    const LoadedDesign design = load_design(genotype_path, expression_ranges(ranges));
    if (!design.genotype) {
        throw ConfigError("express needs a genotype file; '" + genotype_path +
                          "' already holds a phenotype");
    }
    const WingPhenotype& wing = design.phenotype;
    if (out_path.empty()) {
        out_path = (fs::path(genotype_path).stem().string() + "_phenotype.json");
    }
    save_phenotype(wing, resolve_out(out_path));

    const double span = wing_span(wing);
    std::printf("expressed %zu blade(s), span %.2f mm, mass %.3f g\n", wing.blades.size(), span,
                wing_total_mass_kg(wing, cfg.material) * 1e3);
    std::printf("%5s %14s %12s %10s %12s %12s\n", "blade", "span_offset_mm", "station_mm",
                "chord_mm", "k_twist", "k_bend");
    double station = 0.0;
    for (std::size_t i = 0; i < wing.blades.size(); ++i) {
        const BladeSpec& b = wing.blades[i];
        station += b.span_offset_mm;
        std::printf("%5zu %14.2f %12.2f %10.2f %12.5g %12.5g\n", i, b.span_offset_mm, station,
                    b.chord_mm, b.k_twist, b.k_bend);
    }
    if (b_max > 0.0 && s_max > 0.0) {
        std::printf("complexity score: %.4f (B_max %.0f, S_max %.0f mm)\n",
                    compute_cms(static_cast<int>(wing.blades.size()), span,
                                static_cast<int>(b_max), s_max),
                    b_max, s_max);
    }
    std::printf("phenotype written to %s\n", resolve_out(out_path).string().c_str());
    return 0;
}

int cmd_analyze(const std::string& csv_path, double l_max, double b_max, double s_max,
                const std::string& out, int max_degree) {
    TransferDataset ds = ingest_transfers(csv_path);
    if (l_max > 0.0) ds.l_max_override_g = l_max;
    if (b_max > 0.0) ds.b_max_override = static_cast<int>(b_max);
    if (s_max > 0.0) ds.s_max_override_mm = s_max;
    ds = annotate(ds);

    std::printf("records: %zu   L_max: %.3f g   B_max: %d   S_max: %.1f mm\n",
                ds.records.size(), ds.l_max_g(), ds.b_max(), ds.s_max_mm());
    std::printf("%-8s %3s %8s %8s %8s %7s %6s\n", "label", "B", "S_mm", "L_S_g", "L_R_g", "STR",
                "C_MS");
    for (const TransferRecord& r : ds.records) {
        std::printf("%-8s %3d %8.1f %8.2f %8.2f %7.3f %6.3f\n", r.label.c_str(), r.blade_count,
                    r.span_mm, r.lift_sim_g, r.lift_real_g, r.str, r.cms);
    }

    const PolyFit fit = polyfit_str(ds, max_degree);
    std::printf("degree scores (lower is better):");
    for (const auto& [deg, score] : fit.scores) std::printf("  %d: %.3f", deg, score);
    std::printf("\n");
    std::printf("selected degree: %d\n", fit.degree);
    std::printf("coefficients (ascending powers):");
    for (double c : fit.coefficients) std::printf(" %.6g", c);
    std::printf("\n");
    const auto threshold = threshold_estimate(fit);
    if (threshold) {
        std::printf("threshold complexity (fitted curve crosses -0.2): %.4f\n", *threshold);
    } else {
        std::printf("threshold complexity: none inside [0, 1]\n");
    }

    const GapEnvelope env = gap_envelope(ds);
    const fs::path out_dir = resolve_out(out);
    export_gap_plot(ds, fit, env, out_dir);
    std::printf("plot files written to %s\n", out_dir.string().c_str());
    return 0;
}

int cmd_manufacture(const EvolutionConfig& cfg, const std::string& design_path,
                    std::string out_base) {
    const FeasibleRanges ranges = default_feasible_ranges(cfg.material);
    const LoadedDesign design = load_design(design_path, expression_ranges(ranges));
    if (out_base.empty()) out_base = fs::path(design_path).stem().string() + "_build";
    const fs::path base = resolve_out(out_base);
    const ManufactureSpec spec = build_manufacture_spec(design.phenotype, cfg.material);
    export_manufacture_spec(spec, base.string() + ".json", base.string() + ".txt");
    std::fputs(manufacture_to_text(spec).c_str(), stdout);
    std::printf("build sheet written to %s.json and %s.txt\n", base.string().c_str(),
                base.string().c_str());
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Evolutionary design, simulation and transfer analysis of elastic articulated "
                 "flapping wings"};
    app.option_defaults()->always_capture_default();
    app.require_subcommand(1);

    // evolve
    CommonOpts evolve_common;
    int pop = 100, gens = 200, snapshot_every = 0;
    std::uint64_t seed = 1;
    std::string drive_cost = "power", evolve_out = "run";
    bool serial = false, dump_config = false;
    CLI::App* evolve = app.add_subcommand("evolve", "Run the multi-objective wing designer");
    add_common(evolve, evolve_common, true);
    CLI::Option* opt_pop = evolve->add_option("--pop", pop, "Population size (even, >= 4)");
    CLI::Option* opt_gens = evolve->add_option("--gens", gens, "Number of generations");
    CLI::Option* opt_seed = evolve->add_option("--seed", seed, "Random seed");
    CLI::Option* opt_drive =
        evolve->add_option("--drive-cost", drive_cost, "Drive cost objective: power or torque")
            ->check(CLI::IsMember({"power", "torque"}));
    CLI::Option* opt_snap = evolve->add_option(
        "--snapshot-every", snapshot_every, "Write a population snapshot every K generations");
    evolve->add_option("--out", evolve_out, "Run directory (under $FLAPEVO_OUT_ROOT if relative)");
    CLI::Option* opt_serial =
        evolve->add_flag("--serial", serial, "Evaluate on one thread (results are identical)");
    evolve->add_flag("--dump-config", dump_config,
                     "Print the effective config as JSON and exit");

    // simulate
    CommonOpts sim_common;
    std::string sim_design, sim_export;
    double amplitude_deg = 40.0, frequency_hz = 5.0, dt_s = 1e-4, duration_s = 2.0,
           damping = 1e-5;
    int settle = 5, average = 5;
    CLI::App* simulate_cmd =
        app.add_subcommand("simulate", "Simulate one design (genotype or phenotype file)");
    add_common(simulate_cmd, sim_common, true);
    simulate_cmd->add_option("design", sim_design, "Design JSON file")
        ->required()
        ->check(CLI::ExistingFile);
    CLI::Option* opt_amp =
        simulate_cmd->add_option("--amplitude", amplitude_deg, "Stroke amplitude, degrees");
    CLI::Option* opt_freq =
        simulate_cmd->add_option("--frequency", frequency_hz, "Flap frequency, Hz");
    CLI::Option* opt_dt = simulate_cmd->add_option("--dt", dt_s, "Integration step, seconds");
    CLI::Option* opt_dur =
        simulate_cmd->add_option("--duration", duration_s, "Simulated time, seconds");
    CLI::Option* opt_damp =
        simulate_cmd->add_option("--damping", damping, "Joint damping, N*m*s/rad");
    CLI::Option* opt_settle =
        simulate_cmd->add_option("--settle", settle, "Cycles discarded before averaging");
    CLI::Option* opt_avg =
        simulate_cmd->add_option("--average", average, "Cycles included in the averages");
    simulate_cmd->add_option("--export", sim_export, "Write the time series CSV here");

    // express
    CommonOpts express_common;
    std::string express_genotype, express_out;
    double express_bmax = 0.0, express_smax = 0.0;
    CLI::App* express_cmd =
        app.add_subcommand("express", "Decode a genotype into a wing phenotype file");
    add_common(express_cmd, express_common, false);
    express_cmd->add_option("genotype", express_genotype, "Genotype JSON file")
        ->required()
        ->check(CLI::ExistingFile);
    express_cmd->add_option("--out", express_out,
                            "Phenotype output path (default: <stem>_phenotype.json)");
    express_cmd->add_option("--bmax", express_bmax, "Blade-count maximum for the complexity score");
    express_cmd->add_option("--smax", express_smax, "Span maximum (mm) for the complexity score");

    // analyze
    std::string analyze_csv, analyze_out = "analysis";
    double analyze_lmax = 0.0, analyze_bmax = 0.0, analyze_smax = 0.0;
    int analyze_degree = 4;
    CLI::App* analyze_cmd = app.add_subcommand(
        "analyze", "Compute transfer disparity metrics, fit the gap curve, emit plot files");
    analyze_cmd->add_option("transfers", analyze_csv, "Transfer records CSV")
        ->required()
        ->check(CLI::ExistingFile);
    analyze_cmd->add_option("--lmax", analyze_lmax, "Override normalizing max simulated lift (g)");
    analyze_cmd->add_option("--bmax", analyze_bmax, "Override normalizing max blade count");
    analyze_cmd->add_option("--smax", analyze_smax, "Override normalizing max span (mm)");
    analyze_cmd->add_option("--out", analyze_out, "Directory for the plot files");
    analyze_cmd->add_option("--max-degree", analyze_degree, "Highest candidate fit degree");

    // manufacture
    CommonOpts manu_common;
    std::string manu_design, manu_out;
    CLI::App* manu_cmd =
        app.add_subcommand("manufacture", "Export a build sheet for a manufacturable design");
    add_common(manu_cmd, manu_common, false);
    manu_cmd->add_option("design", manu_design, "Design JSON file (genotype or phenotype)")
        ->required()
        ->check(CLI::ExistingFile);
    manu_cmd->add_option("--out", manu_out, "Output base path (default: <stem>_build)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (*evolve) {
            EvolutionConfig cfg = make_config(evolve_common);
            if (opt_pop->count() > 0) cfg.population = pop;
            if (opt_gens->count() > 0) cfg.generations = gens;
            if (opt_seed->count() > 0) cfg.seed = seed;
            if (opt_drive->count() > 0) cfg.drive_cost_mode = drive_cost_mode_from_string(drive_cost);
            if (opt_snap->count() > 0) cfg.snapshot_every = snapshot_every;
            if (opt_serial->count() > 0) cfg.parallel = !serial;
            return cmd_evolve(evolve_common, cfg, evolve_out, dump_config);
        }
        if (*simulate_cmd) {
            EvolutionConfig cfg = make_config(sim_common);
            if (opt_amp->count() > 0) cfg.profile.amplitude_rad = amplitude_deg / kDegPerRad;
            if (opt_freq->count() > 0) cfg.profile.frequency_hz = frequency_hz;
            if (opt_dt->count() > 0) cfg.sim.dt_s = dt_s;
            if (opt_dur->count() > 0) cfg.sim.duration_s = duration_s;
            if (opt_damp->count() > 0) cfg.sim.joint_damping_nms = damping;
            if (opt_settle->count() > 0) cfg.sim.settle_cycles = settle;
            if (opt_avg->count() > 0) cfg.sim.average_cycles = average;
            return cmd_simulate(sim_common, cfg, sim_design, sim_export);
        }
        if (*express_cmd) {
            return cmd_express(make_config(express_common), express_genotype, express_out,
                               express_bmax, express_smax);
        }
        if (*analyze_cmd) {
            return cmd_analyze(analyze_csv, analyze_lmax, analyze_bmax, analyze_smax, analyze_out,
                               analyze_degree);
        }
        if (*manu_cmd) {
            return cmd_manufacture(make_config(manu_common), manu_design, manu_out);
        }
    } catch (const ConfigError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const IoError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const SimAbort& e) {
        std::cerr << "error: " << e.what() << " at t=" << e.time_s << " s (blade "
                  << e.blade_index << ")\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
