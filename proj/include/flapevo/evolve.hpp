#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "flapevo/coeff_table.hpp"
#include "flapevo/genotype.hpp"
#include "flapevo/objectives.hpp"
#include "flapevo/sim.hpp"
#include "flapevo/wing.hpp"

namespace flapevo {

// Objective 2 can charge designs for mean positive drive power or for RMS
// drive torque; both are always recorded, the mode picks which one competes.
enum class DriveCostMode { power, torque };
std::string to_string(DriveCostMode mode);
DriveCostMode drive_cost_mode_from_string(const std::string& text);

// Four-objective fitness: lift maximized (clamped to the configured window),
// drive cost / feasibility distance / age minimized. The remaining fields are
// diagnostics carried along for reporting.
struct ObjectiveVector {
    double lift_n = 0.0;
    double drive_cost = 0.0;
    double feasibility = 0.0;
    int age = 0;
    double raw_lift_n = 0.0;  // unclamped simulated lift
    double power_w = 0.0;
    double torque_nm = 0.0;
    bool aborted = false;
};

struct Individual {
    Genotype genotype;
    WingPhenotype phenotype;  // expressed, unclamped; empty when expression degenerates
    ObjectiveVector objectives;
    std::size_t rank = 0;
    double crowding = 0.0;
    bool evaluated = false;
};

// Minimization key vector {-lift, drive_cost, feasibility, age}.
std::vector<double> objective_keys(const ObjectiveVector& o);

struct EvolutionConfig {
    int population = 100;
    int generations = 200;
    double p_crossover = 0.2;
    double p_mutation = 0.8;
    DriveCostMode drive_cost_mode = DriveCostMode::power;
    std::uint64_t seed = 1;
    double lift_clamp_lo_n = 0.01;
    double lift_clamp_hi_n = 0.2;
    int snapshot_every = 0;  // population_gen{N}.jsonl cadence; 0 = final only
    bool parallel = true;    // evaluate offspring across threads when available
    FlapProfile profile;
    SimConfig sim;
    MaterialConfig material;

    void validate() const;  // population even and >= 4, probabilities in [0,1], ...
};

// Immutable per-run evaluation context shared across threads.
struct EvalContext {
    EvolutionConfig config;
    FeasibleRanges ranges;
    ExpressionRanges expr;
    CoefficientTable table;

    explicit EvalContext(EvolutionConfig cfg);
    EvalContext(EvolutionConfig cfg, CoefficientTable coeffs);
};

// Express, measure feasibility, simulate (clamped to bounds if infeasible so
// lift/cost stay informative), clamp lift into the objective window. A
// diverging or degenerate design gets worst-sentinel objectives instead of
// throwing. Pure: identical inputs give bit-identical objectives.
void evaluate(Individual& ind, const EvalContext& ctx);

// Evaluates every not-yet-evaluated member; runs across threads when the
// config allows and the build has the support. Results match the serial path
// bit for bit because each evaluation is independent and pure.
void evaluate_population(std::vector<Individual>& pop, const EvalContext& ctx);

// Fill rank (front index) and crowding for the whole population.
void assign_rank_and_crowding(std::vector<Individual>& pop);

std::vector<Individual> initial_population(const EvalContext& ctx);

// One generational turn: binary-tournament parents, crossover/mutation per the
// configured rates, offspring evaluation, elitist truncation of parents and
// offspring back to size, survivor ages +1, and one fresh age-0 individual
// replacing the weakest member of the last selected front.
std::vector<Individual> next_generation(const std::vector<Individual>& parents,
                                        const EvalContext& ctx, int generation);

struct GenerationSummary {
    int generation = 0;
    double best_lift_n = 0.0;    // best clamped lift among feasible members (0 if none)
    double median_lift_n = 0.0;  // median clamped lift across the population
    std::size_t front0_size = 0;
    std::size_t feasible_count = 0;
};

GenerationSummary summarize(int generation, const std::vector<Individual>& pop);

// Final-front extraction: feasible members only, ages zeroed, re-sorted on
// (lift, drive_cost) alone; returns front 0 sorted by lift descending.
std::vector<Individual> final_ndf(const std::vector<Individual>& pop);

struct RunRecord {
    EvolutionConfig config;
    GenerationSummary initial_summary;          // generation 0, before any turn
    std::vector<GenerationSummary> summaries;   // one per generation
    std::vector<Individual> final_population;
    std::vector<Individual> ndf;
    std::filesystem::path out_dir;
};

// Full run with persistence into out_dir: config.json, generations.csv,
// population_gen{N}.jsonl snapshots, ndf.json, ndf.csv. Deterministic: a rerun
// with the same config writes byte-identical files.
RunRecord run_evolution(const EvolutionConfig& config, const std::filesystem::path& out_dir);

// Config (de)serialization used for snapshots and the CLI config file.
// Missing keys fall back to defaults; unknown keys are rejected.
std::string evolution_config_to_json_text(const EvolutionConfig& config);
EvolutionConfig evolution_config_from_json_text(const std::string& text);
EvolutionConfig load_evolution_config(const std::filesystem::path& path);

// Apply one "section.key=value" override (e.g. "flap.amplitude_deg=0").
void apply_override(EvolutionConfig& config, const std::string& dotted_key,
                    const std::string& value);

}  // namespace flapevo
