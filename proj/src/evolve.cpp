#include "flapevo/evolve.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <limits>
#include <numbers>
#include <utility>

#include <json.hpp>

#include "flapevo/errors.hpp"
#include "flapevo/rng.hpp"
#include "flapevo/textio.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace flapevo {

namespace {

constexpr double kAbortSentinel = 1e6;

// Sub-stream tags so initialization, offspring variation and injection never
// share random draws, whatever order they run in.
constexpr std::uint64_t kPhaseInit = 0;
constexpr std::uint64_t kPhaseOffspring = 1;
constexpr std::uint64_t kPhaseInject = 2;

using nlohmann::json;
using ordered_json = nlohmann::ordered_json;

ObjectiveVector worst_case_sentinel(int age, const EvalContext& ctx) {
    ObjectiveVector o;
    o.age = age;
    o.lift_n = ctx.config.lift_clamp_lo_n;
    o.raw_lift_n = 0.0;
    o.drive_cost = kAbortSentinel;
    o.power_w = kAbortSentinel;
    o.torque_nm = kAbortSentinel;
    o.feasibility = kAbortSentinel;
    o.aborted = true;
    return o;
}

}  // namespace

std::string to_string(DriveCostMode mode) {
    return mode == DriveCostMode::power ? "power" : "torque";
}

DriveCostMode drive_cost_mode_from_string(const std::string& text) {
    if (text == "power") return DriveCostMode::power;
    if (text == "torque") return DriveCostMode::torque;
    throw ConfigError("unknown drive_cost_mode '" + text + "' (expected power or torque)");
}

std::vector<double> objective_keys(const ObjectiveVector& o) {
    return {-o.lift_n, o.drive_cost, o.feasibility, static_cast<double>(o.age)};
}

void EvolutionConfig::validate() const {
    if (population < 4 || population % 2 != 0) {
        throw ConfigError("population must be even and at least 4");
    }
    if (generations < 1) throw ConfigError("generations must be at least 1");
    if (!(p_crossover >= 0.0 && p_crossover <= 1.0)) {
        throw ConfigError("p_crossover must lie in [0, 1]");
    }
    if (!(p_mutation >= 0.0 && p_mutation <= 1.0)) {
        throw ConfigError("p_mutation must lie in [0, 1]");
    }
    if (!(lift_clamp_lo_n > 0.0) || !(lift_clamp_hi_n > lift_clamp_lo_n)) {
        throw ConfigError("lift clamp window must satisfy 0 < lo < hi");
    }
    if (snapshot_every < 0) throw ConfigError("snapshot_every must be non-negative");
    sim.validate(profile);
}

EvalContext::EvalContext(EvolutionConfig cfg)
    : EvalContext(std::move(cfg), CoefficientTable::flat_plate_default()) {}

EvalContext::EvalContext(EvolutionConfig cfg, CoefficientTable coeffs)
    : config(std::move(cfg)), table(std::move(coeffs)) {
    config.validate();
    table.validate();
    ranges = default_feasible_ranges(config.material);
    expr = expression_ranges(ranges);
}

void evaluate(Individual& ind, const EvalContext& ctx) {
    ObjectiveVector o;
    o.age = ind.genotype.age;
    try {
        ind.phenotype = express(ind.genotype, ctx.expr);
        const FeasibilityReport report = validate_phenotype(ind.phenotype, ctx.ranges);
        o.feasibility = report.distance;
        const WingPhenotype& sim_wing =
            report.feasible() ? ind.phenotype : clamp_to_ranges(ind.phenotype, ctx.ranges);
        const SimResult result =
            simulate(sim_wing, ctx.config.material, ctx.config.profile, ctx.config.sim, ctx.table);
        o.raw_lift_n = result.lift_mean_n;
        o.power_w = result.drive_power_mean_w;
        o.torque_nm = result.drive_torque_rms_nm;
        o.lift_n = std::clamp(result.lift_mean_n, ctx.config.lift_clamp_lo_n,
                              ctx.config.lift_clamp_hi_n);
        o.drive_cost =
            ctx.config.drive_cost_mode == DriveCostMode::power ? o.power_w : o.torque_nm;
    } catch (const SimAbort&) {
        o = worst_case_sentinel(o.age, ctx);
    } catch (const ConfigError&) {
        // Degenerate expressed geometry (e.g. non-positive total span).
        ind.phenotype = WingPhenotype{};
        o = worst_case_sentinel(o.age, ctx);
    }
    ind.objectives = o;
    ind.evaluated = true;
}

void evaluate_population(std::vector<Individual>& pop, const EvalContext& ctx) {
#ifdef _OPENMP
    if (ctx.config.parallel) {
        std::exception_ptr first_error;
        const int n = static_cast<int>(pop.size());
#pragma omp parallel for schedule(dynamic)
        for (int i = 0; i < n; ++i) {
            if (pop[static_cast<std::size_t>(i)].evaluated) continue;
            try {
                evaluate(pop[static_cast<std::size_t>(i)], ctx);
            } catch (...) {
#pragma omp critical
                if (!first_error) first_error = std::current_exception();
            }
        }
        if (first_error) std::rethrow_exception(first_error);
        return;
    }
#endif
    for (Individual& ind : pop) {
        if (!ind.evaluated) evaluate(ind, ctx);
    }
}

void assign_rank_and_crowding(std::vector<Individual>& pop) {
    std::vector<std::vector<double>> keys;
    keys.reserve(pop.size());
    for (const Individual& ind : pop) keys.push_back(objective_keys(ind.objectives));
    const auto fronts = nondominated_sort(keys);
    for (std::size_t f = 0; f < fronts.size(); ++f) {
        const auto distances = crowding_distance(keys, fronts[f]);
        for (std::size_t i = 0; i < fronts[f].size(); ++i) {
            pop[fronts[f][i]].rank = f;
            pop[fronts[f][i]].crowding = distances[i];
        }
    }
}

namespace {

// Binary tournament: lower rank wins, then larger crowding, then a coin.
const Individual& tournament(const std::vector<Individual>& pool, RngStream& rng) {
    const std::size_t n = pool.size();
    std::size_t i = rng.uniform_index(n);
    std::size_t j = rng.uniform_index(n);
    while (n > 1 && j == i) j = rng.uniform_index(n);
    const Individual& a = pool[i];
    const Individual& b = pool[j];
    if (a.rank != b.rank) return a.rank < b.rank ? a : b;
    if (a.crowding != b.crowding) return a.crowding > b.crowding ? a : b;
    return rng.coin() ? a : b;
}

// Elitist truncation order: fronts in rank order; inside a front, larger
// crowding first, then larger lift, then original index. The final element is
// the member with the weakest claim to survival.
std::vector<std::size_t> selection_order(const std::vector<Individual>& pool, std::size_t mu) {
    std::vector<std::vector<double>> keys;
    keys.reserve(pool.size());
    for (const Individual& ind : pool) keys.push_back(objective_keys(ind.objectives));
    const auto fronts = nondominated_sort(keys);
    std::vector<std::size_t> order;
    order.reserve(mu);
    for (const auto& front : fronts) {
        const auto distances = crowding_distance(keys, front);
        std::vector<std::size_t> local(front.size());
        for (std::size_t i = 0; i < local.size(); ++i) local[i] = i;
        std::sort(local.begin(), local.end(), [&](std::size_t a, std::size_t b) {
            if (distances[a] != distances[b]) return distances[a] > distances[b];
            const double lift_a = pool[front[a]].objectives.lift_n;
            const double lift_b = pool[front[b]].objectives.lift_n;
            if (lift_a != lift_b) return lift_a > lift_b;
            return front[a] < front[b];
        });
        for (std::size_t i : local) {
            order.push_back(front[i]);
            if (order.size() == mu) return order;
        }
    }
    return order;  // unreachable when mu <= pool size
}

}  // namespace

std::vector<Individual> initial_population(const EvalContext& ctx) {
    std::vector<Individual> pop(static_cast<std::size_t>(ctx.config.population));
    for (std::size_t i = 0; i < pop.size(); ++i) {
        RngStream rng = RngStream::derive(ctx.config.seed, kPhaseInit, 0, i);
        pop[i].genotype = random_genotype(rng, ctx.ranges);
        pop[i].genotype.lineage = i;
    }
    evaluate_population(pop, ctx);
    return pop;
}

std::vector<Individual> next_generation(const std::vector<Individual>& parents,
                                        const EvalContext& ctx, int generation) {
    const std::size_t mu = static_cast<std::size_t>(ctx.config.population);
    if (parents.size() != mu) throw ConfigError("parent population size mismatch");

    std::vector<Individual> pool = parents;
    assign_rank_and_crowding(pool);

    std::vector<Individual> offspring(mu);
    for (std::size_t i = 0; i < mu; ++i) {
        RngStream rng = RngStream::derive(ctx.config.seed, kPhaseOffspring,
                                          static_cast<std::uint64_t>(generation), i);
        const Individual& pa = tournament(pool, rng);
        const Individual& pb = tournament(pool, rng);
        Genotype child;
        if (rng.uniform01() < ctx.config.p_crossover) {
            child = crossover(pa.genotype, pb.genotype, pa.objectives.raw_lift_n,
                              pb.objectives.raw_lift_n, rng);
        } else {
            child = pa.genotype;
        }
        if (rng.uniform01() < ctx.config.p_mutation) {
            mutate(child, rng, ctx.ranges);
        }
        child.lineage = (static_cast<std::uint64_t>(generation + 1) << 20) | i;
        offspring[i].genotype = std::move(child);
    }
    evaluate_population(offspring, ctx);

    pool.insert(pool.end(), std::make_move_iterator(offspring.begin()),
                std::make_move_iterator(offspring.end()));
    const std::vector<std::size_t> order = selection_order(pool, mu);

    std::vector<Individual> survivors;
    survivors.reserve(mu);
    for (std::size_t idx : order) survivors.push_back(std::move(pool[idx]));
    for (Individual& ind : survivors) {
        ind.genotype.age += 1;
        ind.objectives.age = ind.genotype.age;
    }

    // Age-fitness injection: one fresh age-0 genotype displaces the weakest
    // survivor (last in the truncation order).
    RngStream inject_rng = RngStream::derive(ctx.config.seed, kPhaseInject,
                                             static_cast<std::uint64_t>(generation), 0);
    Individual fresh;
    fresh.genotype = random_genotype(inject_rng, ctx.ranges);
    fresh.genotype.lineage = (static_cast<std::uint64_t>(generation + 1) << 20) | 0xFFFFFu;
    evaluate(fresh, ctx);
    survivors.back() = std::move(fresh);
    return survivors;
}

GenerationSummary summarize(int generation, const std::vector<Individual>& pop) {
    GenerationSummary s;
    s.generation = generation;
    std::vector<double> lifts;
    lifts.reserve(pop.size());
    for (const Individual& ind : pop) {
        lifts.push_back(ind.objectives.lift_n);
        if (ind.objectives.feasibility == 0.0) {
            ++s.feasible_count;
            s.best_lift_n = std::max(s.best_lift_n, ind.objectives.lift_n);
        }
    }
    std::sort(lifts.begin(), lifts.end());
    if (!lifts.empty()) {
        const std::size_t m = lifts.size();
        s.median_lift_n =
            (m % 2 == 1) ? lifts[m / 2] : 0.5 * (lifts[m / 2 - 1] + lifts[m / 2]);
    }
    std::vector<std::vector<double>> keys;
    keys.reserve(pop.size());
    for (const Individual& ind : pop) keys.push_back(objective_keys(ind.objectives));
    const auto fronts = nondominated_sort(keys);
    s.front0_size = fronts.empty() ? 0 : fronts[0].size();
    return s;
}

std::vector<Individual> final_ndf(const std::vector<Individual>& pop) {
    std::vector<Individual> feasible;
    for (const Individual& ind : pop) {
        if (ind.objectives.feasibility == 0.0) feasible.push_back(ind);
    }
    if (feasible.empty()) {
        std::cerr << "warning: no feasible member in the final population; front is empty\n";
        return {};
    }
    for (Individual& ind : feasible) {
        ind.genotype.age = 0;
        ind.objectives.age = 0;
    }
    std::vector<std::vector<double>> keys;
    keys.reserve(feasible.size());
    for (const Individual& ind : feasible) {
        keys.push_back({-ind.objectives.lift_n, ind.objectives.drive_cost});
    }
    const auto fronts = nondominated_sort(keys);
    std::vector<Individual> front;
    front.reserve(fronts[0].size());
    for (std::size_t idx : fronts[0]) front.push_back(feasible[idx]);
    std::sort(front.begin(), front.end(), [](const Individual& a, const Individual& b) {
        if (a.objectives.lift_n != b.objectives.lift_n) {
            return a.objectives.lift_n > b.objectives.lift_n;
        }
        return a.objectives.drive_cost < b.objectives.drive_cost;
    });
    return front;
}

namespace {

ordered_json objectives_to_json(const ObjectiveVector& o) {
    ordered_json j;
    j["lift_n"] = o.lift_n;
    j["drive_cost"] = o.drive_cost;
    j["feasibility"] = o.feasibility;
    j["age"] = o.age;
    j["raw_lift_n"] = o.raw_lift_n;
    j["power_w"] = o.power_w;
    j["torque_nm"] = o.torque_nm;
    j["aborted"] = o.aborted;
    return j;
}

ordered_json individual_to_json(const Individual& ind) {
    ordered_json j;
    j["blades"] = ind.phenotype.blades.size();
    j["span_mm"] = ind.phenotype.blades.empty() ? 0.0 : wing_span(ind.phenotype);
    j["objectives"] = objectives_to_json(ind.objectives);
    j["genotype"] = json::parse(serialize(ind.genotype));
    return j;
}

void write_text_file(const std::filesystem::path& path, const std::string& text) {
    std::ofstream out(path);
    if (!out) throw IoError("cannot open for writing: " + path.string());
    out << text;
    out.close();
    if (!out) throw IoError("write failed: " + path.string());
}

void write_population_snapshot(const std::filesystem::path& path,
                               const std::vector<Individual>& pop) {
    std::string text;
    for (const Individual& ind : pop) {
        text += individual_to_json(ind).dump();
        text += "\n";
    }
    write_text_file(path, text);
}

// Normalizing maxima for the complexity column: taken across every design in
// the final population, the closest available stand-in for "all designs
// considered" by one run.
std::pair<int, double> population_maxima(const std::vector<Individual>& pop) {
    int b_max = 1;
    double s_max = 0.0;
    for (const Individual& ind : pop) {
        if (ind.phenotype.blades.empty()) continue;
        b_max = std::max(b_max, static_cast<int>(ind.phenotype.blades.size()));
        s_max = std::max(s_max, wing_span(ind.phenotype));
    }
    if (s_max <= 0.0) s_max = 1.0;
    return {b_max, s_max};
}

std::string ndf_label(std::size_t i) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "ndf_%02zu", i);
    return buf;
}

void write_ndf_files(const std::filesystem::path& dir, const std::vector<Individual>& ndf,
                     int b_max, double s_max) {
    ordered_json arr = ordered_json::array();
    std::string csv = "label,B,S_mm,lift_mN,power_mW,torque_mNm,C_MS\n";
    for (std::size_t i = 0; i < ndf.size(); ++i) {
        const Individual& ind = ndf[i];
        const int b = static_cast<int>(ind.phenotype.blades.size());
        const double s = wing_span(ind.phenotype);
        const double cms = compute_cms(b, s, b_max, s_max);
        ordered_json j = individual_to_json(ind);
        j["label"] = ndf_label(i);
        j["cms"] = cms;
        arr.push_back(std::move(j));
        csv += ndf_label(i);
        csv += ',' + std::to_string(b);
        csv += ',' + format_double(s);
        csv += ',' + format_double(ind.objectives.lift_n * 1e3);
        csv += ',' + format_double(ind.objectives.power_w * 1e3);
        csv += ',' + format_double(ind.objectives.torque_nm * 1e3);
        csv += ',' + format_double(cms);
        csv += '\n';
    }
    write_text_file(dir / "ndf.json", arr.dump(2) + "\n");
    write_text_file(dir / "ndf.csv", csv);
}

}  // namespace

RunRecord run_evolution(const EvolutionConfig& config, const std::filesystem::path& out_dir) {
    EvalContext ctx(config);
    std::error_code ec;
    std::filesystem::create_directories(out_dir, ec);
    if (ec) throw IoError("cannot create output directory: " + out_dir.string());

    RunRecord record;
    record.config = ctx.config;
    record.out_dir = out_dir;
    write_text_file(out_dir / "config.json", evolution_config_to_json_text(ctx.config));

    std::ofstream gen_csv(out_dir / "generations.csv");
    if (!gen_csv) throw IoError("cannot open for writing: " + (out_dir / "generations.csv").string());
    gen_csv << "gen,best_lift,median_lift,front0_size,feasible_count\n";

    const int snapshot_every = ctx.config.snapshot_every;
    auto maybe_snapshot = [&](int gen, const std::vector<Individual>& pop, bool final_gen) {
        if ((snapshot_every > 0 && gen % snapshot_every == 0) || final_gen) {
            write_population_snapshot(
                out_dir / ("population_gen" + std::to_string(gen) + ".jsonl"), pop);
        }
    };

    std::vector<Individual> pop = initial_population(ctx);
    record.initial_summary = summarize(0, pop);
    maybe_snapshot(0, pop, false);

    for (int gen = 0; gen < ctx.config.generations; ++gen) {
        pop = next_generation(pop, ctx, gen);
        const GenerationSummary s = summarize(gen + 1, pop);
        record.summaries.push_back(s);
        gen_csv << s.generation << ',' << format_double(s.best_lift_n) << ','
                << format_double(s.median_lift_n) << ',' << s.front0_size << ','
                << s.feasible_count << "\n";
        maybe_snapshot(gen + 1, pop, gen + 1 == ctx.config.generations);
    }
    gen_csv.close();
    if (!gen_csv) throw IoError("write failed: " + (out_dir / "generations.csv").string());

    record.ndf = final_ndf(pop);
    const auto [b_max, s_max] = population_maxima(pop);
    write_ndf_files(out_dir, record.ndf, b_max, s_max);
    record.final_population = std::move(pop);
    return record;
}

namespace {

// Rejects keys that are not part of the schema so typos fail loudly.
void check_known_keys(const json& j, std::initializer_list<const char*> known,
                      const std::string& where) {
    for (const auto& item : j.items()) {
        bool ok = false;
        for (const char* k : known) {
            if (item.key() == k) {
                ok = true;
                break;
            }
        }
        if (!ok) throw ParseError("unknown config key '" + where + item.key() + "'");
    }
}

template <typename T>
void read_if(const json& j, const char* key, T& target) {
    if (j.contains(key)) target = j.at(key).get<T>();
}

constexpr double kDegToRad = std::numbers::pi / 180.0;

}  // namespace

std::string evolution_config_to_json_text(const EvolutionConfig& c) {
    ordered_json j;
    j["format_version"] = 1;
    ordered_json evo;
    evo["population"] = c.population;
    evo["generations"] = c.generations;
    evo["p_crossover"] = c.p_crossover;
    evo["p_mutation"] = c.p_mutation;
    evo["drive_cost_mode"] = to_string(c.drive_cost_mode);
    evo["seed"] = c.seed;
    evo["lift_clamp_lo_n"] = c.lift_clamp_lo_n;
    evo["lift_clamp_hi_n"] = c.lift_clamp_hi_n;
    evo["snapshot_every"] = c.snapshot_every;
    evo["parallel"] = c.parallel;
    j["evolution"] = std::move(evo);
    ordered_json flap;
    flap["frequency_hz"] = c.profile.frequency_hz;
    flap["amplitude_deg"] = c.profile.amplitude_rad / kDegToRad;
    j["flap"] = std::move(flap);
    ordered_json sim;
    sim["dt_s"] = c.sim.dt_s;
    sim["duration_s"] = c.sim.duration_s;
    sim["rho_air_kg_m3"] = c.sim.rho_air_kg_m3;
    sim["gravity_m_s2"] = c.sim.gravity_m_s2;
    sim["joint_damping_nms"] = c.sim.joint_damping_nms;
    sim["settle_cycles"] = c.sim.settle_cycles;
    sim["average_cycles"] = c.sim.average_cycles;
    j["sim"] = std::move(sim);
    ordered_json mat;
    mat["skin_areal_density_kg_m2"] = c.material.skin_areal_density_kg_m2;
    mat["spar_linear_density_kg_m"] = c.material.spar_linear_density_kg_m;
    mat["spar_diameter_mm"] = c.material.spar_diameter_mm;
    mat["rib_rod_diameter_mm"] = c.material.rib_rod_diameter_mm;
    mat["wire_section_length_mm"] = c.material.wire_section_length_mm;
    mat["wire_shear_modulus_pa"] = c.material.wire_shear_modulus_pa;
    mat["wire_elastic_modulus_pa"] = c.material.wire_elastic_modulus_pa;
    mat["wire_gauges_mm"] = c.material.wire_gauges_mm;
    j["material"] = std::move(mat);
    return j.dump(2) + "\n";
}

EvolutionConfig evolution_config_from_json_text(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& e) {
        throw ParseError(std::string("config is not valid JSON: ") + e.what());
    }
    EvolutionConfig c;
    try {
        check_known_keys(j, {"format_version", "evolution", "flap", "sim", "material"}, "");
        if (j.contains("format_version") && j.at("format_version").get<int>() != 1) {
            throw ParseError("unsupported config format_version");
        }
        if (j.contains("evolution")) {
            const json& e = j.at("evolution");
            check_known_keys(e,
                             {"population", "generations", "p_crossover", "p_mutation",
                              "drive_cost_mode", "seed", "lift_clamp_lo_n", "lift_clamp_hi_n",
                              "snapshot_every", "parallel"},
                             "evolution.");
            read_if(e, "population", c.population);
            read_if(e, "generations", c.generations);
            read_if(e, "p_crossover", c.p_crossover);
            read_if(e, "p_mutation", c.p_mutation);
            if (e.contains("drive_cost_mode")) {
                c.drive_cost_mode =
                    drive_cost_mode_from_string(e.at("drive_cost_mode").get<std::string>());
            }
            read_if(e, "seed", c.seed);
            read_if(e, "lift_clamp_lo_n", c.lift_clamp_lo_n);
            read_if(e, "lift_clamp_hi_n", c.lift_clamp_hi_n);
            read_if(e, "snapshot_every", c.snapshot_every);
            read_if(e, "parallel", c.parallel);
        }
        if (j.contains("flap")) {
            const json& f = j.at("flap");
            check_known_keys(f, {"frequency_hz", "amplitude_deg"}, "flap.");
            read_if(f, "frequency_hz", c.profile.frequency_hz);
            if (f.contains("amplitude_deg")) {
                c.profile.amplitude_rad = f.at("amplitude_deg").get<double>() * kDegToRad;
            }
        }
        if (j.contains("sim")) {
            const json& s = j.at("sim");
            check_known_keys(s,
                             {"dt_s", "duration_s", "rho_air_kg_m3", "gravity_m_s2",
                              "joint_damping_nms", "settle_cycles", "average_cycles"},
                             "sim.");
            read_if(s, "dt_s", c.sim.dt_s);
            read_if(s, "duration_s", c.sim.duration_s);
            read_if(s, "rho_air_kg_m3", c.sim.rho_air_kg_m3);
            read_if(s, "gravity_m_s2", c.sim.gravity_m_s2);
            read_if(s, "joint_damping_nms", c.sim.joint_damping_nms);
            read_if(s, "settle_cycles", c.sim.settle_cycles);
            read_if(s, "average_cycles", c.sim.average_cycles);
        }
        if (j.contains("material")) {
            const json& m = j.at("material");
            check_known_keys(m,
                             {"skin_areal_density_kg_m2", "spar_linear_density_kg_m",
                              "spar_diameter_mm", "rib_rod_diameter_mm", "wire_section_length_mm",
                              "wire_shear_modulus_pa", "wire_elastic_modulus_pa",
                              "wire_gauges_mm"},
                             "material.");
            read_if(m, "skin_areal_density_kg_m2", c.material.skin_areal_density_kg_m2);
            read_if(m, "spar_linear_density_kg_m", c.material.spar_linear_density_kg_m);
            read_if(m, "spar_diameter_mm", c.material.spar_diameter_mm);
            read_if(m, "rib_rod_diameter_mm", c.material.rib_rod_diameter_mm);
            read_if(m, "wire_section_length_mm", c.material.wire_section_length_mm);
            read_if(m, "wire_shear_modulus_pa", c.material.wire_shear_modulus_pa);
            read_if(m, "wire_elastic_modulus_pa", c.material.wire_elastic_modulus_pa);
            read_if(m, "wire_gauges_mm", c.material.wire_gauges_mm);
        }
    } catch (const json::exception& e) {
        throw ParseError(std::string("config value has the wrong type: ") + e.what());
    }
    return c;
}

EvolutionConfig load_evolution_config(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open config file: " + path.string());
    std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    return evolution_config_from_json_text(text);
}

void apply_override(EvolutionConfig& c, const std::string& dotted_key, const std::string& value) {
    const auto bad_key = [&]() -> ConfigError {
        return ConfigError("unknown override key '" + dotted_key +
                           "' (use section.key as printed by --dump-config)");
    };
    const auto as_double = [&]() { return parse_double(value, "override " + dotted_key); };
    const auto as_int = [&]() {
        return static_cast<int>(parse_long(value, "override " + dotted_key));
    };
    const auto as_bool = [&]() {
        if (value == "true" || value == "1") return true;
        if (value == "false" || value == "0") return false;
        throw ConfigError("override " + dotted_key + " expects true/false");
    };
    if (dotted_key == "evolution.population") c.population = as_int();
    else if (dotted_key == "evolution.generations") c.generations = as_int();
    else if (dotted_key == "evolution.p_crossover") c.p_crossover = as_double();
    else if (dotted_key == "evolution.p_mutation") c.p_mutation = as_double();
    else if (dotted_key == "evolution.drive_cost_mode")
        c.drive_cost_mode = drive_cost_mode_from_string(value);
    else if (dotted_key == "evolution.seed")
        c.seed = static_cast<std::uint64_t>(parse_long(value, "override " + dotted_key));
    else if (dotted_key == "evolution.lift_clamp_lo_n") c.lift_clamp_lo_n = as_double();
    else if (dotted_key == "evolution.lift_clamp_hi_n") c.lift_clamp_hi_n = as_double();
    else if (dotted_key == "evolution.snapshot_every") c.snapshot_every = as_int();
    else if (dotted_key == "evolution.parallel") c.parallel = as_bool();
    else if (dotted_key == "flap.frequency_hz") c.profile.frequency_hz = as_double();
    else if (dotted_key == "flap.amplitude_deg") c.profile.amplitude_rad = as_double() * kDegToRad;
    else if (dotted_key == "sim.dt_s") c.sim.dt_s = as_double();
    else if (dotted_key == "sim.duration_s") c.sim.duration_s = as_double();
    else if (dotted_key == "sim.rho_air_kg_m3") c.sim.rho_air_kg_m3 = as_double();
    else if (dotted_key == "sim.gravity_m_s2") c.sim.gravity_m_s2 = as_double();
    else if (dotted_key == "sim.joint_damping_nms") c.sim.joint_damping_nms = as_double();
    else if (dotted_key == "sim.settle_cycles") c.sim.settle_cycles = as_int();
    else if (dotted_key == "sim.average_cycles") c.sim.average_cycles = as_int();
    else if (dotted_key == "material.skin_areal_density_kg_m2")
        c.material.skin_areal_density_kg_m2 = as_double();
    else if (dotted_key == "material.spar_linear_density_kg_m")
        c.material.spar_linear_density_kg_m = as_double();
    else if (dotted_key == "material.spar_diameter_mm") c.material.spar_diameter_mm = as_double();
    else if (dotted_key == "material.rib_rod_diameter_mm")
        c.material.rib_rod_diameter_mm = as_double();
    else if (dotted_key == "material.wire_section_length_mm")
        c.material.wire_section_length_mm = as_double();
    else if (dotted_key == "material.wire_shear_modulus_pa")
        c.material.wire_shear_modulus_pa = as_double();
    else if (dotted_key == "material.wire_elastic_modulus_pa")
        c.material.wire_elastic_modulus_pa = as_double();
    else
        throw bad_key();
}

}  // namespace flapevo
