#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "flapevo/cppn.hpp"
#include "flapevo/rng.hpp"
#include "flapevo/wing.hpp"

namespace flapevo {

// One queried station along the span. The position is the spar length this
// blade adds; similarity expresses how alike neighbouring stations should be
// and is fed to the network as its second input. Positions are stored
// unclamped: the feasibility objective, not the representation, polices the
// 30..150 mm manufacturing window.
struct ExpressionEntry {
    double position_mm = 0.0;
    double similarity = 0.0;  // kept in [0, 1]
};

// Output range mapping used by expression. Chord interpolates linearly;
// stiffness interpolates in log space because the gauge set spans decades.
struct ExpressionRanges {
    Interval chord_mm{10.0, 200.0};
    Interval k_twist{0.0, 0.0};
    Interval k_bend{0.0, 0.0};
};

ExpressionRanges expression_ranges(const FeasibleRanges& ranges);

struct Genotype {
    Cppn cppn;
    std::vector<ExpressionEntry> entries;  // at least one
    int age = 0;                           // generations survived (age-fitness-Pareto)
    std::uint64_t lineage = 0;             // fresh id per variation event; diagnostic only
};

// Decode a genotype into a wing: one blade per entry, the network queried at
// the blade's normalized cumulative station with the entry's similarity.
WingPhenotype express(const Genotype& genotype, const ExpressionRanges& ranges);

struct MutationWeights {
    double insert_entry = 0.10;
    double remove_entry = 0.10;
    double perturb_entry = 0.30;       // position sigma 10 mm, similarity sigma 0.1
    double perturb_weight = 0.30;      // sigma 0.5
    double add_edge = 0.10;
    double add_node = 0.05;            // split a random edge, NEAT style
    double change_activation = 0.05;
};

// Apply exactly one structural or parametric change, chosen by roulette over
// the weights; primitives that cannot apply (e.g. remove on a single-entry
// genotype) are re-rolled. The child keeps the parent's age.
void mutate(Genotype& genotype, RngStream& rng, const FeasibleRanges& ranges,
            const MutationWeights& weights = {});

// One-point splice of a's entry prefix with b's entry suffix (never empty);
// the network is copied whole from the parent with the higher lift (ties
// break on a coin flip). Child age = max of the parents' ages.
Genotype crossover(const Genotype& a, const Genotype& b, double lift_a, double lift_b,
                   RngStream& rng);

// Entry splice shared by crossover; exposed for boundary-condition tests.
std::vector<ExpressionEntry> splice_entries(const std::vector<ExpressionEntry>& a,
                                            const std::vector<ExpressionEntry>& b,
                                            std::size_t cut_a, std::size_t cut_b);

// 1..6 entries uniform in the feasible window, minimal fully-connected
// network, age 0.
Genotype random_genotype(RngStream& rng, const FeasibleRanges& ranges);

// JSON round trip. Serialization is exact: numbers print with the shortest
// form that reproduces the same double.
std::string serialize(const Genotype& genotype);
Genotype deserialize_genotype(const std::string& text);
void save_genotype(const Genotype& genotype, const std::filesystem::path& path);
Genotype load_genotype(const std::filesystem::path& path);

}  // namespace flapevo
