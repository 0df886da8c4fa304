#pragma once

#include <Eigen/Dense>
#include <string>
#include <vector>

#include "flapevo/errors.hpp"

namespace flapevo {

// One articulated wing segment. Lengths are kept in millimetres at this level
// because that is the unit the designs are specified and manufactured in; the
// simulator converts to SI internally.
struct BladeSpec {
    double span_offset_mm = 0.0;  // spar length from the inboard joint to the next joint / tip
    double chord_mm = 0.0;        // plate depth, leading-edge spar to trailing edge
    double k_twist = 0.0;         // joint spring stiffness about the span axis, N*m/rad
    double k_bend = 0.0;          // joint spring stiffness about the chord axis, N*m/rad
};

// Ordered root-to-tip blade list. A wing with no blades is meaningless, so the
// constructor rejects it; members stay public for plain-data access afterwards.
struct WingPhenotype {
    std::vector<BladeSpec> blades;
    std::string label;

    WingPhenotype() = default;
    explicit WingPhenotype(std::vector<BladeSpec> b, std::string name = "");
};

// Manufacturing materials and the constants derived from them.
struct MaterialConfig {
    double skin_areal_density_kg_m2 = 6.95e-3;  // 5 um film at 1.39 g/cm^3
    double spar_linear_density_kg_m = 0.8e-3;   // 0.8 mm carbon rod
    double spar_diameter_mm = 0.8;
    double rib_rod_diameter_mm = 0.4;           // chordwise stiffener listed in the build sheet
    double wire_section_length_mm = 15.0;       // free length of each torsion-spring wire section
    double wire_shear_modulus_pa = 79.3e9;      // steel spring wire, torsion
    double wire_elastic_modulus_pa = 200e9;     // steel spring wire, bending
    std::vector<double> wire_gauges_mm = {0.10, 0.13, 0.17};
};

struct Interval {
    double lo = 0.0;
    double hi = 0.0;
    double clamp(double v) const { return v < lo ? lo : (v > hi ? hi : v); }
    bool contains(double v) const { return v >= lo && v <= hi; }
};

// Parameter box used for the feasibility objective and for clamping designs
// before simulation. Stiffness bounds span [k(d_min)/2, 2*k(d_max)] over the
// available wire gauges, so evolution explores a continuous superset of what
// manufacture can realize; quantization happens only at export.
struct FeasibleRanges {
    Interval span_offset_mm{30.0, 150.0};
    Interval chord_mm{10.0, 200.0};
    Interval k_twist{0.0, 0.0};
    Interval k_bend{0.0, 0.0};
};

FeasibleRanges default_feasible_ranges(const MaterialConfig& material = MaterialConfig{});

struct Violation {
    std::string parameter;  // e.g. "blade[2].chord_mm"
    double value = 0.0;
    double nearest_feasible = 0.0;
};

struct FeasibilityReport {
    double distance = 0.0;  // Euclidean norm of per-parameter normalized violations
    std::vector<Violation> violations;
    bool feasible() const { return violations.empty(); }
};

// Raised when an operation requires a feasible design but got an infeasible one.
struct InfeasibleError : ConfigError {
    FeasibilityReport report;
    InfeasibleError(const std::string& what, FeasibilityReport r)
        : ConfigError(what), report(std::move(r)) {}
};

// Total span in millimetres (sum of span offsets).
double wing_span(const WingPhenotype& wing);

// Morphological complexity score: mean of normalized blade count and span.
// Throws ConfigError if the inputs fall outside (0, max] on either axis.
double compute_cms(int blade_count, double span_mm, int blade_count_max, double span_max_mm);

// Mass properties of one blade in its local frame: x along the chord from the
// leading-edge spar, y along the span from the inboard joint, z plate normal.
// The plate occupies x in [0, chord], y in [0, span_offset]; the spar rod lies
// on the y axis. mass = skin_areal_density*chord*span + spar_linear_density*span.
struct BladeMassProps {
    double mass_kg = 0.0;
    Eigen::Vector3d com_m = Eigen::Vector3d::Zero();       // centre of mass
    Eigen::Vector3d centroid_m = Eigen::Vector3d::Zero();  // plate area centroid (aero reference)
    Eigen::Matrix3d inertia_com = Eigen::Matrix3d::Zero(); // about the centre of mass, local axes
};

BladeMassProps wing_mass_model(const BladeSpec& blade, const MaterialConfig& material);
double wing_total_mass_kg(const WingPhenotype& wing, const MaterialConfig& material);

// Distance-to-feasible report. Each out-of-range parameter contributes
// (clamp(v) - v) / (hi - lo) to the Euclidean distance; empty violations <=> 0.
FeasibilityReport validate_phenotype(const WingPhenotype& wing, const FeasibleRanges& ranges);

// Copy of the wing with every parameter clamped into the feasible box.
WingPhenotype clamp_to_ranges(const WingPhenotype& wing, const FeasibleRanges& ranges);

enum class SpringAxis { twist, bend };

// Stiffness of one wire section: G*J/L for twist, E*I/L for bend.
double wire_stiffness(double diameter_mm, SpringAxis axis, const MaterialConfig& material);

// Gauge from the material's set whose section stiffness is nearest in log
// space to the requested one. Saturates at the smallest/largest gauge.
double nearest_wire_gauge(double k_required, SpringAxis axis, const MaterialConfig& material);

}  // namespace flapevo
