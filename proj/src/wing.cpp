#include "flapevo/wing.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace flapevo {

namespace {

constexpr double pi = std::numbers::pi;

void require(bool ok, const std::string& what) {
    if (!ok) throw ConfigError(what);
}

}  // namespace

WingPhenotype::WingPhenotype(std::vector<BladeSpec> b, std::string name)
    : blades(std::move(b)), label(std::move(name)) {
    require(!blades.empty(), "wing phenotype needs at least one blade");
}

double wing_span(const WingPhenotype& wing) {
    double total = 0.0;
    for (const BladeSpec& blade : wing.blades) total += blade.span_offset_mm;
    return total;
}

double compute_cms(int blade_count, double span_mm, int blade_count_max, double span_max_mm) {
    require(blade_count_max >= 1 && span_max_mm > 0.0, "complexity maxima must be positive");
    require(blade_count >= 1, "complexity needs at least one blade");
    require(span_mm > 0.0, "complexity needs positive span");
    require(blade_count <= blade_count_max, "blade count exceeds its normalization maximum");
    require(span_mm <= span_max_mm, "span exceeds its normalization maximum");
    return 0.5 * (static_cast<double>(blade_count) / blade_count_max + span_mm / span_max_mm);
}

BladeMassProps wing_mass_model(const BladeSpec& blade, const MaterialConfig& material) {
    require(blade.span_offset_mm > 0.0, "blade span offset must be positive");
    require(blade.chord_mm >= 0.0, "blade chord must be non-negative");

    const double dr = blade.span_offset_mm * 1e-3;  // m
    const double c = blade.chord_mm * 1e-3;         // m
    const double rs = 0.5 * material.spar_diameter_mm * 1e-3;

    const double m_skin = material.skin_areal_density_kg_m2 * c * dr;
    const double m_spar = material.spar_linear_density_kg_m * dr;

    BladeMassProps props;
    props.mass_kg = m_skin + m_spar;
    props.centroid_m = {0.5 * c, 0.5 * dr, 0.0};
    // Spar sits on the leading edge (x = 0), skin centroid at mid chord.
    const double x_com = props.mass_kg > 0.0 ? m_skin * 0.5 * c / props.mass_kg : 0.0;
    props.com_m = {x_com, 0.5 * dr, 0.0};

    // Thin rectangular plate about its own centroid, plus a thin rod, each
    // shifted to the combined centre of mass (offsets are along x only, so the
    // tensor stays diagonal in the blade frame).
    const double dx_skin = 0.5 * c - x_com;
    const double dx_spar = -x_com;
    double ixx = m_skin * dr * dr / 12.0 + m_spar * (dr * dr / 12.0 + rs * rs / 4.0);
    double iyy = m_skin * c * c / 12.0 + m_spar * rs * rs / 2.0;
    double izz = m_skin * (c * c + dr * dr) / 12.0 + m_spar * (dr * dr / 12.0 + rs * rs / 4.0);
    iyy += m_skin * dx_skin * dx_skin + m_spar * dx_spar * dx_spar;
    izz += m_skin * dx_skin * dx_skin + m_spar * dx_spar * dx_spar;
    props.inertia_com.diagonal() << ixx, iyy, izz;
    return props;
}

double wing_total_mass_kg(const WingPhenotype& wing, const MaterialConfig& material) {
    double total = 0.0;
    for (const BladeSpec& blade : wing.blades) total += wing_mass_model(blade, material).mass_kg;
    return total;
}

FeasibleRanges default_feasible_ranges(const MaterialConfig& material) {
    require(!material.wire_gauges_mm.empty(), "material needs at least one wire gauge");
    const auto [dmin, dmax] =
        std::minmax_element(material.wire_gauges_mm.begin(), material.wire_gauges_mm.end());
    FeasibleRanges ranges;
    ranges.k_twist = {0.5 * wire_stiffness(*dmin, SpringAxis::twist, material),
                      2.0 * wire_stiffness(*dmax, SpringAxis::twist, material)};
    ranges.k_bend = {0.5 * wire_stiffness(*dmin, SpringAxis::bend, material),
                     2.0 * wire_stiffness(*dmax, SpringAxis::bend, material)};
    return ranges;
}

namespace {

void check_parameter(FeasibilityReport& report, const std::string& name, double value,
                     const Interval& range) {
    const double clamped = range.clamp(value);
    if (clamped == value) return;
    report.violations.push_back({name, value, clamped});
    const double width = range.hi - range.lo;
    const double normalized = (clamped - value) / width;
    report.distance += normalized * normalized;
}

}  // namespace

FeasibilityReport validate_phenotype(const WingPhenotype& wing, const FeasibleRanges& ranges) {
    FeasibilityReport report;
    for (std::size_t i = 0; i < wing.blades.size(); ++i) {
        const BladeSpec& blade = wing.blades[i];
        const std::string prefix = "blade[" + std::to_string(i) + "].";
        check_parameter(report, prefix + "span_offset_mm", blade.span_offset_mm, ranges.span_offset_mm);
        check_parameter(report, prefix + "chord_mm", blade.chord_mm, ranges.chord_mm);
        check_parameter(report, prefix + "k_twist", blade.k_twist, ranges.k_twist);
        check_parameter(report, prefix + "k_bend", blade.k_bend, ranges.k_bend);
    }
    report.distance = std::sqrt(report.distance);
    return report;
}

WingPhenotype clamp_to_ranges(const WingPhenotype& wing, const FeasibleRanges& ranges) {
    WingPhenotype clamped = wing;
    for (BladeSpec& blade : clamped.blades) {
        blade.span_offset_mm = ranges.span_offset_mm.clamp(blade.span_offset_mm);
        blade.chord_mm = ranges.chord_mm.clamp(blade.chord_mm);
        blade.k_twist = ranges.k_twist.clamp(blade.k_twist);
        blade.k_bend = ranges.k_bend.clamp(blade.k_bend);
    }
    return clamped;
}

double wire_stiffness(double diameter_mm, SpringAxis axis, const MaterialConfig& material) {
    require(diameter_mm > 0.0, "wire diameter must be positive");
    require(material.wire_section_length_mm > 0.0, "wire section length must be positive");
    const double d = diameter_mm * 1e-3;
    const double length = material.wire_section_length_mm * 1e-3;
    if (axis == SpringAxis::twist) {
        const double polar_moment = pi * d * d * d * d / 32.0;
        return material.wire_shear_modulus_pa * polar_moment / length;
    }
    const double area_moment = pi * d * d * d * d / 64.0;
    return material.wire_elastic_modulus_pa * area_moment / length;
}

double nearest_wire_gauge(double k_required, SpringAxis axis, const MaterialConfig& material) {
    require(k_required > 0.0, "requested stiffness must be positive");
    require(!material.wire_gauges_mm.empty(), "material needs at least one wire gauge");
    double best_gauge = material.wire_gauges_mm.front();
    double best_error = std::numeric_limits<double>::infinity();
    for (double gauge : material.wire_gauges_mm) {
        const double k = wire_stiffness(gauge, axis, material);
        const double error = std::abs(std::log(k) - std::log(k_required));
        if (error < best_error) {
            best_error = error;
            best_gauge = gauge;
        }
    }
    return best_gauge;
}

}  // namespace flapevo
