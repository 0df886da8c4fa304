#include "flapevo/manufacture.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>

#include <json.hpp>

#include "flapevo/errors.hpp"
#include "flapevo/textio.hpp"

namespace flapevo {

ManufactureSpec build_manufacture_spec(const WingPhenotype& wing,
                                       const MaterialConfig& material) {
    const FeasibleRanges ranges = default_feasible_ranges(material);
    FeasibilityReport report = validate_phenotype(wing, ranges);
    if (!report.feasible()) {
        std::string what = "wing is not manufacturable (" +
                           std::to_string(report.violations.size()) + " violation(s)):";
        for (const Violation& v : report.violations) {
            what += "\n  " + v.parameter + " = " + format_double(v.value) +
                    " (nearest feasible " + format_double(v.nearest_feasible) + ")";
        }
        throw InfeasibleError(what, std::move(report));
    }

    ManufactureSpec spec;
    spec.label = wing.label;
    spec.blade_count = static_cast<int>(wing.blades.size());
    spec.span_mm = wing_span(wing);
    spec.estimated_mass_g = wing_total_mass_kg(wing, material) * 1e3;
    spec.spar_rod_diameter_mm = material.spar_diameter_mm;
    spec.spar_rod_length_mm = spec.span_mm;
    spec.rib_rod_diameter_mm = material.rib_rod_diameter_mm;
    spec.wire_section_length_mm = material.wire_section_length_mm;

    std::map<double, WireUsage> usage;
    double station = 0.0;
    for (std::size_t i = 0; i < wing.blades.size(); ++i) {
        const BladeSpec& blade = wing.blades[i];
        station += blade.span_offset_mm;
        RibSpec rib;
        rib.index = static_cast<int>(i);
        rib.station_mm = station;
        rib.chord_mm = blade.chord_mm;
        rib.k_twist_requested = blade.k_twist;
        rib.twist_gauge_mm = nearest_wire_gauge(blade.k_twist, SpringAxis::twist, material);
        rib.k_twist_realized = wire_stiffness(rib.twist_gauge_mm, SpringAxis::twist, material);
        rib.k_bend_requested = blade.k_bend;
        rib.bend_gauge_mm = nearest_wire_gauge(blade.k_bend, SpringAxis::bend, material);
        rib.k_bend_realized = wire_stiffness(rib.bend_gauge_mm, SpringAxis::bend, material);
        spec.ribs.push_back(rib);

        spec.skin_film_area_mm2 += blade.chord_mm * blade.span_offset_mm;
        spec.rib_rod_length_mm += blade.chord_mm;
        for (double gauge : {rib.twist_gauge_mm, rib.bend_gauge_mm}) {
            WireUsage& u = usage[gauge];
            u.gauge_mm = gauge;
            u.sections += 1;
            u.total_length_mm += material.wire_section_length_mm;
        }
    }
    for (const auto& [gauge, u] : usage) spec.wire_usage.push_back(u);
    return spec;
}

std::string manufacture_to_json_text(const ManufactureSpec& spec) {
    nlohmann::ordered_json j;
    j["format_version"] = spec.format_version;
    j["label"] = spec.label;
    j["blade_count"] = spec.blade_count;
    j["span_mm"] = spec.span_mm;
    j["estimated_mass_g"] = spec.estimated_mass_g;
    nlohmann::ordered_json ribs = nlohmann::ordered_json::array();
    for (const RibSpec& rib : spec.ribs) {
        nlohmann::ordered_json r;
        r["index"] = rib.index;
        r["station_mm"] = rib.station_mm;
        r["chord_mm"] = rib.chord_mm;
        nlohmann::ordered_json twist;
        twist["k_requested_nm_rad"] = rib.k_twist_requested;
        twist["gauge_mm"] = rib.twist_gauge_mm;
        twist["k_realized_nm_rad"] = rib.k_twist_realized;
        r["twist"] = std::move(twist);
        nlohmann::ordered_json bend;
        bend["k_requested_nm_rad"] = rib.k_bend_requested;
        bend["gauge_mm"] = rib.bend_gauge_mm;
        bend["k_realized_nm_rad"] = rib.k_bend_realized;
        r["bend"] = std::move(bend);
        ribs.push_back(std::move(r));
    }
    j["ribs"] = std::move(ribs);
    nlohmann::ordered_json mat;
    mat["skin_film_area_mm2"] = spec.skin_film_area_mm2;
    mat["spar_rod_diameter_mm"] = spec.spar_rod_diameter_mm;
    mat["spar_rod_length_mm"] = spec.spar_rod_length_mm;
    mat["rib_rod_diameter_mm"] = spec.rib_rod_diameter_mm;
    mat["rib_rod_length_mm"] = spec.rib_rod_length_mm;
    mat["spring_wire_section_length_mm"] = spec.wire_section_length_mm;
    nlohmann::ordered_json wires = nlohmann::ordered_json::array();
    for (const WireUsage& u : spec.wire_usage) {
        nlohmann::ordered_json w;
        w["gauge_mm"] = u.gauge_mm;
        w["sections"] = u.sections;
        w["total_length_mm"] = u.total_length_mm;
        wires.push_back(std::move(w));
    }
    mat["spring_wire_sections"] = std::move(wires);
    j["materials"] = std::move(mat);
    return j.dump(2) + "\n";
}

std::string manufacture_to_text(const ManufactureSpec& spec) {
    char buf[256];
    std::string out;
    out += "wing build sheet (format " + std::to_string(spec.format_version) + ")\n";
    out += "label: " + (spec.label.empty() ? std::string("(unnamed)") : spec.label) + "\n";
    std::snprintf(buf, sizeof buf, "blades: %d   span: %.2f mm   estimated mass: %.3f g\n\n",
                  spec.blade_count, spec.span_mm, spec.estimated_mass_g);
    out += buf;
    out += "rib  station_mm  chord_mm  twist_gauge_mm  k_twist_req   k_twist_real  "
           "bend_gauge_mm  k_bend_req    k_bend_real\n";
    for (const RibSpec& rib : spec.ribs) {
        std::snprintf(buf, sizeof buf,
                      "%3d  %10.2f  %8.2f  %14.2f  %12.5g  %12.5g  %13.2f  %12.5g  %12.5g\n",
                      rib.index, rib.station_mm, rib.chord_mm, rib.twist_gauge_mm,
                      rib.k_twist_requested, rib.k_twist_realized, rib.bend_gauge_mm,
                      rib.k_bend_requested, rib.k_bend_realized);
        out += buf;
    }
    out += "\nmaterials:\n";
    std::snprintf(buf, sizeof buf, "  skin film: %.1f mm^2\n", spec.skin_film_area_mm2);
    out += buf;
    std::snprintf(buf, sizeof buf, "  spar rod (%.2f mm): %.1f mm\n", spec.spar_rod_diameter_mm,
                  spec.spar_rod_length_mm);
    out += buf;
    std::snprintf(buf, sizeof buf, "  rib rod (%.2f mm): %.1f mm\n", spec.rib_rod_diameter_mm,
                  spec.rib_rod_length_mm);
    out += buf;
    for (const WireUsage& u : spec.wire_usage) {
        std::snprintf(buf, sizeof buf, "  spring wire %.2f mm: %d section(s) x %.1f mm = %.1f mm\n",
                      u.gauge_mm, u.sections, spec.wire_section_length_mm, u.total_length_mm);
        out += buf;
    }
    return out;
}

void export_manufacture_spec(const ManufactureSpec& spec, const std::filesystem::path& json_path,
                             const std::filesystem::path& text_path) {
    const auto write = [](const std::filesystem::path& path, const std::string& text) {
        std::ofstream out(path);
        if (!out) throw IoError("cannot open for writing: " + path.string());
        out << text;
        out.close();
        if (!out) throw IoError("write failed: " + path.string());
    };
    if (!json_path.empty()) write(json_path, manufacture_to_json_text(spec));
    if (!text_path.empty()) write(text_path, manufacture_to_text(spec));
}

}  // namespace flapevo
