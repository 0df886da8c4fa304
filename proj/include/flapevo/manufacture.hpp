#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "flapevo/wing.hpp"

namespace flapevo {

// One rib line in the build sheet. The station is the cumulative spar length
// through this blade (its outboard edge). Stiffnesses record both what the
// design asked for and what the nearest wire gauge actually delivers.
struct RibSpec {
    int index = 0;
    double station_mm = 0.0;
    double chord_mm = 0.0;
    double twist_gauge_mm = 0.0;
    double k_twist_requested = 0.0;
    double k_twist_realized = 0.0;
    double bend_gauge_mm = 0.0;
    double k_bend_requested = 0.0;
    double k_bend_realized = 0.0;
};

// Per-gauge wire consumption: each joint uses one section per elastic axis.
struct WireUsage {
    double gauge_mm = 0.0;
    int sections = 0;
    double total_length_mm = 0.0;
};

struct ManufactureSpec {
    int format_version = 1;
    std::string label;
    int blade_count = 0;
    double span_mm = 0.0;
    double estimated_mass_g = 0.0;
    std::vector<RibSpec> ribs;
    // Materials bill.
    double skin_film_area_mm2 = 0.0;
    double spar_rod_diameter_mm = 0.0;
    double spar_rod_length_mm = 0.0;
    double rib_rod_diameter_mm = 0.0;
    double rib_rod_length_mm = 0.0;
    double wire_section_length_mm = 0.0;
    std::vector<WireUsage> wire_usage;  // ascending by gauge
};

// Build the sheet for a manufacturable wing. Throws InfeasibleError carrying
// the full violation report when any parameter is out of bounds.
ManufactureSpec build_manufacture_spec(const WingPhenotype& wing, const MaterialConfig& material);

std::string manufacture_to_json_text(const ManufactureSpec& spec);
std::string manufacture_to_text(const ManufactureSpec& spec);

// Writes both renderings. Either path may be empty to skip that form.
void export_manufacture_spec(const ManufactureSpec& spec, const std::filesystem::path& json_path,
                             const std::filesystem::path& text_path);

}  // namespace flapevo
