#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "flapevo/manufacture.hpp"

using namespace flapevo;
namespace fs = std::filesystem;

namespace {

const MaterialConfig kMaterial{};

WingPhenotype single_rib_wing() {
    return WingPhenotype({{50.0, 50.0, 1.5e-4, 1.8915e-4}}, "single");
}

WingPhenotype three_blade_wing() {
    // Stiffness targets chosen to hit all three wire gauges.
    const double k_t_small = wire_stiffness(0.10, SpringAxis::twist, kMaterial);
    const double k_b_large = wire_stiffness(0.17, SpringAxis::bend, kMaterial);
    const double k_t_mid = wire_stiffness(0.13, SpringAxis::twist, kMaterial);
    const double k_b_mid = wire_stiffness(0.13, SpringAxis::bend, kMaterial);
    return WingPhenotype({{60.0, 40.0, k_t_small, k_b_large},
                          {60.0, 40.0, k_t_mid, k_b_mid},
                          {60.0, 40.0, k_t_mid, k_b_mid}},
                         "triple");
}

}  // namespace

TEST_CASE("single-joint sheet places the rib at the tip with the nearest gauge") {
    const ManufactureSpec spec = build_manufacture_spec(single_rib_wing(), kMaterial);
    CHECK(spec.format_version == 1);
    CHECK(spec.label == "single");
    CHECK(spec.blade_count == 1);
    CHECK(spec.span_mm == 50.0);
    REQUIRE(spec.ribs.size() == 1);
    const RibSpec& rib = spec.ribs[0];
    CHECK(rib.index == 0);
    CHECK(rib.station_mm == 50.0);
    CHECK(rib.chord_mm == 50.0);
    // 1.5e-4 N*m/rad sits nearest the middle gauge on both axes.
    CHECK(rib.twist_gauge_mm == 0.13);
    CHECK(rib.bend_gauge_mm == 0.13);
    CHECK(rib.k_twist_requested == 1.5e-4);
    CHECK(rib.k_twist_realized ==
          doctest::Approx(wire_stiffness(0.13, SpringAxis::twist, kMaterial)).epsilon(1e-12));
    CHECK(rib.k_bend_realized ==
          doctest::Approx(wire_stiffness(0.13, SpringAxis::bend, kMaterial)).epsilon(1e-12));
    // Same wire gauge delivers a stiffer bend spring than twist spring
    // (elastic modulus exceeds shear modulus).
    CHECK(rib.k_bend_realized > rib.k_twist_realized);

    // Materials bill for a 50 x 50 plate.
    CHECK(spec.skin_film_area_mm2 == doctest::Approx(2500.0));
    CHECK(spec.spar_rod_length_mm == doctest::Approx(50.0));
    CHECK(spec.spar_rod_diameter_mm == 0.8);
    CHECK(spec.rib_rod_length_mm == doctest::Approx(50.0));
    CHECK(spec.rib_rod_diameter_mm == 0.4);
    REQUIRE(spec.wire_usage.size() == 1);
    CHECK(spec.wire_usage[0].gauge_mm == 0.13);
    CHECK(spec.wire_usage[0].sections == 2);  // one per elastic axis
    CHECK(spec.wire_usage[0].total_length_mm == doctest::Approx(30.0));
    CHECK(spec.estimated_mass_g ==
          doctest::Approx(wing_total_mass_kg(single_rib_wing(), kMaterial) * 1e3));
}

TEST_CASE("stations accumulate through each blade and gauges stay in the catalog") {
    const ManufactureSpec spec = build_manufacture_spec(three_blade_wing(), kMaterial);
    REQUIRE(spec.ribs.size() == 3);
    CHECK(spec.ribs[0].station_mm == doctest::Approx(60.0));
    CHECK(spec.ribs[1].station_mm == doctest::Approx(120.0));
    CHECK(spec.ribs[2].station_mm == doctest::Approx(180.0));
    CHECK(spec.span_mm == doctest::Approx(180.0));
    for (const RibSpec& rib : spec.ribs) {
        bool twist_ok = false, bend_ok = false;
        for (double g : kMaterial.wire_gauges_mm) {
            if (rib.twist_gauge_mm == g) twist_ok = true;
            if (rib.bend_gauge_mm == g) bend_ok = true;
        }
        CHECK(twist_ok);
        CHECK(bend_ok);
        // Realized stiffness always re-derives from the chosen gauge.
        CHECK(rib.k_twist_realized ==
              doctest::Approx(wire_stiffness(rib.twist_gauge_mm, SpringAxis::twist, kMaterial))
                  .epsilon(1e-12));
        CHECK(rib.k_bend_realized ==
              doctest::Approx(wire_stiffness(rib.bend_gauge_mm, SpringAxis::bend, kMaterial))
                  .epsilon(1e-12));
    }
    // Exact-gauge requests are realized exactly.
    CHECK(spec.ribs[0].k_twist_realized == doctest::Approx(spec.ribs[0].k_twist_requested));
    CHECK(spec.ribs[0].twist_gauge_mm == 0.10);
    CHECK(spec.ribs[0].bend_gauge_mm == 0.17);

    CHECK(spec.skin_film_area_mm2 == doctest::Approx(3 * 40.0 * 60.0));
    CHECK(spec.rib_rod_length_mm == doctest::Approx(120.0));
    CHECK(spec.spar_rod_length_mm == doctest::Approx(180.0));

    // Wire bill: 1 thin twist section, 4 middle sections, 1 thick bend section,
    // listed in ascending gauge order.
    REQUIRE(spec.wire_usage.size() == 3);
    CHECK(spec.wire_usage[0].gauge_mm == 0.10);
    CHECK(spec.wire_usage[0].sections == 1);
    CHECK(spec.wire_usage[1].gauge_mm == 0.13);
    CHECK(spec.wire_usage[1].sections == 4);
    CHECK(spec.wire_usage[2].gauge_mm == 0.17);
    CHECK(spec.wire_usage[2].sections == 1);
    int total_sections = 0;
    for (const WireUsage& u : spec.wire_usage) {
        total_sections += u.sections;
        CHECK(u.total_length_mm == doctest::Approx(u.sections * 15.0));
    }
    CHECK(total_sections == 6);  // two axes times three joints
}

TEST_CASE("infeasible designs are rejected with a per-parameter report") {
    WingPhenotype wing = three_blade_wing();
    wing.blades[0].chord_mm = 250.0;   // over the 200 mm cap
    wing.blades[2].span_offset_mm = 10.0;  // under the 30 mm floor
    try {
        build_manufacture_spec(wing, kMaterial);
        FAIL("expected InfeasibleError");
    } catch (const InfeasibleError& e) {
        const std::string msg = e.what();
        CHECK(msg.find("not manufacturable (2 violation(s))") != std::string::npos);
        CHECK(msg.find("blade[0].chord_mm = 250 (nearest feasible 200)") != std::string::npos);
        CHECK(msg.find("blade[2].span_offset_mm = 10 (nearest feasible 30)") != std::string::npos);
        REQUIRE(e.report.violations.size() == 2);
        CHECK(e.report.distance > 0.0);
    }
}

TEST_CASE("json rendering carries the full sheet under format version 1") {
    const ManufactureSpec spec = build_manufacture_spec(three_blade_wing(), kMaterial);
    const nlohmann::json j = nlohmann::json::parse(manufacture_to_json_text(spec));
    CHECK(j.at("format_version").get<int>() == 1);
    CHECK(j.at("label").get<std::string>() == "triple");
    CHECK(j.at("blade_count").get<int>() == 3);
    CHECK(j.at("span_mm").get<double>() == doctest::Approx(180.0));
    REQUIRE(j.at("ribs").size() == 3);
    const auto& rib = j.at("ribs").at(1);
    CHECK(rib.at("station_mm").get<double>() == doctest::Approx(120.0));
    CHECK(rib.at("twist").at("gauge_mm").get<double>() == 0.13);
    CHECK(rib.at("twist").at("k_requested_nm_rad").get<double>() ==
          doctest::Approx(spec.ribs[1].k_twist_requested));
    CHECK(rib.at("bend").at("k_realized_nm_rad").get<double>() ==
          doctest::Approx(spec.ribs[1].k_bend_realized));
    const auto& mat = j.at("materials");
    CHECK(mat.at("skin_film_area_mm2").get<double>() == doctest::Approx(7200.0));
    CHECK(mat.at("spring_wire_section_length_mm").get<double>() == 15.0);
    REQUIRE(mat.at("spring_wire_sections").size() == 3);
    CHECK(mat.at("spring_wire_sections").at(0).at("gauge_mm").get<double>() == 0.10);
    CHECK(mat.at("spring_wire_sections").at(1).at("sections").get<int>() == 4);
}

TEST_CASE("text rendering lists every rib row and the wire bill") {
    const ManufactureSpec spec = build_manufacture_spec(three_blade_wing(), kMaterial);
    const std::string text = manufacture_to_text(spec);
    CHECK(text.find("wing build sheet (format 1)") != std::string::npos);
    CHECK(text.find("label: triple") != std::string::npos);
    CHECK(text.find("blades: 3") != std::string::npos);
    CHECK(text.find("rib  station_mm") != std::string::npos);
    // One line per rib plus one line per gauge in use.
    int rib_lines = 0;
    std::istringstream lines(text);
    std::string line;
    while (std::getline(lines, line)) {
        if (line.rfind("  0 ", 0) == 0 || line.rfind("  1 ", 0) == 0 || line.rfind("  2 ", 0) == 0)
            ++rib_lines;
    }
    CHECK(rib_lines == 3);
    CHECK(text.find("spring wire 0.10 mm: 1 section(s)") != std::string::npos);
    CHECK(text.find("spring wire 0.13 mm: 4 section(s)") != std::string::npos);
    CHECK(text.find("spring wire 0.17 mm: 1 section(s)") != std::string::npos);
    CHECK(text.find("skin film:") != std::string::npos);
    CHECK(text.find("spar rod (0.80 mm): 180.0 mm") != std::string::npos);
}

TEST_CASE("export writes the requested renderings and skips empty paths") {
    const ManufactureSpec spec = build_manufacture_spec(single_rib_wing(), kMaterial);
    const fs::path dir = fs::temp_directory_path() / "manufacture_out";
    fs::remove_all(dir);
    fs::create_directories(dir);
    const fs::path json_path = dir / "sheet.json";
    const fs::path text_path = dir / "sheet.txt";
    export_manufacture_spec(spec, json_path, text_path);
    REQUIRE(fs::exists(json_path));
    REQUIRE(fs::exists(text_path));
    {
        std::ifstream in(json_path);
        std::ostringstream buf;
        buf << in.rdbuf();
        CHECK(buf.str() == manufacture_to_json_text(spec));
    }
    {
        std::ifstream in(text_path);
        std::ostringstream buf;
        buf << in.rdbuf();
        CHECK(buf.str() == manufacture_to_text(spec));
    }
    // Empty paths skip that rendering without error.
    fs::remove(json_path);
    export_manufacture_spec(spec, "", dir / "only_text.txt");
    CHECK_FALSE(fs::exists(json_path));
    CHECK(fs::exists(dir / "only_text.txt"));
}
