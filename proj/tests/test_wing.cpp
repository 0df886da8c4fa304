#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "flapevo/wing.hpp"

using namespace flapevo;

namespace {
constexpr double kPi = 3.14159265358979323846;

BladeSpec blade(double span, double chord, double kt = 1e-4, double kb = 1e-4) {
    return BladeSpec{span, chord, kt, kb};
}
}  // namespace

TEST_CASE("phenotype constructor rejects an empty blade list") {
    CHECK_THROWS_AS(WingPhenotype(std::vector<BladeSpec>{}), ConfigError);
    CHECK_NOTHROW(WingPhenotype({blade(50, 50)}, "ok"));
}

TEST_CASE("wing span is the sum of the blade offsets") {
    WingPhenotype wing({blade(83.0, 140), blade(84.0, 140), blade(83.0, 140)});
    CHECK(wing_span(wing) == doctest::Approx(250.0).epsilon(1e-12));
}

TEST_CASE("complexity score averages normalized blade count and span") {
    CHECK(compute_cms(3, 308.0, 5, 626.0) == doctest::Approx(0.5 * (3.0 / 5.0 + 308.0 / 626.0)));
    CHECK(compute_cms(5, 626.0, 5, 626.0) == doctest::Approx(1.0));
    CHECK_THROWS_AS(compute_cms(0, 100.0, 5, 626.0), ConfigError);
    CHECK_THROWS_AS(compute_cms(6, 100.0, 5, 626.0), ConfigError);
    CHECK_THROWS_AS(compute_cms(3, -1.0, 5, 626.0), ConfigError);
    CHECK_THROWS_AS(compute_cms(3, 700.0, 5, 626.0), ConfigError);
}

TEST_CASE("blade mass model matches the closed-form plate + rod") {
    MaterialConfig mat;
    const BladeSpec b = blade(80.0, 100.0);
    const BladeMassProps props = wing_mass_model(b, mat);

    const double skin = mat.skin_areal_density_kg_m2 * 0.100 * 0.080;
    const double spar = mat.spar_linear_density_kg_m * 0.080;
    CHECK(props.mass_kg == doctest::Approx(skin + spar).epsilon(1e-12));

    // Centre of mass: plate at (c/2, s/2), rod on the spar line (0, s/2).
    const double com_x = skin * 0.050 / (skin + spar);
    CHECK(props.com_m.x() == doctest::Approx(com_x).epsilon(1e-12));
    CHECK(props.com_m.y() == doctest::Approx(0.040).epsilon(1e-12));
    CHECK(props.com_m.z() == 0.0);

    // The aero reference point is the plate area centroid, not the com.
    CHECK(props.centroid_m.x() == doctest::Approx(0.050).epsilon(1e-12));
    CHECK(props.centroid_m.y() == doctest::Approx(0.040).epsilon(1e-12));

    // Symmetric and diagonal in the blade frame (offsets are along x only).
    const Eigen::Matrix3d I = props.inertia_com;
    CHECK((I - I.transpose()).norm() == doctest::Approx(0.0));
    CHECK(I(0, 1) == doctest::Approx(0.0).epsilon(1e-15));
    CHECK(I(0, 2) == 0.0);
    CHECK(I(1, 2) == 0.0);
    CHECK(I(0, 0) > 0.0);
    CHECK(I(1, 1) > 0.0);

    // Direct two-body computation: thin plate + solid cylinder (radius r)
    // along the leading edge, both shifted to the combined centre of mass.
    const double r = 0.5 * 0.8e-3;
    const double dx_skin = 0.050 - com_x;
    const double dx_spar = -com_x;
    const double ixx = skin * 0.080 * 0.080 / 12.0 +
                       spar * (0.080 * 0.080 / 12.0 + r * r / 4.0);
    const double iyy = skin * 0.100 * 0.100 / 12.0 + spar * r * r / 2.0 +
                       skin * dx_skin * dx_skin + spar * dx_spar * dx_spar;
    const double izz = skin * (0.100 * 0.100 + 0.080 * 0.080) / 12.0 +
                       spar * (0.080 * 0.080 / 12.0 + r * r / 4.0) +
                       skin * dx_skin * dx_skin + spar * dx_spar * dx_spar;
    CHECK(I(0, 0) == doctest::Approx(ixx).epsilon(1e-12));
    CHECK(I(1, 1) == doctest::Approx(iyy).epsilon(1e-12));
    CHECK(I(2, 2) == doctest::Approx(izz).epsilon(1e-12));
}

TEST_CASE("total mass adds up over blades") {
    MaterialConfig mat;
    WingPhenotype wing({blade(80.0, 100.0), blade(60.0, 50.0)});
    const double expected = wing_mass_model(wing.blades[0], mat).mass_kg +
                            wing_mass_model(wing.blades[1], mat).mass_kg;
    CHECK(wing_total_mass_kg(wing, mat) == doctest::Approx(expected).epsilon(1e-15));
}

TEST_CASE("wire stiffness follows G*J/L and E*I/L") {
    MaterialConfig mat;
    const double d = 0.10;  // mm
    const double J = kPi * std::pow(1e-4, 4) / 32.0;
    const double I = J / 2.0;
    const double L = 0.015;
    CHECK(wire_stiffness(d, SpringAxis::twist, mat) ==
          doctest::Approx(mat.wire_shear_modulus_pa * J / L).epsilon(1e-12));
    CHECK(wire_stiffness(d, SpringAxis::bend, mat) ==
          doctest::Approx(mat.wire_elastic_modulus_pa * I / L).epsilon(1e-12));
    // Frozen reference value for the smallest gauge.
    CHECK(wire_stiffness(0.10, SpringAxis::twist, mat) ==
          doctest::Approx(5.190173e-5).epsilon(1e-6));
}

TEST_CASE("feasible stiffness box spans half the softest to twice the stiffest gauge") {
    const FeasibleRanges r = default_feasible_ranges();
    CHECK(r.k_twist.lo == doctest::Approx(2.595086e-5).epsilon(1e-6));
    CHECK(r.k_twist.hi == doctest::Approx(8.669769e-4).epsilon(1e-6));
    CHECK(r.k_bend.lo == doctest::Approx(3.272492e-5).epsilon(1e-6));
    CHECK(r.k_bend.hi == doctest::Approx(1.093287e-3).epsilon(1e-6));
    CHECK(r.span_offset_mm.lo == 30.0);
    CHECK(r.span_offset_mm.hi == 150.0);
    CHECK(r.chord_mm.lo == 10.0);
    CHECK(r.chord_mm.hi == 200.0);
}

TEST_CASE("nearest gauge picks by log distance and saturates") {
    MaterialConfig mat;
    // Requested exactly a gauge's stiffness returns that gauge.
    for (double d : mat.wire_gauges_mm) {
        CHECK(nearest_wire_gauge(wire_stiffness(d, SpringAxis::twist, mat), SpringAxis::twist,
                                 mat) == doctest::Approx(d));
    }
    // 1.5e-4 N*m/rad sits nearest the middle gauge in log space.
    CHECK(nearest_wire_gauge(1.5e-4, SpringAxis::twist, mat) == doctest::Approx(0.13));
    // Saturation outside the available range.
    CHECK(nearest_wire_gauge(1e-9, SpringAxis::twist, mat) == doctest::Approx(0.10));
    CHECK(nearest_wire_gauge(1.0, SpringAxis::twist, mat) == doctest::Approx(0.17));
}

TEST_CASE("feasibility report measures normalized euclidean distance") {
    const FeasibleRanges r = default_feasible_ranges();
    WingPhenotype ok({blade(80.0, 100.0)});
    CHECK(validate_phenotype(ok, r).feasible());
    CHECK(validate_phenotype(ok, r).distance == 0.0);

    WingPhenotype bad({blade(80.0, 250.0)});  // chord 50 over the 200 cap
    const FeasibilityReport rep = validate_phenotype(bad, r);
    CHECK_FALSE(rep.feasible());
    REQUIRE(rep.violations.size() == 1);
    CHECK(rep.violations[0].parameter == "blade[0].chord_mm");
    CHECK(rep.violations[0].nearest_feasible == doctest::Approx(200.0));
    CHECK(rep.distance == doctest::Approx(50.0 / 190.0).epsilon(1e-12));

    WingPhenotype worse({blade(10.0, 250.0)});  // span 20 under, chord 50 over
    const FeasibilityReport rep2 = validate_phenotype(worse, r);
    REQUIRE(rep2.violations.size() == 2);
    const double d_span = 20.0 / 120.0, d_chord = 50.0 / 190.0;
    CHECK(rep2.distance ==
          doctest::Approx(std::sqrt(d_span * d_span + d_chord * d_chord)).epsilon(1e-12));
}

TEST_CASE("clamping returns the nearest in-box design") {
    const FeasibleRanges r = default_feasible_ranges();
    WingPhenotype bad({blade(10.0, 250.0, 1.0, 1e-9)});
    const WingPhenotype fixed = clamp_to_ranges(bad, r);
    CHECK(fixed.blades[0].span_offset_mm == doctest::Approx(30.0));
    CHECK(fixed.blades[0].chord_mm == doctest::Approx(200.0));
    CHECK(fixed.blades[0].k_twist == doctest::Approx(r.k_twist.hi));
    CHECK(fixed.blades[0].k_bend == doctest::Approx(r.k_bend.lo));
    CHECK(validate_phenotype(fixed, r).feasible());
}
