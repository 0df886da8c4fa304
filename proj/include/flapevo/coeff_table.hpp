#pragma once

#include <filesystem>
#include <vector>

#include "flapevo/errors.hpp"

namespace flapevo {

struct Coefficients {
    double cl = 0.0;
    double cd = 0.0;
};

// Tabulated translational lift/drag coefficients over alpha in [0, 180]
// degrees. Lookups fold negative angles through the thin-plate symmetry
// C_L(-a) = -C_L(a), C_D(-a) = C_D(a) and interpolate linearly between rows.
struct CoefficientTable {
    std::vector<double> alpha_deg;  // strictly increasing, first 0, last 180
    std::vector<double> cl;
    std::vector<double> cd;

    // Throws ConfigError unless: columns have equal size >= 2, alphas are
    // strictly increasing and cover [0, 180], drag is non-negative, and lift
    // vanishes at both ends (required for the symmetry fold to be continuous).
    void validate() const;

    static CoefficientTable flat_plate_default();
    static CoefficientTable load_csv(const std::filesystem::path& path);
    void save_csv(const std::filesystem::path& path) const;
};

// Interpolated coefficients for a signed angle of attack in radians. The angle
// is wrapped into [-180, 180] degrees first.
Coefficients coeff_lookup(const CoefficientTable& table, double alpha_rad);

}  // namespace flapevo
