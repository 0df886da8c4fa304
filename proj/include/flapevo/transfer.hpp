#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace flapevo {

// One bench-transferred design: simulated and measured mean lift in
// grams-force (the unit the bench data is recorded in), plus the derived
// disparity (str) and complexity (cms) once annotated.
struct TransferRecord {
    std::string label;
    int blade_count = 0;
    double span_mm = 0.0;
    double lift_sim_g = 0.0;
    double lift_real_g = 0.0;      // mean over measured cycles
    double lift_real_std_g = 0.0;  // standard deviation over measured cycles
    double str = 0.0;              // (real - sim)/L_max, filled by annotate
    double cms = 0.0;              // complexity score, filled by annotate
};

struct TransferDataset {
    std::vector<TransferRecord> records;
    // Normalizing maxima default to the dataset's own maxima; overrides let an
    // analysis use the maxima of the wider population the designs came from.
    std::optional<double> l_max_override_g;
    std::optional<int> b_max_override;
    std::optional<double> s_max_override_mm;

    double l_max_g() const;
    int b_max() const;
    double s_max_mm() const;
};

// Simulation-to-reality disparity: (lift_real - lift_sim)/l_max. Positive
// means the physical wing outperformed its simulation.
double compute_str(double lift_real_g, double lift_sim_g, double l_max_g);

// Fill str and cms on every record using the dataset's (possibly overridden)
// maxima. Idempotent.
TransferDataset annotate(TransferDataset ds);

struct PolyFit {
    int degree = 0;
    std::vector<double> coefficients;  // ascending powers, length degree+1
    double rss = 0.0;
    // Small-sample-corrected Akaike score per candidate degree, as evaluated
    // during selection.
    std::vector<std::pair<int, double>> scores;
};

double polyval(const std::vector<double>& coefficients, double x);

// Ordinary least squares of str on cms for each degree 1..max_degree; the
// returned fit is the degree with the lowest corrected Akaike score
// AICc = n*ln(RSS/n) + 2k + 2k(k+1)/(n-k-1), k = degree+1. Requires at least
// max_degree + 2 records. Calls with too few records for a candidate's score
// denominator push that candidate's score to +infinity.
PolyFit polyfit_str(const TransferDataset& ds, int max_degree = 4);

// Per-cms-knot min/max band over the records, linearly connected.
struct GapEnvelope {
    std::vector<double> cms;  // strictly increasing knots
    std::vector<double> lower;
    std::vector<double> upper;
};

GapEnvelope gap_envelope(const TransferDataset& ds);

// Complexity where the fitted disparity curve leaves the small-gap band
// (crosses -0.2 going down): the largest root of fit(x) = -0.2 inside [0, 1].
// A fit identically equal to -0.2 returns 0 by convention; no root in range
// returns nothing.
std::optional<double> threshold_estimate(const PolyFit& fit);

// CSV schema: header `label,B,S_mm,L_S_g,L_R_g,L_R_std_g`; `#` comment lines;
// optional override rows `@lmax,<g>` / `@bmax,<count>` / `@smax,<mm>`.
// Errors carry the file path and 1-based line number.
TransferDataset ingest_transfers(const std::filesystem::path& path);

// Inverse of ingest: ingest(export(ds)) reproduces ds exactly (shortest
// round-trip number formatting).
void export_transfers(const TransferDataset& ds, const std::filesystem::path& path);

// Plot bundle written into `dir`: gap_points.csv (label, cms, str,
// str_err = lift_real_std/l_max), gap_fit.csv (100 curve samples),
// gap_envelope.csv, and gap_plot.svg (self-contained: scatter with error
// bars, fitted curve, shaded envelope, and an illustrative monotonic-decay
// reference line anchored at the lowest-complexity record).
void export_gap_plot(const TransferDataset& ds, const PolyFit& fit, const GapEnvelope& env,
                     const std::filesystem::path& dir);

}  // namespace flapevo
