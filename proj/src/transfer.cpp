#include "flapevo/transfer.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <sstream>

#include "flapevo/errors.hpp"
#include "flapevo/textio.hpp"
#include "flapevo/wing.hpp"

namespace flapevo {

namespace {

// Floor applied to the residual sum of squares inside the Akaike score so
// that numerically-exact fits (RSS at rounding-noise level) tie instead of
// amplifying noise; ties then resolve to the smallest degree. Real data sits
// many orders of magnitude above this.
constexpr double kRssFloor = 1e-20;

constexpr double kSmallGapBand = 0.2;  // |str| below this counts as a small gap

}  // namespace

double TransferDataset::l_max_g() const {
    if (l_max_override_g) return *l_max_override_g;
    double m = 0.0;
    for (const TransferRecord& r : records) m = std::max(m, r.lift_sim_g);
    return m;
}

int TransferDataset::b_max() const {
    if (b_max_override) return *b_max_override;
    int m = 0;
    for (const TransferRecord& r : records) m = std::max(m, r.blade_count);
    return m;
}

double TransferDataset::s_max_mm() const {
    if (s_max_override_mm) return *s_max_override_mm;
    double m = 0.0;
    for (const TransferRecord& r : records) m = std::max(m, r.span_mm);
    return m;
}

double compute_str(double lift_real_g, double lift_sim_g, double l_max_g) {
    if (!(l_max_g > 0.0)) throw ConfigError("l_max must be positive to normalize disparity");
    return (lift_real_g - lift_sim_g) / l_max_g;
}

TransferDataset annotate(TransferDataset ds) {
    const double l_max = ds.l_max_g();
    const int b_max = ds.b_max();
    const double s_max = ds.s_max_mm();
    for (TransferRecord& r : ds.records) {
        r.str = compute_str(r.lift_real_g, r.lift_sim_g, l_max);
        r.cms = compute_cms(r.blade_count, r.span_mm, b_max, s_max);
    }
    return ds;
}

double polyval(const std::vector<double>& coefficients, double x) {
    double acc = 0.0;
    for (std::size_t i = coefficients.size(); i-- > 0;) acc = acc * x + coefficients[i];
    return acc;
}

PolyFit polyfit_str(const TransferDataset& ds, int max_degree) {
    const int n = static_cast<int>(ds.records.size());
    if (max_degree < 1) throw ConfigError("max_degree must be at least 1");
    if (n < max_degree + 2) {
        throw ConfigError("need at least max_degree + 2 records for degree selection");
    }
    Eigen::VectorXd x(n), y(n);
    for (int i = 0; i < n; ++i) {
        x[i] = ds.records[static_cast<std::size_t>(i)].cms;
        y[i] = ds.records[static_cast<std::size_t>(i)].str;
        if (!std::isfinite(x[i]) || !std::isfinite(y[i])) {
            throw ConfigError("non-finite cms/str value; annotate the dataset first");
        }
    }
    PolyFit best;
    double best_score = std::numeric_limits<double>::infinity();
    std::vector<std::pair<int, double>> scores;
    for (int degree = 1; degree <= max_degree; ++degree) {
        const int k = degree + 1;
        Eigen::MatrixXd a(n, k);
        for (int i = 0; i < n; ++i) {
            double p = 1.0;
            for (int j = 0; j < k; ++j) {
                a(i, j) = p;
                p *= x[i];
            }
        }
        const Eigen::VectorXd coef = a.colPivHouseholderQr().solve(y);
        const double rss = (a * coef - y).squaredNorm();
        double score = std::numeric_limits<double>::infinity();
        if (n - k - 1 >= 1) {
            const double rss_eff = std::max(rss, kRssFloor);
            score = n * std::log(rss_eff / n) + 2.0 * k +
                    2.0 * k * (k + 1) / static_cast<double>(n - k - 1);
        }
        scores.emplace_back(degree, score);
        if (score < best_score) {
            best_score = score;
            best.degree = degree;
            best.coefficients.assign(coef.data(), coef.data() + k);
            best.rss = rss;
        }
    }
    best.scores = std::move(scores);
    if (best.coefficients.empty()) {
        throw ConfigError("no candidate degree admissible for this record count");
    }
    return best;
}

GapEnvelope gap_envelope(const TransferDataset& ds) {
    if (ds.records.size() < 2) throw ConfigError("envelope needs at least 2 records");
    std::vector<std::pair<double, double>> pts;  // (cms, str)
    pts.reserve(ds.records.size());
    for (const TransferRecord& r : ds.records) pts.emplace_back(r.cms, r.str);
    std::sort(pts.begin(), pts.end());
    GapEnvelope env;
    for (std::size_t i = 0; i < pts.size();) {
        std::size_t j = i;
        double lo = pts[i].second, hi = pts[i].second;
        while (j + 1 < pts.size() && pts[j + 1].first == pts[i].first) {
            ++j;
            lo = std::min(lo, pts[j].second);
            hi = std::max(hi, pts[j].second);
        }
        env.cms.push_back(pts[i].first);
        env.lower.push_back(lo);
        env.upper.push_back(hi);
        i = j + 1;
    }
    return env;
}

std::optional<double> threshold_estimate(const PolyFit& fit) {
    constexpr double eps = 1e-14;
    // Roots of fit(x) + band = 0 restricted to [0, 1]; return the largest.
    const auto largest_in_range = [](std::initializer_list<double> roots) {
        std::optional<double> best;
        for (double r : roots) {
            if (std::isfinite(r) && r >= 0.0 && r <= 1.0 && (!best || r > *best)) best = r;
        }
        return best;
    };
    std::vector<double> g = fit.coefficients;  // fit(x) - (-band)
    if (g.empty()) return std::nullopt;
    g[0] += kSmallGapBand;
    if (fit.degree <= 2) {
        const double c0 = g[0];
        const double c1 = g.size() > 1 ? g[1] : 0.0;
        const double c2 = g.size() > 2 ? g[2] : 0.0;
        if (std::abs(c2) < eps && std::abs(c1) < eps) {
            // Constant curve: either it sits exactly on the band edge
            // (everything qualifies; 0 by convention) or it never crosses.
            if (std::abs(c0) < eps) return 0.0;
            return std::nullopt;
        }
        if (std::abs(c2) < eps) return largest_in_range({-c0 / c1});
        const double disc = c1 * c1 - 4.0 * c2 * c0;
        if (disc < 0.0) return std::nullopt;
        const double sq = std::sqrt(disc);
        // Numerically stable pair of quadratic roots.
        const double q = -0.5 * (c1 + std::copysign(sq, c1));
        const double r1 = q / c2;
        const double r2 = (q != 0.0) ? c0 / q : -c1 / (2.0 * c2);
        return largest_in_range({r1, r2});
    }
    // Higher degrees: bracket sign changes on a fine grid, refine by bisection.
    const auto value = [&](double xx) { return polyval(g, xx); };
    std::optional<double> best;
    const int cells = 4096;
    double prev_x = 0.0, prev_v = value(0.0);
    if (prev_v == 0.0) best = 0.0;
    for (int i = 1; i <= cells; ++i) {
        const double xx = static_cast<double>(i) / cells;
        const double vv = value(xx);
        if (vv == 0.0) {
            best = xx;
        } else if ((prev_v < 0.0) != (vv < 0.0)) {
            double lo = prev_x, hi = xx;
            for (int it = 0; it < 100; ++it) {
                const double mid = 0.5 * (lo + hi);
                if ((value(mid) < 0.0) == (prev_v < 0.0)) lo = mid;
                else hi = mid;
            }
            best = 0.5 * (lo + hi);
        }
        prev_x = xx;
        prev_v = vv;
    }
    return best;
}

TransferDataset ingest_transfers(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open transfers file: " + path.string());
    TransferDataset ds;
    std::string line;
    long line_no = 0;
    bool header_seen = false;
    const auto where = [&]() { return path.string() + ":" + std::to_string(line_no); };
    const auto fail = [&](const std::string& msg) { return ParseError(where() + ": " + msg); };
    while (std::getline(in, line)) {
        ++line_no;
        const std::string_view sv = trim(line);
        if (sv.empty() || sv.front() == '#') continue;
        const auto fields = split_csv_line(sv);
        if (!header_seen) {
            static constexpr const char* expected[] = {"label", "B",     "S_mm",
                                                       "L_S_g", "L_R_g", "L_R_std_g"};
            if (fields.size() != 6) {
                throw fail("expected header label,B,S_mm,L_S_g,L_R_g,L_R_std_g");
            }
            for (std::size_t i = 0; i < 6; ++i) {
                if (fields[i] != expected[i]) {
                    throw fail("unexpected header column '" + std::string(fields[i]) + "'");
                }
            }
            header_seen = true;
            continue;
        }
        if (sv.front() == '@') {
            if (fields.size() != 2) throw fail("override rows take exactly one value");
            if (fields[0] == "@lmax") {
                ds.l_max_override_g = parse_double(fields[1], where());
            } else if (fields[0] == "@bmax") {
                ds.b_max_override = static_cast<int>(parse_long(fields[1], where()));
            } else if (fields[0] == "@smax") {
                ds.s_max_override_mm = parse_double(fields[1], where());
            } else {
                throw fail("unknown override '" + std::string(fields[0]) +
                           "' (expected @lmax, @bmax or @smax)");
            }
            continue;
        }
        if (fields.size() != 6) {
            throw fail("expected 6 fields, got " + std::to_string(fields.size()));
        }
        TransferRecord r;
        r.label = std::string(fields[0]);
        if (r.label.empty()) throw fail("empty label");
        r.blade_count = static_cast<int>(parse_long(fields[1], where()));
        r.span_mm = parse_double(fields[2], where());
        r.lift_sim_g = parse_double(fields[3], where());
        r.lift_real_g = parse_double(fields[4], where());
        r.lift_real_std_g = parse_double(fields[5], where());
        if (r.blade_count < 1) throw fail("blade count must be at least 1");
        if (!(r.span_mm > 0.0)) throw fail("span must be positive");
        if (r.lift_real_std_g < 0.0) throw fail("lift standard deviation must be non-negative");
        ds.records.push_back(std::move(r));
    }
    if (!header_seen) throw ParseError(path.string() + ": missing header row");
    if (ds.records.empty()) throw ParseError(path.string() + ": no records");
    return ds;
}

void export_transfers(const TransferDataset& ds, const std::filesystem::path& path) {
    std::ofstream out(path);
    if (!out) throw IoError("cannot open for writing: " + path.string());
    out << "label,B,S_mm,L_S_g,L_R_g,L_R_std_g\n";
    if (ds.l_max_override_g) out << "@lmax," << format_double(*ds.l_max_override_g) << "\n";
    if (ds.b_max_override) out << "@bmax," << *ds.b_max_override << "\n";
    if (ds.s_max_override_mm) out << "@smax," << format_double(*ds.s_max_override_mm) << "\n";
    for (const TransferRecord& r : ds.records) {
        out << r.label << ',' << r.blade_count << ',' << format_double(r.span_mm) << ','
            << format_double(r.lift_sim_g) << ',' << format_double(r.lift_real_g) << ','
            << format_double(r.lift_real_std_g) << "\n";
    }
    out.close();
    if (!out) throw IoError("write failed: " + path.string());
}

namespace {

// Plot frame: fixed axes cms in [0,1], str in [-1,1].
struct PlotFrame {
    double width = 800.0, height = 560.0;
    double left = 70.0, right = 770.0, top = 30.0, bottom = 500.0;
    double px(double cms) const { return left + cms * (right - left); }
    double py(double str) const { return top + (1.0 - str) / 2.0 * (bottom - top); }
};

std::string coord(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.2f", v);
    return buf;
}

void append_line(std::string& svg, const PlotFrame& f, double x1, double y1, double x2, double y2,
                 const std::string& style) {
    svg += "  <line x1=\"" + coord(f.px(x1)) + "\" y1=\"" + coord(f.py(y1)) + "\" x2=\"" +
           coord(f.px(x2)) + "\" y2=\"" + coord(f.py(y2)) + "\" style=\"" + style + "\"/>\n";
}

}  // namespace

void export_gap_plot(const TransferDataset& ds, const PolyFit& fit, const GapEnvelope& env,
                     const std::filesystem::path& dir) {
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    if (ec) throw IoError("cannot create plot directory: " + dir.string());
    const double l_max = ds.l_max_g();

    {
        std::ofstream out(dir / "gap_points.csv");
        if (!out) throw IoError("cannot open for writing: " + (dir / "gap_points.csv").string());
        out << "label,cms,str,str_err\n";
        for (const TransferRecord& r : ds.records) {
            out << r.label << ',' << format_double(r.cms) << ',' << format_double(r.str) << ','
                << format_double(r.lift_real_std_g / l_max) << "\n";
        }
        out.close();
        if (!out) throw IoError("write failed: " + (dir / "gap_points.csv").string());
    }

    double cms_lo = std::numeric_limits<double>::infinity();
    double cms_hi = -std::numeric_limits<double>::infinity();
    for (const TransferRecord& r : ds.records) {
        cms_lo = std::min(cms_lo, r.cms);
        cms_hi = std::max(cms_hi, r.cms);
    }
    constexpr int kFitSamples = 100;
    std::vector<std::pair<double, double>> fit_samples;
    fit_samples.reserve(kFitSamples);
    for (int i = 0; i < kFitSamples; ++i) {
        const double xx = cms_lo + (cms_hi - cms_lo) * i / (kFitSamples - 1);
        fit_samples.emplace_back(xx, polyval(fit.coefficients, xx));
    }
    {
        std::ofstream out(dir / "gap_fit.csv");
        if (!out) throw IoError("cannot open for writing: " + (dir / "gap_fit.csv").string());
        out << "cms,str_fit\n";
        for (const auto& [xx, yy] : fit_samples) {
            out << format_double(xx) << ',' << format_double(yy) << "\n";
        }
        out.close();
        if (!out) throw IoError("write failed: " + (dir / "gap_fit.csv").string());
    }
    {
        std::ofstream out(dir / "gap_envelope.csv");
        if (!out) throw IoError("cannot open for writing: " + (dir / "gap_envelope.csv").string());
        out << "cms,lower,upper\n";
        for (std::size_t i = 0; i < env.cms.size(); ++i) {
            out << format_double(env.cms[i]) << ',' << format_double(env.lower[i]) << ','
                << format_double(env.upper[i]) << "\n";
        }
        out.close();
        if (!out) throw IoError("write failed: " + (dir / "gap_envelope.csv").string());
    }

    // Illustrative monotonic-decay reference: the least-squares line through
    // the remaining records constrained to pass through the lowest-complexity
    // record's point.
    const TransferRecord* anchor = nullptr;
    for (const TransferRecord& r : ds.records) {
        if (!anchor || r.cms < anchor->cms) anchor = &r;
    }
    double decay_slope = 0.0;
    {
        double num = 0.0, den = 0.0;
        for (const TransferRecord& r : ds.records) {
            const double dx = r.cms - anchor->cms;
            num += dx * (r.str - anchor->str);
            den += dx * dx;
        }
        if (den > 0.0) decay_slope = num / den;
    }

    const PlotFrame f;
    std::string svg;
    svg += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"800\" height=\"560\" "
           "viewBox=\"0 0 800 560\" version=\"1.1\">\n";
    svg += "  <rect x=\"0\" y=\"0\" width=\"800\" height=\"560\" style=\"fill:#ffffff\"/>\n";
    svg += "  <text x=\"400\" y=\"20\" style=\"font:15px sans-serif;text-anchor:middle\">"
           "Transfer disparity vs morphological complexity</text>\n";

    // Envelope band.
    svg += "  <polygon points=\"";
    for (std::size_t i = 0; i < env.cms.size(); ++i) {
        svg += coord(f.px(env.cms[i])) + "," + coord(f.py(env.upper[i])) + " ";
    }
    for (std::size_t i = env.cms.size(); i-- > 0;) {
        svg += coord(f.px(env.cms[i])) + "," + coord(f.py(env.lower[i]));
        if (i != 0) svg += " ";
    }
    svg += "\" style=\"fill:#9ecae1;fill-opacity:0.35;stroke:none\"/>\n";

    // Zero line and the small-gap band edges.
    append_line(svg, f, 0.0, 0.0, 1.0, 0.0, "stroke:#cccccc;stroke-width:1");
    append_line(svg, f, 0.0, kSmallGapBand, 1.0, kSmallGapBand,
                "stroke:#999999;stroke-width:1;stroke-dasharray:4 4");
    append_line(svg, f, 0.0, -kSmallGapBand, 1.0, -kSmallGapBand,
                "stroke:#999999;stroke-width:1;stroke-dasharray:4 4");

    // Threshold marker when the fitted curve crosses the band inside [0,1].
    if (const auto threshold = threshold_estimate(fit)) {
        append_line(svg, f, *threshold, -1.0, *threshold, 1.0,
                    "stroke:#b15928;stroke-width:1;stroke-dasharray:2 3");
        svg += "  <text x=\"" + coord(f.px(*threshold) + 4) + "\" y=\"" + coord(f.top + 14) +
               "\" style=\"font:12px sans-serif;fill:#b15928\">threshold</text>\n";
    }

    // Fitted polynomial.
    svg += "  <polyline fill=\"none\" style=\"stroke:#1f3b70;stroke-width:2\" points=\"";
    for (std::size_t i = 0; i < fit_samples.size(); ++i) {
        const double yy = std::clamp(fit_samples[i].second, -1.0, 1.0);
        svg += coord(f.px(fit_samples[i].first)) + "," + coord(f.py(yy));
        if (i + 1 != fit_samples.size()) svg += " ";
    }
    svg += "\"/>\n";

    // Illustrative decay line from the anchor to the data's right edge.
    {
        const double y0 = anchor->str;
        const double y1 = anchor->str + decay_slope * (cms_hi - anchor->cms);
        svg += "  <line x1=\"" + coord(f.px(anchor->cms)) + "\" y1=\"" +
               coord(f.py(std::clamp(y0, -1.0, 1.0))) + "\" x2=\"" + coord(f.px(cms_hi)) +
               "\" y2=\"" + coord(f.py(std::clamp(y1, -1.0, 1.0))) +
               "\" style=\"stroke:#d62728;stroke-width:2;stroke-dasharray:6 3\"/>\n";
        svg += "  <text x=\"" + coord(f.px(cms_hi) - 4) + "\" y=\"" +
               coord(f.py(std::clamp(y1, -1.0, 1.0)) - 8) +
               "\" style=\"font:12px sans-serif;fill:#d62728;text-anchor:end\">"
               "monotonic decay (illustrative)</text>\n";
    }

    // Error bars, then one marker per record.
    for (const TransferRecord& r : ds.records) {
        const double err = r.lift_real_std_g / l_max;
        if (err > 0.0) {
            append_line(svg, f, r.cms, std::clamp(r.str - err, -1.0, 1.0), r.cms,
                        std::clamp(r.str + err, -1.0, 1.0), "stroke:#1f78b4;stroke-width:1");
        }
    }
    for (const TransferRecord& r : ds.records) {
        svg += "  <circle cx=\"" + coord(f.px(r.cms)) + "\" cy=\"" + coord(f.py(r.str)) +
               "\" r=\"4\" style=\"fill:#1f78b4;stroke:#ffffff;stroke-width:1\"/>\n";
    }

    // Axes, ticks, labels.
    svg += "  <line x1=\"70\" y1=\"500\" x2=\"770\" y2=\"500\" "
           "style=\"stroke:#000000;stroke-width:1\"/>\n";
    svg += "  <line x1=\"70\" y1=\"30\" x2=\"70\" y2=\"500\" "
           "style=\"stroke:#000000;stroke-width:1\"/>\n";
    for (int i = 0; i <= 5; ++i) {
        const double xx = i / 5.0;
        svg += "  <line x1=\"" + coord(f.px(xx)) + "\" y1=\"500\" x2=\"" + coord(f.px(xx)) +
               "\" y2=\"506\" style=\"stroke:#000000;stroke-width:1\"/>\n";
        char label[16];
        std::snprintf(label, sizeof label, "%.1f", xx);
        svg += "  <text x=\"" + coord(f.px(xx)) + "\" y=\"522\" "
               "style=\"font:12px sans-serif;text-anchor:middle\">" + label + "</text>\n";
    }
    for (int i = -2; i <= 2; ++i) {
        const double yy = i / 2.0;
        svg += "  <line x1=\"64\" y1=\"" + coord(f.py(yy)) + "\" x2=\"70\" y2=\"" +
               coord(f.py(yy)) + "\" style=\"stroke:#000000;stroke-width:1\"/>\n";
        char label[16];
        std::snprintf(label, sizeof label, "%.1f", yy);
        svg += "  <text x=\"58\" y=\"" + coord(f.py(yy) + 4) + "\" "
               "style=\"font:12px sans-serif;text-anchor:end\">" + label + "</text>\n";
    }
    svg += "  <text x=\"420\" y=\"550\" style=\"font:13px sans-serif;text-anchor:middle\">"
           "complexity score</text>\n";
    svg += "  <text x=\"16\" y=\"265\" style=\"font:13px sans-serif;text-anchor:middle\" "
           "transform=\"rotate(-90 16 265)\">sim-to-real disparity</text>\n";
    svg += "</svg>\n";

    std::ofstream out(dir / "gap_plot.svg");
    if (!out) throw IoError("cannot open for writing: " + (dir / "gap_plot.svg").string());
    out << svg;
    out.close();
    if (!out) throw IoError("write failed: " + (dir / "gap_plot.svg").string());
}

}  // namespace flapevo
