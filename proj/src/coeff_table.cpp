#include "flapevo/coeff_table.hpp"

#include <cmath>
#include <fstream>
#include <numbers>
#include <string>

#include "flapevo/textio.hpp"

namespace flapevo {

void CoefficientTable::validate() const {
    if (alpha_deg.size() < 2 || alpha_deg.size() != cl.size() || alpha_deg.size() != cd.size())
        throw ConfigError("coefficient table needs equally sized columns with >= 2 rows");
    if (alpha_deg.front() != 0.0 || alpha_deg.back() != 180.0)
        throw ConfigError("coefficient table must cover alpha from 0 to 180 degrees");
    for (std::size_t i = 1; i < alpha_deg.size(); ++i)
        if (!(alpha_deg[i] > alpha_deg[i - 1]))
            throw ConfigError("coefficient table alphas must be strictly increasing");
    for (double value : cd)
        if (!(value >= 0.0)) throw ConfigError("drag coefficients must be non-negative");
    if (cl.front() != 0.0 || cl.back() != 0.0)
        throw ConfigError("lift coefficient must vanish at 0 and 180 degrees");
}

CoefficientTable CoefficientTable::flat_plate_default() {
    // Same values as data/flat_plate_coeffs.csv (normal-force model
    // C_N = 2 sin(a) with axial friction 0.04, rounded to 6 decimals).
    static const double rows[][3] = {
        {0, 0, 0.04},           {5, 0.173648, 0.055192},   {10, 0.34202, 0.100307},
        {15, 0.5, 0.173975},    {20, 0.642788, 0.273956},  {25, 0.766044, 0.397212},
        {30, 0.866025, 0.54},   {35, 0.939693, 0.69798},   {40, 0.984808, 0.866352},
        {45, 1, 1.04},          {50, 0.984808, 1.21365},   {55, 0.939693, 1.38202},
        {60, 0.866025, 1.54},   {65, 0.766044, 1.68279},   {70, 0.642788, 1.80604},
        {75, 0.5, 1.90603},     {80, 0.34202, 1.97969},    {85, 0.173648, 2.02481},
        {90, 0, 2.04},          {95, -0.173648, 2.02481},  {100, -0.34202, 1.97969},
        {105, -0.5, 1.90603},   {110, -0.642788, 1.80604}, {115, -0.766044, 1.68279},
        {120, -0.866025, 1.54}, {125, -0.939693, 1.38202}, {130, -0.984808, 1.21365},
        {135, -1, 1.04},        {140, -0.984808, 0.866352},{145, -0.939693, 0.69798},
        {150, -0.866025, 0.54}, {155, -0.766044, 0.397212},{160, -0.642788, 0.273956},
        {165, -0.5, 0.173975},  {170, -0.34202, 0.100307}, {175, -0.173648, 0.055192},
        {180, 0, 0.04},
    };
    CoefficientTable table;
    for (const auto& row : rows) {
        table.alpha_deg.push_back(row[0]);
        table.cl.push_back(row[1]);
        table.cd.push_back(row[2]);
    }
    table.validate();
    return table;
}

CoefficientTable CoefficientTable::load_csv(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot read " + path.string());
    CoefficientTable table;
    std::string line;
    long line_no = 0;
    bool header_seen = false;
    while (std::getline(in, line)) {
        ++line_no;
        const auto text = trim(line);
        if (text.empty() || text.front() == '#') continue;
        if (!header_seen) {  // header row
            header_seen = true;
            continue;
        }
        const auto fields = split_csv_line(text);
        const std::string where = path.string() + ":" + std::to_string(line_no);
        if (fields.size() != 3) throw ParseError("expected 3 columns at " + where);
        table.alpha_deg.push_back(parse_double(fields[0], where));
        table.cl.push_back(parse_double(fields[1], where));
        table.cd.push_back(parse_double(fields[2], where));
    }
    table.validate();
    return table;
}

void CoefficientTable::save_csv(const std::filesystem::path& path) const {
    std::ofstream out(path);
    if (!out) throw IoError("cannot write " + path.string());
    out << "alpha_deg,cl,cd\n";
    for (std::size_t i = 0; i < alpha_deg.size(); ++i)
        out << format_double(alpha_deg[i]) << ',' << format_double(cl[i]) << ','
            << format_double(cd[i]) << '\n';
    if (!out) throw IoError("failed writing " + path.string());
}

Coefficients coeff_lookup(const CoefficientTable& table, double alpha_rad) {
    double deg = alpha_rad * 180.0 / std::numbers::pi;
    deg = std::remainder(deg, 360.0);  // into [-180, 180]
    const double sign = deg < 0.0 ? -1.0 : 1.0;
    const double a = std::abs(deg);

    const auto& xs = table.alpha_deg;
    std::size_t hi = 1;
    while (hi + 1 < xs.size() && xs[hi] < a) ++hi;
    const std::size_t lo = hi - 1;
    const double t = (a - xs[lo]) / (xs[hi] - xs[lo]);
    Coefficients c;
    c.cl = sign * (table.cl[lo] + t * (table.cl[hi] - table.cl[lo]));
    c.cd = table.cd[lo] + t * (table.cd[hi] - table.cd[lo]);
    return c;
}

}  // namespace flapevo
