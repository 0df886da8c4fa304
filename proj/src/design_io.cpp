#include "flapevo/design_io.hpp"

#include <fstream>

#include <json.hpp>

#include "flapevo/errors.hpp"

namespace flapevo {

namespace {

using nlohmann::json;

std::string read_text(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open design file: " + path.string());
    return std::string((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
}

}  // namespace

std::string serialize_phenotype(const WingPhenotype& wing) {
    nlohmann::ordered_json j;
    j["format_version"] = 1;
    j["label"] = wing.label;
    nlohmann::ordered_json blades = nlohmann::ordered_json::array();
    for (const BladeSpec& b : wing.blades) {
        nlohmann::ordered_json blade;
        blade["span_offset_mm"] = b.span_offset_mm;
        blade["chord_mm"] = b.chord_mm;
        blade["k_twist"] = b.k_twist;
        blade["k_bend"] = b.k_bend;
        blades.push_back(std::move(blade));
    }
    j["blades"] = std::move(blades);
    return j.dump(2) + "\n";
}

WingPhenotype deserialize_phenotype(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& e) {
        throw ParseError(std::string("phenotype is not valid JSON: ") + e.what());
    }
    try {
        if (j.contains("format_version") && j.at("format_version").get<int>() != 1) {
            throw ParseError("unsupported phenotype format_version");
        }
        if (!j.contains("blades") || !j.at("blades").is_array() || j.at("blades").empty()) {
            throw ParseError("phenotype needs a non-empty 'blades' array");
        }
        std::vector<BladeSpec> blades;
        for (const json& item : j.at("blades")) {
            BladeSpec b;
            b.span_offset_mm = item.at("span_offset_mm").get<double>();
            b.chord_mm = item.at("chord_mm").get<double>();
            b.k_twist = item.at("k_twist").get<double>();
            b.k_bend = item.at("k_bend").get<double>();
            blades.push_back(b);
        }
        std::string label = j.value("label", std::string{});
        return WingPhenotype(std::move(blades), std::move(label));
    } catch (const json::exception& e) {
        throw ParseError(std::string("phenotype field missing or mistyped: ") + e.what());
    }
}

void save_phenotype(const WingPhenotype& wing, const std::filesystem::path& path) {
    std::ofstream out(path);
    if (!out) throw IoError("cannot open for writing: " + path.string());
    out << serialize_phenotype(wing);
    out.close();
    if (!out) throw IoError("write failed: " + path.string());
}

WingPhenotype load_phenotype(const std::filesystem::path& path) {
    return deserialize_phenotype(read_text(path));
}

LoadedDesign load_design(const std::filesystem::path& path, const ExpressionRanges& ranges) {
    const std::string text = read_text(path);
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& e) {
        throw ParseError(path.string() + " is not valid JSON: " + e.what());
    }
    LoadedDesign design;
    if (j.is_object() && j.contains("cppn")) {
        design.genotype = deserialize_genotype(text);
        design.phenotype = express(*design.genotype, ranges);
        if (design.phenotype.label.empty()) design.phenotype.label = path.stem().string();
    } else if (j.is_object() && j.contains("blades")) {
        design.phenotype = deserialize_phenotype(text);
        if (design.phenotype.label.empty()) design.phenotype.label = path.stem().string();
    } else {
        throw ParseError(path.string() +
                         ": design file must contain 'cppn' (genotype) or 'blades' (phenotype)");
    }
    return design;
}

}  // namespace flapevo
