#pragma once

#include <filesystem>
#include <optional>
#include <string>

#include "flapevo/genotype.hpp"
#include "flapevo/wing.hpp"

namespace flapevo {

// Phenotype JSON round trip (format_version 1: label + blade array).
std::string serialize_phenotype(const WingPhenotype& wing);
WingPhenotype deserialize_phenotype(const std::string& text);
void save_phenotype(const WingPhenotype& wing, const std::filesystem::path& path);
WingPhenotype load_phenotype(const std::filesystem::path& path);

// A design file holds either a genotype (object with "cppn") or a phenotype
// (object with "blades"). Genotypes are expressed with the given ranges so
// callers always get a concrete wing; the genotype travels along when present.
struct LoadedDesign {
    std::optional<Genotype> genotype;
    WingPhenotype phenotype;
};

LoadedDesign load_design(const std::filesystem::path& path, const ExpressionRanges& ranges);

}  // namespace flapevo
