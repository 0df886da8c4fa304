#include "flapevo/genotype.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "flapevo/textio.hpp"

namespace flapevo {

namespace {

double lerp(const Interval& range, double unit) { return range.lo + (range.hi - range.lo) * unit; }

double log_lerp(const Interval& range, double unit) {
    return std::exp(std::log(range.lo) + (std::log(range.hi) - std::log(range.lo)) * unit);
}

}  // namespace

ExpressionRanges expression_ranges(const FeasibleRanges& ranges) {
    return {ranges.chord_mm, ranges.k_twist, ranges.k_bend};
}

WingPhenotype express(const Genotype& genotype, const ExpressionRanges& ranges) {
    if (genotype.entries.empty()) throw ConfigError("genotype has no expression entries");
    if (!(ranges.k_twist.lo > 0.0) || !(ranges.k_bend.lo > 0.0))
        throw ConfigError("stiffness ranges must be positive for log interpolation");

    double total = 0.0;
    for (const ExpressionEntry& entry : genotype.entries) total += entry.position_mm;
    // Degenerate genotypes (total station <= 0) still express deterministically;
    // the feasibility objective is what screens them out.
    const double denom = std::abs(total) > 1e-12 ? total : 1.0;

    std::vector<BladeSpec> blades;
    blades.reserve(genotype.entries.size());
    double cumulative = 0.0;
    for (const ExpressionEntry& entry : genotype.entries) {
        cumulative += entry.position_mm;
        const auto out = genotype.cppn.eval(cumulative / denom, entry.similarity);
        BladeSpec blade;
        blade.span_offset_mm = entry.position_mm;
        blade.chord_mm = lerp(ranges.chord_mm, out[0]);
        blade.k_twist = log_lerp(ranges.k_twist, out[1]);
        blade.k_bend = log_lerp(ranges.k_bend, out[2]);
        blades.push_back(blade);
    }
    WingPhenotype wing;
    wing.blades = std::move(blades);
    return wing;
}

namespace {

enum class Primitive {
    insert_entry,
    remove_entry,
    perturb_entry,
    perturb_weight,
    add_edge,
    add_node,
    change_activation,
};

Primitive roll_primitive(RngStream& rng, const MutationWeights& w) {
    const double weights[] = {w.insert_entry, w.remove_entry,  w.perturb_entry, w.perturb_weight,
                              w.add_edge,     w.add_node,      w.change_activation};
    double total = 0.0;
    for (double x : weights) total += x;
    if (!(total > 0.0)) throw ConfigError("mutation weights must not all be zero");
    double pick = rng.uniform01() * total;
    for (int i = 0; i < 7; ++i) {
        pick -= weights[i];
        if (pick < 0.0) return static_cast<Primitive>(i);
    }
    return Primitive::change_activation;
}

bool try_apply(Genotype& g, Primitive primitive, RngStream& rng, const FeasibleRanges& ranges) {
    Cppn& net = g.cppn;
    switch (primitive) {
        case Primitive::insert_entry: {
            const std::size_t at = rng.uniform_index(g.entries.size() + 1);
            ExpressionEntry entry{rng.uniform(ranges.span_offset_mm.lo, ranges.span_offset_mm.hi),
                                  rng.uniform01()};
            g.entries.insert(g.entries.begin() + static_cast<std::ptrdiff_t>(at), entry);
            return true;
        }
        case Primitive::remove_entry: {
            if (g.entries.size() <= 1) return false;  // a genotype always keeps one station
            const std::size_t at = rng.uniform_index(g.entries.size());
            g.entries.erase(g.entries.begin() + static_cast<std::ptrdiff_t>(at));
            return true;
        }
        case Primitive::perturb_entry: {
            ExpressionEntry& entry = g.entries[rng.uniform_index(g.entries.size())];
            entry.position_mm += rng.normal(0.0, 10.0);  // stored unclamped
            entry.similarity = std::clamp(entry.similarity + rng.normal(0.0, 0.1), 0.0, 1.0);
            return true;
        }
        case Primitive::perturb_weight: {
            if (net.edges.empty()) return false;
            net.edges[rng.uniform_index(net.edges.size())].weight += rng.normal(0.0, 0.5);
            return true;
        }
        case Primitive::add_edge: {
            std::vector<std::pair<int, int>> candidates;
            for (const CppnNode& src : net.nodes) {
                if (src.role == NodeRole::output) continue;
                for (const CppnNode& dst : net.nodes) {
                    if (dst.role == NodeRole::input || dst.id == src.id) continue;
                    if (net.has_edge(src.id, dst.id)) continue;
                    if (net.would_create_cycle(src.id, dst.id)) continue;
                    candidates.emplace_back(src.id, dst.id);
                }
            }
            if (candidates.empty()) return false;
            const auto [src, dst] = candidates[rng.uniform_index(candidates.size())];
            net.edges.push_back({src, dst, rng.uniform(-1.0, 1.0)});
            return true;
        }
        case Primitive::add_node: {
            if (net.edges.empty()) return false;
            const std::size_t at = rng.uniform_index(net.edges.size());
            const CppnEdge old = net.edges[at];
            net.edges.erase(net.edges.begin() + static_cast<std::ptrdiff_t>(at));
            CppnNode hidden{net.next_node_id(), NodeRole::hidden,
                            kHiddenActivations[rng.uniform_index(kHiddenActivations.size())]};
            net.nodes.push_back(hidden);
            // Split convention: unit weight into the new node, the old weight out
            // of it, so the path strength is preserved at insertion time.
            net.edges.push_back({old.src, hidden.id, 1.0});
            net.edges.push_back({hidden.id, old.dst, old.weight});
            return true;
        }
        case Primitive::change_activation: {
            std::vector<int> hidden;
            for (std::size_t i = 0; i < net.nodes.size(); ++i)
                if (net.nodes[i].role == NodeRole::hidden) hidden.push_back(static_cast<int>(i));
            if (hidden.empty()) return false;
            const int at = hidden[rng.uniform_index(hidden.size())];
            net.nodes[at].activation =
                kHiddenActivations[rng.uniform_index(kHiddenActivations.size())];
            return true;
        }
    }
    return false;
}

}  // namespace

void mutate(Genotype& genotype, RngStream& rng, const FeasibleRanges& ranges,
            const MutationWeights& weights) {
    // Exactly one applicable primitive fires; inapplicable rolls are retried.
    for (int attempt = 0; attempt < 1000; ++attempt) {
        if (try_apply(genotype, roll_primitive(rng, weights), rng, ranges)) {
            genotype.lineage = rng.next_u64();
            return;
        }
    }
    throw ConfigError("no applicable mutation primitive (check mutation weights)");
}

std::vector<ExpressionEntry> splice_entries(const std::vector<ExpressionEntry>& a,
                                            const std::vector<ExpressionEntry>& b,
                                            std::size_t cut_a, std::size_t cut_b) {
    std::vector<ExpressionEntry> child(a.begin(), a.begin() + static_cast<std::ptrdiff_t>(cut_a));
    child.insert(child.end(), b.begin() + static_cast<std::ptrdiff_t>(cut_b), b.end());
    return child;
}

Genotype crossover(const Genotype& a, const Genotype& b, double lift_a, double lift_b,
                   RngStream& rng) {
    std::vector<ExpressionEntry> entries;
    do {
        const std::size_t cut_a = rng.uniform_index(a.entries.size() + 1);
        const std::size_t cut_b = rng.uniform_index(b.entries.size() + 1);
        entries = splice_entries(a.entries, b.entries, cut_a, cut_b);
    } while (entries.empty());

    const bool take_a = lift_a > lift_b || (lift_a == lift_b && rng.coin());
    Genotype child;
    child.cppn = take_a ? a.cppn : b.cppn;
    child.entries = std::move(entries);
    child.age = std::max(a.age, b.age);
    child.lineage = rng.next_u64();
    return child;
}

Genotype random_genotype(RngStream& rng, const FeasibleRanges& ranges) {
    Genotype g;
    const std::size_t count = 1 + rng.uniform_index(6);
    g.entries.reserve(count);
    for (std::size_t i = 0; i < count; ++i)
        g.entries.push_back({rng.uniform(ranges.span_offset_mm.lo, ranges.span_offset_mm.hi),
                             rng.uniform01()});
    g.cppn = Cppn::minimal_fully_connected(rng);
    g.age = 0;
    g.lineage = rng.next_u64();
    return g;
}

std::string serialize(const Genotype& genotype) {
    nlohmann::ordered_json doc;
    doc["format_version"] = 1;
    doc["age"] = genotype.age;
    doc["lineage"] = genotype.lineage;
    doc["entries"] = nlohmann::ordered_json::array();
    for (const ExpressionEntry& entry : genotype.entries)
        doc["entries"].push_back({{"position_mm", entry.position_mm},
                                  {"similarity", entry.similarity}});
    nlohmann::ordered_json net;
    net["nodes"] = nlohmann::ordered_json::array();
    for (const CppnNode& node : genotype.cppn.nodes)
        net["nodes"].push_back({{"id", node.id},
                                {"role", to_string(node.role)},
                                {"activation", to_string(node.activation)}});
    net["edges"] = nlohmann::ordered_json::array();
    for (const CppnEdge& edge : genotype.cppn.edges)
        net["edges"].push_back({{"src", edge.src}, {"dst", edge.dst}, {"weight", edge.weight}});
    doc["cppn"] = std::move(net);
    return doc.dump(2) + "\n";
}

Genotype deserialize_genotype(const std::string& text) {
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& err) {
        throw ParseError(std::string("genotype JSON: ") + err.what());
    }
    try {
        if (doc.at("format_version").get<int>() != 1)
            throw ParseError("unsupported genotype format_version");
        Genotype g;
        g.age = doc.at("age").get<int>();
        if (g.age < 0) throw ParseError("genotype age must be non-negative");
        g.lineage = doc.value("lineage", std::uint64_t{0});
        for (const auto& item : doc.at("entries")) {
            ExpressionEntry entry{item.at("position_mm").get<double>(),
                                  item.at("similarity").get<double>()};
            if (entry.similarity < 0.0 || entry.similarity > 1.0)
                throw ParseError("entry similarity outside [0, 1]");
            g.entries.push_back(entry);
        }
        if (g.entries.empty()) throw ParseError("genotype needs at least one entry");
        for (const auto& item : doc.at("cppn").at("nodes"))
            g.cppn.nodes.push_back({item.at("id").get<int>(),
                                    role_from_string(item.at("role").get<std::string>()),
                                    activation_from_string(item.at("activation").get<std::string>())});
        for (const auto& item : doc.at("cppn").at("edges"))
            g.cppn.edges.push_back({item.at("src").get<int>(), item.at("dst").get<int>(),
                                    item.at("weight").get<double>()});
        g.cppn.validate();
        return g;
    } catch (const nlohmann::json::exception& err) {
        throw ParseError(std::string("genotype JSON: ") + err.what());
    }
}

void save_genotype(const Genotype& genotype, const std::filesystem::path& path) {
    std::ofstream out(path);
    if (!out) throw IoError("cannot write " + path.string());
    out << serialize(genotype);
    if (!out) throw IoError("failed writing " + path.string());
}

Genotype load_genotype(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot read " + path.string());
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return deserialize_genotype(buffer.str());
}

}  // namespace flapevo
