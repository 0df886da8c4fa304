#include "flapevo/cppn.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <unordered_map>
#include <unordered_set>

namespace flapevo {

const char* to_string(ActivationKind kind) {
    switch (kind) {
        case ActivationKind::identity: return "identity";
        case ActivationKind::sigmoid: return "sigmoid";
        case ActivationKind::sinusoid: return "sinusoid";
        case ActivationKind::absolute: return "absolute";
        case ActivationKind::negative: return "negative";
        case ActivationKind::square: return "square";
        case ActivationKind::sqrt_abs: return "sqrt_abs";
    }
    return "?";
}

ActivationKind activation_from_string(std::string_view name) {
    for (ActivationKind kind :
         {ActivationKind::identity, ActivationKind::sigmoid, ActivationKind::sinusoid,
          ActivationKind::absolute, ActivationKind::negative, ActivationKind::square,
          ActivationKind::sqrt_abs}) {
        if (name == to_string(kind)) return kind;
    }
    throw ParseError("unknown activation '" + std::string(name) + "'");
}

double apply_activation(ActivationKind kind, double x) {
    switch (kind) {
        case ActivationKind::identity: return x;
        case ActivationKind::sigmoid: return 1.0 / (1.0 + std::exp(-x));
        case ActivationKind::sinusoid: return std::sin(x);
        case ActivationKind::absolute: return std::abs(x);
        case ActivationKind::negative: return -x;
        case ActivationKind::square: return x * x;
        case ActivationKind::sqrt_abs: return std::sqrt(std::abs(x));
    }
    return x;
}

const char* to_string(NodeRole role) {
    switch (role) {
        case NodeRole::input: return "input";
        case NodeRole::hidden: return "hidden";
        case NodeRole::output: return "output";
    }
    return "?";
}

NodeRole role_from_string(std::string_view name) {
    if (name == "input") return NodeRole::input;
    if (name == "hidden") return NodeRole::hidden;
    if (name == "output") return NodeRole::output;
    throw ParseError("unknown node role '" + std::string(name) + "'");
}

namespace {

std::unordered_map<int, int> index_by_id(const std::vector<CppnNode>& nodes) {
    std::unordered_map<int, int> map;
    map.reserve(nodes.size());
    for (std::size_t i = 0; i < nodes.size(); ++i) {
        if (!map.emplace(nodes[i].id, static_cast<int>(i)).second)
            throw ConfigError("duplicate node id " + std::to_string(nodes[i].id));
    }
    return map;
}

}  // namespace

void Cppn::validate() const {
    int inputs = 0;
    int outputs = 0;
    const auto by_id = index_by_id(nodes);
    for (const CppnNode& node : nodes) {
        if (node.role == NodeRole::input) ++inputs;
        if (node.role == NodeRole::output) {
            ++outputs;
            if (node.activation != ActivationKind::sigmoid)
                throw ConfigError("output nodes must use the sigmoid activation");
        }
    }
    if (inputs != kInputs || outputs != kOutputs)
        throw ConfigError("network must have exactly 3 inputs and 3 outputs");
    for (int id = 0; id < kFirstHidden; ++id) {
        const auto it = by_id.find(id);
        if (it == by_id.end())
            throw ConfigError("missing fixed node id " + std::to_string(id));
        const NodeRole expected = id < kFirstOutput ? NodeRole::input : NodeRole::output;
        if (nodes[it->second].role != expected)
            throw ConfigError("node id " + std::to_string(id) + " has the wrong role");
    }
    for (const CppnEdge& edge : edges) {
        const auto src = by_id.find(edge.src);
        const auto dst = by_id.find(edge.dst);
        if (src == by_id.end() || dst == by_id.end())
            throw ConfigError("edge references unknown node");
        if (nodes[src->second].role == NodeRole::output)
            throw ConfigError("edges may not start at an output");
        if (nodes[dst->second].role == NodeRole::input)
            throw ConfigError("edges may not end at an input");
        if (!std::isfinite(edge.weight)) throw ConfigError("edge weight must be finite");
    }
    (void)topological_order();  // throws on a cycle
}

std::vector<int> Cppn::topological_order() const {
    const auto by_id = index_by_id(nodes);
    const int n = static_cast<int>(nodes.size());
    std::vector<int> indegree(n, 0);
    std::vector<std::vector<int>> out(n);
    for (const CppnEdge& edge : edges) {
        const int s = by_id.at(edge.src);
        const int d = by_id.at(edge.dst);
        out[s].push_back(d);
        ++indegree[d];
    }
    std::vector<int> order;
    order.reserve(n);
    std::vector<int> ready;
    for (int i = 0; i < n; ++i)
        if (indegree[i] == 0) ready.push_back(i);
    while (!ready.empty()) {
        const int i = ready.back();
        ready.pop_back();
        order.push_back(i);
        for (int j : out[i])
            if (--indegree[j] == 0) ready.push_back(j);
    }
    if (static_cast<int>(order.size()) != n) throw ConfigError("network graph contains a cycle");
    return order;
}

bool Cppn::has_edge(int src, int dst) const {
    return std::any_of(edges.begin(), edges.end(),
                       [&](const CppnEdge& e) { return e.src == src && e.dst == dst; });
}

bool Cppn::would_create_cycle(int src, int dst) const {
    if (src == dst) return true;
    // Is src reachable from dst along existing edges?
    std::unordered_set<int> seen{dst};
    std::vector<int> stack{dst};
    while (!stack.empty()) {
        const int node = stack.back();
        stack.pop_back();
        if (node == src) return true;
        for (const CppnEdge& edge : edges)
            if (edge.src == node && seen.insert(edge.dst).second) stack.push_back(edge.dst);
    }
    return false;
}

int Cppn::next_node_id() const {
    int next = kFirstHidden;
    for (const CppnNode& node : nodes) next = std::max(next, node.id + 1);
    return next;
}

std::array<double, Cppn::kOutputs> Cppn::eval(double station_norm, double similarity) const {
    const auto by_id = index_by_id(nodes);
    std::vector<double> value(nodes.size(), 0.0);
    std::vector<double> preact(nodes.size(), 0.0);
    const auto order = topological_order();
    for (int i : order) {
        const CppnNode& node = nodes[i];
        if (node.role == NodeRole::input) {
            if (node.id == 0) value[i] = station_norm;
            else if (node.id == 1) value[i] = similarity;
            else value[i] = 1.0;  // bias
        } else {
            value[i] = apply_activation(node.activation, preact[i]);
        }
        for (const CppnEdge& edge : edges)
            if (edge.src == node.id) preact[by_id.at(edge.dst)] += edge.weight * value[i];
    }
    std::array<double, kOutputs> outputs{};
    for (int k = 0; k < kOutputs; ++k) outputs[k] = value[by_id.at(kFirstOutput + k)];
    return outputs;
}

Cppn Cppn::minimal_fully_connected(RngStream& rng) {
    Cppn net;
    for (int id = 0; id < kInputs; ++id)
        net.nodes.push_back({id, NodeRole::input, ActivationKind::identity});
    for (int id = kFirstOutput; id < kFirstHidden; ++id)
        net.nodes.push_back({id, NodeRole::output, ActivationKind::sigmoid});
    for (int src = 0; src < kInputs; ++src)
        for (int dst = kFirstOutput; dst < kFirstHidden; ++dst)
            net.edges.push_back({src, dst, rng.uniform(-1.0, 1.0)});
    return net;
}

}  // namespace flapevo
