#pragma once

#include <array>
#include <string_view>
#include <vector>

#include "flapevo/errors.hpp"
#include "flapevo/rng.hpp"

namespace flapevo {

// Node transfer functions. Inputs pass through unchanged; outputs are always
// sigmoid so downstream range mapping gets a value in (0, 1); hidden nodes
// draw from the five shaping functions.
enum class ActivationKind { identity, sigmoid, sinusoid, absolute, negative, square, sqrt_abs };

constexpr std::array<ActivationKind, 5> kHiddenActivations = {
    ActivationKind::sinusoid, ActivationKind::absolute, ActivationKind::negative,
    ActivationKind::square, ActivationKind::sqrt_abs};

const char* to_string(ActivationKind kind);
ActivationKind activation_from_string(std::string_view name);  // throws ParseError naming the token
double apply_activation(ActivationKind kind, double x);

enum class NodeRole { input, hidden, output };

const char* to_string(NodeRole role);
NodeRole role_from_string(std::string_view name);

struct CppnNode {
    int id = 0;
    NodeRole role = NodeRole::hidden;
    ActivationKind activation = ActivationKind::identity;
};

struct CppnEdge {
    int src = 0;
    int dst = 0;
    double weight = 0.0;
};

// Compositional pattern network: a feed-forward DAG with three inputs
// (normalized spanwise station, rib similarity, bias = 1) and three sigmoid
// outputs (chord, twist stiffness, bend stiffness), all as unit-interval values.
struct Cppn {
    static constexpr int kInputs = 3;
    static constexpr int kOutputs = 3;
    // Fixed ids: inputs 0..2 (station, similarity, bias), outputs 3..5
    // (chord, k_twist, k_bend). Hidden nodes use ids >= 6.
    static constexpr int kFirstOutput = kInputs;
    static constexpr int kFirstHidden = kInputs + kOutputs;

    std::vector<CppnNode> nodes;
    std::vector<CppnEdge> edges;

    // Structural validation: arity, unique ids, edges reference known nodes,
    // edges never end on an input or start on an output, and the graph is
    // acyclic. Throws ConfigError.
    void validate() const;

    // Topological order of node indices; throws ConfigError on a cycle.
    std::vector<int> topological_order() const;

    bool has_edge(int src, int dst) const;
    bool would_create_cycle(int src, int dst) const;
    int next_node_id() const;

    // Feed-forward evaluation. A node with no incoming edges sees a zero
    // pre-activation, so a disconnected output reads sigmoid(0) = 0.5.
    std::array<double, kOutputs> eval(double station_norm, double similarity) const;

    // Smallest useful network: every input wired to every output, weights U[-1, 1).
    static Cppn minimal_fully_connected(RngStream& rng);
};

}  // namespace flapevo
