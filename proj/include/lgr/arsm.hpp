// Finite abstract rewriting systems modulo: elements with R-edges (oriented,
// optionally scalar) and E-edges (symmetric, optionally scalar), with
// termination, normal forms, connected components, local confluence,
// scalar coherence and Church-Rosser witnesses.
#pragma once

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "lgr/polygraph.hpp"
#include "lgr/scalar.hpp"

namespace lgr {

struct ArsmEdge {
    int src = 0;
    int tgt = 0;
    std::string label;
    std::optional<Unit> scalar;  // src = scalar * tgt
};

struct FiniteARSM {
    std::vector<std::string> elements;
    std::vector<ArsmEdge> r_edges;
    std::vector<ArsmEdge> e_edges;
    std::vector<std::pair<int, int>> order;  // optional strict order: first > second

    int index(const std::string& name) const;  // throws ParseError
    int add_element(const std::string& name);  // returns the existing index when present
};

// JSON: {"elements": [...], "r_edges": [{"src","tgt","label","scalar"}],
//        "e_edges": [{"src","tgt","scalar"}], "order": [[a, b], ...]}
FiniteARSM parse_arsm(const std::string& json_text);
FiniteARSM load_arsm(const std::string& path);
std::string arsm_to_json(const FiniteARSM& sys);

// One step of a path: an R-edge forward, or an E-edge in either direction.
struct ArsmStep {
    bool is_r = true;
    int edge = 0;
    int dir = 1;
    int from = 0;
    int to = 0;
};

struct LocalBranching {
    int source_class = 0;
    int left_edge = 0;
    int right_edge = 0;
    bool joinable = false;
    int meet = -1;  // common element reached by both sides
    std::vector<ArsmStep> left_path;   // from the left target
    std::vector<ArsmStep> right_path;  // from the right target
};

struct ArsmReport {
    std::vector<int> e_class;       // element -> E-class
    int num_e_classes = 0;
    bool terminating = false;       // no cycle of R-steps on E-classes
    std::vector<int> normal_forms;  // elements whose class has no outgoing R-edge
    int num_normal_classes = 0;
    std::vector<int> component;     // element -> component of R and E together
    int num_components = 0;         // pi_0 of the whole system
    std::vector<LocalBranching> branchings;
    bool locally_confluent = false;
    bool confluent = false;         // every class reaches exactly one normal class
    bool scalars_present = false;
    bool scalar_coherent = true;    // every E-cycle has scalar 1
    std::vector<int> incoherent_edges;
    bool order_compatible = true;   // every R-edge decreases the supplied order
};

ArsmReport analyze(const FiniteARSM& sys);
std::string report_to_json(const FiniteARSM& sys, const ArsmReport& rep);

struct ChurchRosser {
    std::vector<ArsmStep> g;  // from x
    std::vector<ArsmStep> h;  // from y
    int meet = -1;
};

// Forward paths (R-steps and E-steps) from x and from y to a common element.
// Throws NotCongruent when x and y lie in different components.
std::optional<ChurchRosser> church_rosser_witness(const FiniteARSM& sys, int x, int y);

// The finite system of diagrams from `word` to `target` with at most
// `max_layers` generators, with one R-edge per monomial rewriting step and one
// E-edge per E-move staying inside the set.
FiniteARSM arsm_from_ruleset(const Ruleset& rs, const std::vector<int>& word, const std::vector<int>& target,
                             int obj, int max_layers);

}  // namespace lgr
