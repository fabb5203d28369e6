// The E-congruence engine: interchange and rule moves with their unit
// scalars, canonical representatives, budgeted congruence search and loop
// tracing.
#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "lgr/diagram.hpp"
#include "lgr/polygraph.hpp"
#include "lgr/scalar.hpp"

namespace lgr {

// One modulo move.  Interchange moves swap layers `layer` and `layer+1`
// (variant 0: the upper generator is left of the lower one, variant 1: it is
// right of it).  Rule moves replace the window of E-rule `variant` starting
// at `layer` with horizontal shift `anchor`; dir = +1 rewrites lhs to rhs and
// dir = -1 rhs to lhs.  The scalar satisfies before = scalar * after.
struct EMove {
    std::string kind = "Interchange";
    int variant = 0;
    int layer = 0;
    int anchor = 0;
    int dir = 1;
    std::string rule;
    Unit scalar;
};

Unit interchange_scalar(const Signature& sig, int upper_gen, int lower_gen);

// Bitmask of valid interchange variants at layer k (bit 0: variant 0, bit 1: variant 1).
int interchange_options(const Signature& sig, const Diagram& d, int k);
// Swaps layers k, k+1 in place; returns false when the variant is invalid.
bool apply_interchange(const Signature& sig, Diagram& d, int k, int variant, EMove* move = nullptr);

// Applies a move in place; throws ReplayError when it is not applicable or
// when its recorded scalar disagrees with the recomputed one.
void apply_move(const Ruleset& rs, Diagram& d, const EMove& move, bool check_scalar = true);
EMove inverse_move(const EMove& m);
std::vector<EMove> inverse_path(const std::vector<EMove>& path);
Unit path_scalar(const std::vector<EMove>& path);

// Literal occurrence of one side of an E-rule: returns the replacement
// move when the pattern sits in `d` at (layer, anchor).
std::optional<EMove> rule_move_at(const Ruleset& rs, const Diagram& d, int rule, int dir, int layer, int anchor);

struct NeighborOptions {
    bool interchanges = true;
    bool rule_moves = true;
    bool insertions = false;  // rule moves whose pattern has no layers
};

struct Neighbor {
    EMove move;
    Diagram diagram;
};

std::vector<Neighbor> e_neighbors(const Ruleset& rs, const Diagram& d, const NeighborOptions& opt = {});

// Sorts layers with interchanges so that independent generators sit in
// left-to-right order from bottom to top.  Ambiguous pairs (both variants
// valid) are left in place.
std::pair<Diagram, Unit> interchange_canonical(const Signature& sig, const Diagram& d,
                                               std::vector<EMove>* moves = nullptr);

// Removes zigzags along strands using the Zigzag rules of E.
Diagram straighten(const Ruleset& rs, const Diagram& d, std::vector<EMove>* moves = nullptr);

struct Tidy {
    Diagram diagram;
    std::vector<EMove> moves;  // from the input to `diagram`
    Unit scalar;               // input = scalar * diagram
};

// Straightening followed by the interchange-canonical form.
Tidy tidy(const Ruleset& rs, const Diagram& d);

// Straightens one zigzag given by its cup and cap layers; returns nullopt if
// they do not form a zigzag.
std::optional<std::vector<EMove>> straighten_pair(const Ruleset& rs, Diagram& d, int cup_layer, int cap_layer);

// A zigzag pair along a strand: cup below cap joined by a strand segment.
struct ZigzagPair {
    int cup = 0;
    int cap = 0;
    int shape = 0;  // 1: left-middle-right from bottom, 2: mirrored
};
std::vector<ZigzagPair> zigzag_pairs(const Signature& sig, const Diagram& d);

enum class Verdict { Yes, No, Unknown };
std::string to_string(Verdict v);

struct CongruenceWitness {
    Diagram source;
    Diagram target;
    std::vector<EMove> moves;
    Unit scalar;  // source = scalar * target
};

struct CongruenceResult {
    Verdict verdict = Verdict::Unknown;
    Unit scalar;
    CongruenceWitness witness;
    std::string reason;
    long states = 0;
};

constexpr long kDefaultCongruenceBudget = 100000;

// Invariants preserved by every E-move; unequal invariants prove non-congruence.
std::vector<long> e_invariants(const Ruleset& rs, const Diagram& d);

CongruenceResult congruent_modulo(const Ruleset& rs, const Diagram& d1, const Diagram& d2,
                                  long budget = kDefaultCongruenceBudget);

// Replays a witness from its source; throws ReplayError on failure and
// returns the reached diagram (uids carried along the moves).
Diagram replay(const Ruleset& rs, const Diagram& source, const std::vector<EMove>& moves, Unit* scalar = nullptr);

// Tracks dots and strands along a loop.
struct LoopTrace {
    Unit scalar;
    // Dots: start layer index -> end layer index.  Strands: start strand id -> end strand id.
    std::map<int, int> dot_map;
    std::map<int, int> strand_map;
    bool identity = true;
};

LoopTrace loop_scalar(const Ruleset& rs, const CongruenceWitness& witness);

// Checks that no R rule has its source E-congruent to a support monomial of
// its target; inconclusive checks become warnings.  Throws AdaptednessError.
void check_adaptedness(Ruleset& rs, long budget = 2000);

// Search a bounded space of diagrams reachable from `start` by moves
// suggested by `expand`, until `goal` accepts a state.
struct SearchNode {
    Diagram diagram;
    int parent = -1;
    std::vector<EMove> moves;  // from parent to this node
};

struct SearchResult {
    bool found = false;
    std::vector<EMove> path;
    Diagram diagram;
    long states = 0;
    bool exhausted = false;
};

using ExpandFn = std::function<std::vector<std::pair<std::vector<EMove>, Diagram>>(const Diagram&)>;
using GoalFn = std::function<bool(const Diagram&)>;

SearchResult bfs_search(const Diagram& start, const ExpandFn& expand, const GoalFn& goal, long budget);

}  // namespace lgr
