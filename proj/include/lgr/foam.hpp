// The graded gl2-foam instance: rulesets for parameter d, boundary circles,
// facet components, reduced foams, bubble evaluation and hom-space bases.
#pragma once

#include <string>
#include <vector>

#include "lgr/rewrite.hpp"

namespace lgr {

enum class FoamVariant { GFoam, GFoamPrime };
FoamVariant foam_variant_from_string(const std::string& s);

// Loads the shipped foam ruleset for parameter d.
Ruleset build_instance(int d, FoamVariant variant = FoamVariant::GFoam);

// Parses a 1-word such as "down_1 up_2" (empty string: the empty word).
std::vector<int> parse_word(const Signature& sig, const std::string& text);

// Components of the closed 1-manifold traced by labels along the boundary of
// hom(W, W') at right object `obj`.
struct BoundaryCircles {
    int count = 0;
    // Node ids: (side, gap, label) flattened; side 0 = bottom word, 1 = top word.
    std::vector<int> component;
    std::vector<std::vector<int>> words;
};
BoundaryCircles boundary_circles(const Signature& sig, const std::vector<int>& w, const std::vector<int>& w2, int obj);

// Facet components of a foam diagram: nodes (cell, label j) where label j is
// not merged with a neighbour.
struct FacetComponents {
    int count = 0;
    std::vector<std::vector<int>> node;  // per cell, label -> component or -1
    std::vector<int> dots;               // per component, number of dots
    std::vector<std::vector<int>> circles;  // per component, touched boundary circles
    std::vector<int> bottom_cell;        // per component, lowest-leftmost cell
    std::vector<int> bottom_label;       // per component, label at that cell
};
FacetComponents facet_components(const Signature& sig, const Diagram& d);

// Per facet component, its boundary circles and its number of dots, as a
// sorted flat list.  Every E-move is an isotopy and preserves it.
std::vector<long> facet_invariant(const Signature& sig, const Diagram& d);

// Geometric reducedness: no closed strands, every facet component a disk
// meeting exactly one boundary circle, at most one dot per component.
bool geometrically_reduced(const Signature& sig, const Diagram& d);
bool is_reduced(const Ruleset& rs, const Diagram& d);

struct BasisElement {
    std::vector<int> delta;  // dotted boundary circles
    Diagram diagram;
};

// One delta-dotted reduced foam per subset of boundary circles.  Throws
// NotParallel when the words do not share their end objects.
std::vector<BasisElement> hom_basis(const Ruleset& rs, const std::vector<int>& w, const std::vector<int>& w2,
                                    int obj);

struct BubbleEvaluation {
    Vector result;
    std::vector<RewriteStep> steps;
};
// Removes the closed components with bubble and dot rules only; throws NoBubble.
BubbleEvaluation bubble_evaluate(const Ruleset& rs, const Diagram& d);

// Dimension of hom(W, W') for a generic ruleset, counted as the number of
// distinct normal forms of all diagrams with at most `max_layers` layers.
// With `loop_free`, diagrams containing a closed strand are skipped: in a
// ruleset without circle evaluations they span a free polynomial part.
long hom_dimension_by_enumeration(const Ruleset& rs, const std::vector<int>& w, const std::vector<int>& w2, int obj,
                                  int max_layers, bool loop_free = true);

}  // namespace lgr
