// 2-cells of the free 2-sesquicategory: a source 1-word and a bottom-to-top
// list of layers, each a single whiskered generator at a word position.
#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "lgr/scalar.hpp"
#include "lgr/signature.hpp"

namespace lgr {

// A layer: generator `gen` whose inputs start at letter index `pos` of the
// slice below it.  `uid` identifies the layer across moves and is ignored by
// equality and hashing.
struct Layer {
    int gen = 0;
    int pos = 0;
    std::uint32_t uid = 0;
};

std::uint32_t fresh_uid();

struct Diagram {
    int obj = 0;               // object at the right end of every slice
    std::vector<int> source;   // letters, left to right
    std::vector<Layer> layers; // bottom to top

    bool operator==(const Diagram& o) const;
    bool operator!=(const Diagram& o) const { return !(*this == o); }
    std::size_t hash() const;
    std::size_t size() const { return layers.size(); }
    bool is_identity() const { return layers.empty(); }
    // Assigns fresh uids to every layer.
    void renumber();
};

struct DiagramHash {
    std::size_t operator()(const Diagram& d) const { return d.hash(); }
};

Diagram identity_diagram(int obj, std::vector<int> word);

// Word after applying `layer` to `word`; throws BoundaryMismatch.
std::vector<int> apply_layer(const Signature& sig, const std::vector<int>& word, const Layer& layer);
// Slices 0..L: slice k is the word below layer k; slice L the target.
std::vector<std::vector<int>> slices(const Signature& sig, const Diagram& d);
std::vector<int> target_word(const Signature& sig, const Diagram& d);
// Objects of the gaps 0..n of a word with right end `obj` (-1 where undefined).
std::vector<int> gap_objects(const Signature& sig, const std::vector<int>& word, int obj);

bool is_legal(const Signature& sig, const Diagram& d);
GradingVector degree(const Signature& sig, const Diagram& d);

enum class ComposeOp { Vertical, WhiskerLeft, WhiskerRight };

// Vertical: d1 after d2 (t(d2) = s(d1)).  Whiskering: d1 placed left of d2
// (WhiskerLeft requires d1 to be an identity, WhiskerRight requires d2 to be
// one); the general horizontal case runs d2's layers first.
Diagram compose(const Signature& sig, const Diagram& d1, const Diagram& d2, ComposeOp op);
Diagram whisker(const Signature& sig, const std::vector<int>& left, const Diagram& d, const std::vector<int>& right,
                int right_obj);

struct Context {
    std::vector<int> left;   // letters whiskered on the left
    std::vector<int> right;  // letters whiskered on the right
    int right_obj = 0;       // object at the right end of `right`
    Diagram below;           // runs before the hole
    Diagram above;           // runs after the hole
    bool has_below = false;
    bool has_above = false;
};

Diagram contextualize(const Signature& sig, const Context& ctx, const Diagram& d);

// Strands, faces and counters of a diagram.
struct Strand {
    int colour = 0;
    bool closed = false;
    std::vector<int> layers;                 // layers of generators the strand passes through
    std::vector<int> bottom;                 // positions in the source word
    std::vector<int> top;                    // positions in the target word
    std::uint32_t key = 0;                   // min uid of its generators (closed strands)
};

struct DotInfo {
    int layer = 0;
    int colour = 0;
    int face = 0;
};

struct StrandGraph {
    std::vector<std::vector<int>> words;     // slices
    std::vector<int> letter_offset;          // per slice, first node index
    std::vector<int> node_strand;            // letter node -> strand id
    std::vector<Strand> strands;
    std::vector<int> cell_offset;            // per slice, first cell index
    std::vector<int> cell_face;              // cell -> face id
    std::vector<int> cell_object;            // cell -> object id
    int num_faces = 0;
    std::vector<DotInfo> dots;
    // Foam counters (index by colour; entry 0 unused).
    std::vector<int> shadings;
    std::vector<int> closed;
    std::vector<int> dot_count;

    int strand_at(int slice, int pos) const { return node_strand[letter_offset[slice] + pos]; }
    int face_at(int slice, int gap) const { return cell_face[cell_offset[slice] + gap]; }
    int object_at(int slice, int gap) const { return cell_object[cell_offset[slice] + gap]; }
};

StrandGraph strand_graph(const Signature& sig, const Diagram& d);

// Counter tuple used by the termination order.
std::vector<long> order_counters(const Signature& sig, const Diagram& d);

// Text form: "<object> [letters...] | gen@pos ; gen@pos ; ..."
Diagram parse_diagram_text(const Signature& sig, const std::string& text);
std::string diagram_to_text(const Signature& sig, const Diagram& d);
// Compact rendering of the layers, e.g. "[dot_1]" or "[lcup_1 ; rcap_1]".
std::string diagram_brief(const Signature& sig, const Diagram& d);

}  // namespace lgr
