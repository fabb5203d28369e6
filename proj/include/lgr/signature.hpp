// Signatures: objects, 1-generators (letters) and graded 2-generators.
//
// A 1-word is a list of letters read right to left: the object at its right
// end is the source, and each letter maps the object on its right to the
// object on its left.  Letters are stored as types with an action table, so a
// single letter type such as "up_1" can be used over every object where it is
// defined.
#pragma once

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "lgr/scalar.hpp"

namespace lgr {

enum class InterchangePolicy {
    Mu,     // scalar mu(deg upper, deg lower)
    Super,  // sign (-1)^{p p'} on the first grading component
};

struct LetterType {
    std::string name;
    int colour = 0;
    int orient = 0;         // 0 = up, 1 = down (foam); 0 otherwise
    std::vector<int> act;   // act[right object] = left object, or -1
};

struct Generator {
    std::string name;
    std::string kind;       // dot, rcup, rcap, lcup, lcap, cross, or gen
    int colour = 0;
    int colour2 = 0;
    int orient = 0;
    int orient2 = 0;
    std::vector<int> src;   // input letters, left to right
    std::vector<int> tgt;   // output letters, left to right
    GradingVector degree;
    std::vector<char> allowed;  // indexed by the object right of the inputs; empty = any
    std::string glyph;
    // Leg connectivity: legs 0..n-1 are inputs, n..n+m-1 outputs.
    std::vector<std::pair<int, int>> links;
    bool passes_all = false;  // true when every leg lies on one strand

    int n_in() const { return static_cast<int>(src.size()); }
    int n_out() const { return static_cast<int>(tgt.size()); }
};

class Signature {
public:
    std::string family;  // "gfoam" for foam signatures, "" for explicit ones
    int d = 0;           // foam parameter
    std::vector<std::string> objects;
    std::vector<unsigned> masks;  // foam: shading bitmask per object (bit i = labels i, i+1 merged)
    std::vector<LetterType> letters;
    std::vector<Generator> gens;
    InterchangePolicy policy = InterchangePolicy::Mu;

    bool is_foam() const { return family == "gfoam"; }

    int object_id(const std::string& name) const;
    int letter_id(const std::string& name) const;
    int gen_id(const std::string& name) const;
    int find_object(const std::string& name) const;  // -1 when absent
    int find_letter(const std::string& name) const;
    int find_gen(const std::string& name) const;

    int act(int letter, int right_obj) const {
        if (right_obj < 0) return -1;
        return letters[letter].act[right_obj];
    }
    // Object left of `word` when its right end is `right_obj`, or -1.
    int left_object(const std::vector<int>& word, int right_obj) const;

    // Foam helpers (valid when is_foam()).
    int foam_letter(int colour, int orient) const { return 2 * (colour - 1) + orient; }
    int foam_gen(const std::string& kind, int colour) const;
    int foam_cross(int colour1, int orient1, int colour2, int orient2) const;
    bool foam_dot_allowed(int colour, int obj) const;
    static std::string foam_object_name(unsigned mask, int d);

    // Adds a generator, deriving leg links from its kind; returns its id.
    int add_generator(Generator g);
    void add_letter(LetterType l);
    void add_object(const std::string& name, unsigned mask = 0);

private:
    std::map<std::string, int> object_index_;
    std::map<std::string, int> letter_index_;
    std::map<std::string, int> gen_index_;
};

struct FoamDegrees {
    GradingVector dot{1, 1};
    GradingVector rcup{0, -1};
    GradingVector rcap{0, 1};
    GradingVector lcup{1, 0};
    GradingVector lcap{-1, 0};
    GradingVector cross{0, 0};
};

// The gl2-foam signature for parameter d: objects are the legal shading
// bitmasks, letters up_i/down_i, generators dots, cups, caps and crossings.
Signature build_foam_signature(int d, const FoamDegrees& degrees = {});

}  // namespace lgr
