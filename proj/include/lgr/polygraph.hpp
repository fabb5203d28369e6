// Rulesets: oriented rules R and modulo rules E over a signature, loaded from
// JSON files where rules are schemas instantiated for every legal colour.
#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "lgr/diagram.hpp"
#include "lgr/scalar.hpp"
#include "lgr/signature.hpp"

namespace lgr {

enum class Orientation { OrientedR, ModuloE };
enum class Admissibility { Always, DistinctStrands };
// How redexes of a rule are searched for.  Literal rules are matched up to
// interchanges; the foam matchers use the combinatorial data of their rule.
enum class MatchKind { Literal, DotPair, DotStrand, Bubble, Neck, Squeeze };
enum class MoveKind { None, Zigzag, DotSlide, BraidLike, Pitchfork, Other };

std::string to_string(MoveKind k);
MoveKind move_kind_from_string(const std::string& s);

struct RuleTerm {
    RingElement coeff;
    Diagram diagram;
};

struct RewriteRule {
    std::string name;      // schema name, shared by all instances
    std::string instance;  // schema name plus bindings, e.g. "nc[i=1]"
    Orientation orientation = Orientation::OrientedR;
    Admissibility admissibility = Admissibility::Always;
    MatchKind matcher = MatchKind::Literal;
    MoveKind move_kind = MoveKind::None;
    int variant = 0;
    std::map<std::string, int> bindings;
    Diagram lhs;
    std::vector<RuleTerm> rhs;
    bool monomial = false;  // rhs is a unit times one diagram
    Unit unit;              // for monomial rules: lhs = unit * rhs diagram

    int colour() const {
        auto it = bindings.find("i");
        if (it != bindings.end()) return it->second;
        it = bindings.find("j");
        return it == bindings.end() ? 0 : it->second;
    }
};

// Colour expressions: a literal, or a variable plus an offset ("i+1").
struct ColourExpr {
    std::string var;
    int value = 0;
    int eval(const std::map<std::string, int>& b) const;
};

struct SchemaLetter {
    std::string name;
    std::optional<ColourExpr> colour;
    std::string orient;
};

struct SchemaLayer {
    std::string name;
    std::optional<ColourExpr> colour;
    std::optional<ColourExpr> colour2;
    std::string orient;
    std::string orient2;
    int pos = 0;
};

struct SchemaDiagram {
    std::string object = "auto";
    std::vector<SchemaLetter> word;
    std::vector<SchemaLayer> layers;
};

struct RuleSchema {
    std::string name;
    Orientation orientation = Orientation::OrientedR;
    Admissibility admissibility = Admissibility::Always;
    MatchKind matcher = MatchKind::Literal;
    MoveKind move_kind = MoveKind::None;
    int variant = 0;
    std::vector<std::string> vars;         // colour variables
    std::vector<std::string> orient_vars;  // orientation variables (written "$a")
    std::vector<std::string> constraints;  // "A!=B" or "|A-B|>1"
    SchemaDiagram lhs;
    std::vector<std::pair<std::string, SchemaDiagram>> rhs;
};

struct Bindings {
    std::map<std::string, int> colours;
    std::map<std::string, int> orients;  // 0 = up, 1 = down
    std::string object;                  // empty: choose the first legal object
};

struct Ruleset {
    std::string id;
    Signature sig;
    std::vector<RuleSchema> schemas;
    std::vector<RewriteRule> rules_R;
    std::vector<RewriteRule> rules_E;
    std::vector<std::string> priority;  // rule names by decreasing priority
    std::vector<std::string> warnings;

    int priority_of(const std::string& name) const;
    const RuleSchema* schema(const std::string& name) const;
};

// Degree equality used for homogeneity; under the super policy the first
// component is a parity and compares modulo 2.
bool same_degree(const Signature& sig, const GradingVector& a, const GradingVector& b);

// Instantiates a schema; throws IllegalLabel, DistantColourViolation or
// HomogeneityError.
RewriteRule instantiate_rule_schema(const Signature& sig, const RuleSchema& schema, const Bindings& bindings);

// Parses a ruleset; throws ParseError, HomogeneityError, AdaptednessError.
// A positive `d_override` replaces the foam parameter stored in the file.
Ruleset parse_ruleset(const std::string& json_text, const std::string& origin = "<memory>", int d_override = 0);
Ruleset load_ruleset(const std::string& path, int d_override = 0);
std::string serialize_ruleset(const Ruleset& rs);

// The default data directory (compiled in) for the shipped ruleset files.
std::string data_path(const std::string& file);

}  // namespace lgr
