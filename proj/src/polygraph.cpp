// Ruleset loading, schema instantiation and validation.
#include "lgr/polygraph.hpp"

#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>

#include "json.hpp"
#include "lgr/errors.hpp"
#include "lgr/modulo.hpp"

#ifndef LGR_DATA_DIR
#define LGR_DATA_DIR "data"
#endif

namespace lgr {

using nlohmann::json;

std::string data_path(const std::string& file) { return std::string(LGR_DATA_DIR) + "/" + file; }

std::string to_string(MoveKind k) {
    switch (k) {
        case MoveKind::None: return "None";
        case MoveKind::Zigzag: return "Zigzag";
        case MoveKind::DotSlide: return "DotSlide";
        case MoveKind::BraidLike: return "BraidLike";
        case MoveKind::Pitchfork: return "Pitchfork";
        case MoveKind::Other: return "Other";
    }
    return "None";
}

MoveKind move_kind_from_string(const std::string& s) {
    if (s == "Zigzag") return MoveKind::Zigzag;
    if (s == "DotSlide") return MoveKind::DotSlide;
    if (s == "BraidLike") return MoveKind::BraidLike;
    if (s == "Pitchfork") return MoveKind::Pitchfork;
    if (s == "None" || s.empty()) return MoveKind::None;
    return MoveKind::Other;
}

int Ruleset::priority_of(const std::string& name) const {
    auto it = std::find(priority.begin(), priority.end(), name);
    return it == priority.end() ? static_cast<int>(priority.size()) : static_cast<int>(it - priority.begin());
}

const RuleSchema* Ruleset::schema(const std::string& name) const {
    for (const auto& s : schemas)
        if (s.name == name) return &s;
    return nullptr;
}

int ColourExpr::eval(const std::map<std::string, int>& b) const {
    if (var.empty()) return value;
    auto it = b.find(var);
    if (it == b.end()) throw IllegalLabel("unbound colour variable '" + var + "'");
    return it->second + value;
}

namespace {

std::string trim(const std::string& s) {
    size_t a = s.find_first_not_of(" \t");
    if (a == std::string::npos) return "";
    size_t b = s.find_last_not_of(" \t");
    return s.substr(a, b - a + 1);
}

ColourExpr parse_colour(const json& j) {
    ColourExpr e;
    if (j.is_number_integer()) {
        e.value = j.get<int>();
        return e;
    }
    if (!j.is_string()) throw ParseError("colour must be an integer or an expression string");
    std::string s = trim(j.get<std::string>());
    size_t op = s.find_first_of("+-", 1);
    std::string head = trim(s.substr(0, op));
    if (!head.empty() && (std::isdigit(static_cast<unsigned char>(head[0])) || head[0] == '-')) {
        e.value = std::stoi(s);
        return e;
    }
    e.var = head;
    if (op != std::string::npos) {
        int off = std::stoi(trim(s.substr(op + 1)));
        e.value = s[op] == '-' ? -off : off;
    }
    return e;
}

json colour_to_json(const ColourExpr& e) {
    if (e.var.empty()) return e.value;
    if (e.value == 0) return e.var;
    return e.var + (e.value > 0 ? "+" : "-") + std::to_string(std::abs(e.value));
}

SchemaLetter parse_letter(const json& j) {
    SchemaLetter l;
    if (j.is_string()) {
        l.name = j.get<std::string>();
        return l;
    }
    l.name = j.value("gen", std::string("strand"));
    if (j.contains("colour")) l.colour = parse_colour(j["colour"]);
    l.orient = j.value("orient", std::string());
    return l;
}

json letter_to_json(const SchemaLetter& l) {
    json j;
    j["gen"] = l.name;
    if (l.colour) j["colour"] = colour_to_json(*l.colour);
    if (!l.orient.empty()) j["orient"] = l.orient;
    return j;
}

std::vector<SchemaLetter> parse_word(const json& j) {
    std::vector<SchemaLetter> out;
    const json& w = j.is_object() ? j.at("word") : j;
    for (const auto& e : w) out.push_back(parse_letter(e));
    return out;
}

SchemaLayer parse_layer(const json& j) {
    SchemaLayer l;
    const json& g = j.at("gen");
    if (g.is_string()) {
        l.name = g.get<std::string>();
    } else {
        l.name = g.at("name").get<std::string>();
        if (g.contains("colour")) l.colour = parse_colour(g["colour"]);
        if (g.contains("colour2")) l.colour2 = parse_colour(g["colour2"]);
        l.orient = g.value("orient", std::string());
        l.orient2 = g.value("orient2", std::string());
    }
    if (j.contains("pos")) {
        l.pos = j["pos"].get<int>();
    } else if (j.contains("left")) {
        l.pos = static_cast<int>(parse_word(j["left"]).size());
    }
    return l;
}

json layer_to_json(const SchemaLayer& l) {
    json g;
    g["name"] = l.name;
    if (l.colour) g["colour"] = colour_to_json(*l.colour);
    if (l.colour2) g["colour2"] = colour_to_json(*l.colour2);
    if (!l.orient.empty()) g["orient"] = l.orient;
    if (!l.orient2.empty()) g["orient2"] = l.orient2;
    return json{{"gen", g}, {"pos", l.pos}};
}

SchemaDiagram parse_schema_diagram(const json& j) {
    SchemaDiagram d;
    if (j.contains("source")) {
        const json& s = j["source"];
        d.object = s.value("object", std::string("auto"));
        d.word = parse_word(s.contains("word") ? s["word"] : json::array());
    }
    if (j.contains("layers"))
        for (const auto& l : j["layers"]) d.layers.push_back(parse_layer(l));
    return d;
}

json schema_diagram_to_json(const SchemaDiagram& d) {
    json word = json::array();
    for (const auto& l : d.word) word.push_back(letter_to_json(l));
    json layers = json::array();
    for (const auto& l : d.layers) layers.push_back(layer_to_json(l));
    return json{{"source", {{"object", d.object}, {"word", word}}}, {"layers", layers}};
}

int resolve_orient(const std::string& o, const Bindings& b) {
    if (o.empty() || o == "up") return 0;
    if (o == "down") return 1;
    if (o[0] == '$') {
        auto it = b.orients.find(o.substr(1));
        if (it == b.orients.end()) throw IllegalLabel("unbound orientation variable '" + o + "'");
        return it->second;
    }
    throw ParseError("bad orientation '" + o + "'");
}

int resolve_letter(const Signature& sig, const SchemaLetter& l, const Bindings& b) {
    if (!l.colour) return sig.letter_id(l.name);
    int c = l.colour->eval(b.colours);
    if (!sig.is_foam()) throw ParseError("coloured letters need a foam signature");
    if (c < 1 || c > sig.d - 1) throw IllegalLabel("letter colour " + std::to_string(c) + " out of range");
    return sig.foam_letter(c, resolve_orient(l.orient, b));
}

int resolve_generator(const Signature& sig, const SchemaLayer& l, const Bindings& b) {
    if (!l.colour) return sig.gen_id(l.name);
    int c = l.colour->eval(b.colours);
    if (!sig.is_foam()) throw ParseError("coloured generators need a foam signature");
    if (l.name == "dot") {
        if (c < 1 || c > sig.d) throw IllegalLabel("dot colour " + std::to_string(c) + " out of range");
        return sig.foam_gen("dot", c);
    }
    if (c < 1 || c > sig.d - 1) throw IllegalLabel("colour " + std::to_string(c) + " out of range");
    if (l.name == "X" || l.name == "cross") {
        if (!l.colour2) throw ParseError("crossing needs colour2");
        int c2 = l.colour2->eval(b.colours);
        if (c2 < 1 || c2 > sig.d - 1) throw IllegalLabel("colour " + std::to_string(c2) + " out of range");
        if (std::abs(c - c2) <= 1)
            throw DistantColourViolation("crossing of colours " + std::to_string(c) + " and " + std::to_string(c2));
        return sig.foam_cross(c, resolve_orient(l.orient, b), c2, resolve_orient(l.orient2, b));
    }
    int id = sig.foam_gen(l.name, c);
    if (id < 0) throw ParseError("unknown foam generator '" + l.name + "'");
    return id;
}

Diagram build_diagram(const Signature& sig, const SchemaDiagram& sd, const Bindings& b, int obj) {
    Diagram d;
    d.obj = obj;
    for (const auto& l : sd.word) d.source.push_back(resolve_letter(sig, l, b));
    for (const auto& l : sd.layers) d.layers.push_back({resolve_generator(sig, l, b), l.pos, fresh_uid()});
    return d;
}

// Evaluates constraints; throws on violation.
void check_constraints(const RuleSchema& s, const Bindings& b) {
    for (const auto& c : s.constraints) {
        std::string t = c;
        t.erase(std::remove(t.begin(), t.end(), ' '), t.end());
        if (t.size() > 4 && t[0] == '|') {
            size_t bar = t.find('|', 1);
            std::string inner = t.substr(1, bar - 1);
            size_t minus = inner.find('-', 1);
            int x = parse_colour(json(inner.substr(0, minus))).eval(b.colours);
            int y = parse_colour(json(inner.substr(minus + 1))).eval(b.colours);
            int bound = std::stoi(t.substr(t.find('>') + 1));
            if (std::abs(x - y) <= bound)
                throw DistantColourViolation("constraint " + c + " fails for colours " + std::to_string(x) + ", " +
                                             std::to_string(y));
            continue;
        }
        size_t ne = t.find("!=");
        if (ne != std::string::npos) {
            int x = parse_colour(json(t.substr(0, ne))).eval(b.colours);
            int y = parse_colour(json(t.substr(ne + 2))).eval(b.colours);
            if (x == y) throw IllegalLabel("constraint " + c + " fails");
            continue;
        }
        throw ParseError("unsupported constraint '" + c + "'");
    }
}

std::string instance_name(const RuleSchema& s, const Bindings& b) {
    std::string out = s.name;
    if (b.colours.empty() && b.orients.empty()) return out;
    out += "[";
    bool first = true;
    for (const auto& [k, v] : b.colours) {
        out += (first ? "" : ",") + k + "=" + std::to_string(v);
        first = false;
    }
    for (const auto& [k, v] : b.orients) {
        out += (first ? "" : ",") + k + "=" + (v == 0 ? "up" : "down");
        first = false;
    }
    return out + "]";
}

}  // namespace

bool same_degree(const Signature& sig, const GradingVector& a, const GradingVector& b) {
    if (sig.policy == InterchangePolicy::Super) return ((a.p - b.p) % 2 == 0) && a.q == b.q;
    return a == b;
}

RewriteRule instantiate_rule_schema(const Signature& sig, const RuleSchema& s, const Bindings& b) {
    check_constraints(s, b);
    RewriteRule r;
    r.name = s.name;
    r.instance = instance_name(s, b);
    r.orientation = s.orientation;
    r.admissibility = s.admissibility;
    r.matcher = s.matcher;
    r.move_kind = s.move_kind;
    r.variant = s.variant;
    r.bindings = b.colours;

    std::vector<int> candidates;
    std::string want = !b.object.empty() ? b.object : s.lhs.object;
    if (want != "auto" && !want.empty()) {
        candidates.push_back(sig.object_id(want));
    } else {
        for (int o = 0; o < static_cast<int>(sig.objects.size()); ++o) candidates.push_back(o);
    }
    // Resolve generators first so that colour errors surface before object search.
    (void)build_diagram(sig, s.lhs, b, candidates.front());
    for (const auto& [coeff, sd] : s.rhs) (void)build_diagram(sig, sd, b, candidates.front());

    for (int obj : candidates) {
        Diagram lhs = build_diagram(sig, s.lhs, b, obj);
        if (!is_legal(sig, lhs)) continue;
        std::vector<RuleTerm> rhs;
        bool ok = true;
        for (const auto& [coeff, sd] : s.rhs) {
            Diagram t = build_diagram(sig, sd, b, obj);
            if (!is_legal(sig, t)) {
                ok = false;
                break;
            }
            rhs.push_back({RingElement::parse(coeff), t});
        }
        if (!ok) continue;
        r.lhs = lhs;
        r.rhs = std::move(rhs);
        break;
    }
    if (r.lhs.source.empty() && r.lhs.layers.empty() && s.lhs.word.size() + s.lhs.layers.size() > 0)
        throw IllegalLabel("no legal object for rule " + r.instance);
    if (!is_legal(sig, r.lhs)) throw IllegalLabel("no legal object for rule " + r.instance);

    const auto lhs_tgt = target_word(sig, r.lhs);
    const GradingVector dl = degree(sig, r.lhs);
    for (const auto& t : r.rhs) {
        if (t.diagram.source != r.lhs.source || target_word(sig, t.diagram) != lhs_tgt)
            throw BoundaryMismatch("rule " + r.instance + ": right-hand side has a different boundary");
        if (!same_degree(sig, degree(sig, t.diagram), dl))
            throw HomogeneityError("rule " + r.instance + ": degree " + dl.to_string() + " of the left-hand side " +
                                   "differs from " + degree(sig, t.diagram).to_string());
    }
    Unit u;
    r.monomial = r.rhs.size() == 1 && r.rhs[0].coeff.as_unit(u);
    if (r.monomial) r.unit = u;
    if (r.orientation == Orientation::ModuloE && !r.monomial)
        throw ParseError("modulo rule " + r.instance + " is not monomial-invertible");
    return r;
}

namespace {

Signature parse_signature(const json& j, int d_override) {
    if (j.contains("family")) {
        std::string fam = j["family"].get<std::string>();
        if (fam != "gfoam") throw ParseError("unknown signature family '" + fam + "'");
        int d = d_override > 0 ? d_override : j.value("d", 3);
        FoamDegrees deg;
        if (j.contains("degrees")) {
            const json& dj = j["degrees"];
            auto rd = [&](const char* key, GradingVector& g) {
                if (dj.contains(key)) g = {dj[key].at(0).get<long>(), dj[key].at(1).get<long>()};
            };
            rd("dot", deg.dot);
            rd("rcup", deg.rcup);
            rd("rcap", deg.rcap);
            rd("lcup", deg.lcup);
            rd("lcap", deg.lcap);
            rd("cross", deg.cross);
        }
        return build_foam_signature(d, deg);
    }
    Signature sig;
    for (const auto& o : j.at("objects")) sig.add_object(o.get<std::string>());
    for (const auto& g : j.at("one_gens")) {
        LetterType l;
        l.name = g.at("name").get<std::string>();
        l.colour = g.value("colour", 0);
        sig.add_letter(l);
        int id = sig.letter_id(l.name);
        sig.letters[id].act[sig.object_id(g.at("src").get<std::string>())] = sig.object_id(g.at("tgt").get<std::string>());
    }
    for (const auto& gj : j.at("two_gens")) {
        Generator g;
        g.name = gj.at("name").get<std::string>();
        g.kind = gj.value("kind", std::string("gen"));
        for (const auto& l : gj.at("src")) g.src.push_back(sig.letter_id(l.get<std::string>()));
        for (const auto& l : gj.at("tgt")) g.tgt.push_back(sig.letter_id(l.get<std::string>()));
        if (!gj.contains("degree")) throw ParseError("2-generator " + g.name + " has no degree");
        g.degree = {gj["degree"].at(0).get<long>(), gj["degree"].at(1).get<long>()};
        g.glyph = gj.value("glyph", g.name);
        sig.add_generator(g);
    }
    std::string pol = j.value("interchange", std::string("mu"));
    if (pol == "super") sig.policy = InterchangePolicy::Super;
    else if (pol != "mu") throw ParseError("unknown interchange policy '" + pol + "'");
    return sig;
}

json signature_to_json(const Signature& sig) {
    if (sig.is_foam()) {
        json deg;
        auto put = [&](const char* key, const std::string& gen) {
            int id = sig.find_gen(gen);
            if (id >= 0) deg[key] = {sig.gens[id].degree.p, sig.gens[id].degree.q};
        };
        put("dot", "dot_1");
        put("rcup", "rcup_1");
        put("rcap", "rcap_1");
        put("lcup", "lcup_1");
        put("lcap", "lcap_1");
        for (const auto& g : sig.gens)
            if (g.kind == "cross") {
                deg["cross"] = {g.degree.p, g.degree.q};
                break;
            }
        return json{{"family", "gfoam"}, {"d", sig.d}, {"degrees", deg}};
    }
    json j;
    j["objects"] = sig.objects;
    json ones = json::array();
    for (const auto& l : sig.letters)
        for (size_t o = 0; o < l.act.size(); ++o)
            if (l.act[o] >= 0) ones.push_back({{"name", l.name}, {"src", sig.objects[o]}, {"tgt", sig.objects[l.act[o]]}});
    j["one_gens"] = ones;
    json twos = json::array();
    for (const auto& g : sig.gens) {
        json src = json::array(), tgt = json::array();
        for (int l : g.src) src.push_back(sig.letters[l].name);
        for (int l : g.tgt) tgt.push_back(sig.letters[l].name);
        twos.push_back({{"name", g.name}, {"kind", g.kind}, {"src", src}, {"tgt", tgt},
                        {"degree", {g.degree.p, g.degree.q}}});
    }
    j["two_gens"] = twos;
    j["interchange"] = sig.policy == InterchangePolicy::Super ? "super" : "mu";
    return j;
}

MatchKind matcher_from_string(const std::string& s) {
    if (s == "dot_pair") return MatchKind::DotPair;
    if (s == "dot_strand") return MatchKind::DotStrand;
    if (s == "bubble") return MatchKind::Bubble;
    if (s == "neck") return MatchKind::Neck;
    if (s == "squeeze") return MatchKind::Squeeze;
    if (s == "literal" || s.empty()) return MatchKind::Literal;
    throw ParseError("unknown matcher '" + s + "'");
}

std::string matcher_to_string(MatchKind k) {
    switch (k) {
        case MatchKind::DotPair: return "dot_pair";
        case MatchKind::DotStrand: return "dot_strand";
        case MatchKind::Bubble: return "bubble";
        case MatchKind::Neck: return "neck";
        case MatchKind::Squeeze: return "squeeze";
        case MatchKind::Literal: return "literal";
    }
    return "literal";
}

RuleSchema parse_schema(const json& j) {
    RuleSchema s;
    s.name = j.at("name").get<std::string>();
    std::string o = j.value("orientation", std::string("R"));
    if (o == "R") s.orientation = Orientation::OrientedR;
    else if (o == "E") s.orientation = Orientation::ModuloE;
    else throw ParseError("rule " + s.name + ": orientation must be R or E");
    std::string a = j.value("admissibility", std::string("Always"));
    if (a == "Always") s.admissibility = Admissibility::Always;
    else if (a == "DistinctStrands") s.admissibility = Admissibility::DistinctStrands;
    else throw ParseError("rule " + s.name + ": unknown admissibility '" + a + "'");
    s.matcher = matcher_from_string(j.value("matcher", std::string("literal")));
    s.move_kind = move_kind_from_string(j.value("move", std::string(s.orientation == Orientation::ModuloE ? "Other" : "None")));
    s.variant = j.value("variant", 0);
    if (j.contains("vars")) s.vars = j["vars"].get<std::vector<std::string>>();
    if (j.contains("orient_vars")) s.orient_vars = j["orient_vars"].get<std::vector<std::string>>();
    if (j.contains("constraints")) s.constraints = j["constraints"].get<std::vector<std::string>>();
    s.lhs = parse_schema_diagram(j.at("lhs"));
    for (const auto& t : j.at("rhs")) {
        std::string coeff = t.contains("coeff") ? (t["coeff"].is_string() ? t["coeff"].get<std::string>()
                                                                            : std::to_string(t["coeff"].get<long>()))
                                                : "1";
        s.rhs.emplace_back(coeff, parse_schema_diagram(t.at("diagram")));
    }
    return s;
}

json schema_to_json(const RuleSchema& s) {
    json j;
    j["name"] = s.name;
    j["orientation"] = s.orientation == Orientation::OrientedR ? "R" : "E";
    j["admissibility"] = s.admissibility == Admissibility::Always ? "Always" : "DistinctStrands";
    j["matcher"] = matcher_to_string(s.matcher);
    if (s.move_kind != MoveKind::None) j["move"] = to_string(s.move_kind);
    if (s.variant) j["variant"] = s.variant;
    if (!s.vars.empty()) j["vars"] = s.vars;
    if (!s.orient_vars.empty()) j["orient_vars"] = s.orient_vars;
    if (!s.constraints.empty()) j["constraints"] = s.constraints;
    j["lhs"] = schema_diagram_to_json(s.lhs);
    json rhs = json::array();
    for (const auto& [c, d] : s.rhs) rhs.push_back({{"coeff", c}, {"diagram", schema_diagram_to_json(d)}});
    j["rhs"] = rhs;
    return j;
}

// All bindings of the schema's variables over the colour range.
void for_each_binding(const Signature& sig, const RuleSchema& s, const std::function<void(const Bindings&)>& f) {
    Bindings b;
    const int max_colour = sig.is_foam() ? sig.d : 0;
    std::function<void(size_t)> rec_orient;
    std::function<void(size_t)> rec_colour = [&](size_t k) {
        if (k == s.vars.size()) {
            rec_orient(0);
            return;
        }
        for (int c = 1; c <= max_colour; ++c) {
            b.colours[s.vars[k]] = c;
            rec_colour(k + 1);
        }
    };
    rec_orient = [&](size_t k) {
        if (k == s.orient_vars.size()) {
            f(b);
            return;
        }
        for (int o = 0; o < 2; ++o) {
            b.orients[s.orient_vars[k]] = o;
            rec_orient(k + 1);
        }
    };
    if (s.vars.empty() || max_colour > 0) rec_colour(0);
}

}  // namespace

Ruleset parse_ruleset(const std::string& text, const std::string& origin, int d_override) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::exception& e) {
        throw ParseError(origin + ": " + e.what());
    }
    Ruleset rs;
    try {
        rs.id = j.value("id", std::string());
        rs.sig = parse_signature(j.at("signature"), d_override);
        if (j.contains("priority")) rs.priority = j["priority"].get<std::vector<std::string>>();
        for (const auto& rj : j.at("rules")) rs.schemas.push_back(parse_schema(rj));
    } catch (const json::exception& e) {
        throw ParseError(origin + ": " + e.what());
    }
    for (const auto& s : rs.schemas) {
        for_each_binding(rs.sig, s, [&](const Bindings& b) {
            RewriteRule r;
            try {
                r = instantiate_rule_schema(rs.sig, s, b);
            } catch (const IllegalLabel&) {
                return;
            } catch (const DistantColourViolation&) {
                return;
            }
            if (r.orientation == Orientation::OrientedR) rs.rules_R.push_back(std::move(r));
            else rs.rules_E.push_back(std::move(r));
        });
    }
    check_adaptedness(rs);
    return rs;
}

Ruleset load_ruleset(const std::string& path, int d_override) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open ruleset file '" + path + "'");
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_ruleset(ss.str(), path, d_override);
}

std::string serialize_ruleset(const Ruleset& rs) {
    json j;
    if (!rs.id.empty()) j["id"] = rs.id;
    j["signature"] = signature_to_json(rs.sig);
    if (!rs.priority.empty()) j["priority"] = rs.priority;
    json rules = json::array();
    for (const auto& s : rs.schemas) rules.push_back(schema_to_json(s));
    j["rules"] = rules;
    return j.dump(2);
}

}  // namespace lgr
