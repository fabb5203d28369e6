// Unit tests for the scalar ring, signatures, rulesets and diagrams.
#include <string>

#include "doctest.h"
#include "lgr/diagram.hpp"
#include "lgr/errors.hpp"
#include "lgr/foam.hpp"
#include "lgr/polygraph.hpp"
#include "lgr/scalar.hpp"

using namespace lgr;

namespace {

const UnitMonomial kX{1, 0, 0};
const UnitMonomial kY{0, 1, 0};
const UnitMonomial kZ{0, 0, 1};

const RewriteRule* find_rule(const std::vector<RewriteRule>& rules, const std::string& instance) {
    for (const auto& r : rules)
        if (r.instance == instance) return &r;
    return nullptr;
}

}  // namespace

TEST_CASE("scalar: ring relations") {
    CHECK(RingElement::X() * RingElement::X() == RingElement::one());
    CHECK(RingElement::Y() * RingElement::Y() == RingElement::one());
    CHECK(RingElement::Z() * RingElement::Z(-1) == RingElement::one());
    CHECK((RingElement::X() + RingElement::Y()) + (-RingElement::X()) == RingElement::Y());
    CHECK((RingElement::X() - RingElement::X()).is_zero());
    CHECK((RingElement(2) * RingElement::Z(3)).to_string() == "2*Z^3");
}

TEST_CASE("scalar: unit inverses") {
    CHECK(unit_inverse(kX) == kX);
    CHECK(unit_inverse(UnitMonomial(0, 0, 2)) == UnitMonomial(0, 0, -2));
    CHECK(unit_inverse(UnitMonomial(1, 1, 1)) == UnitMonomial(1, 1, -1));
    Unit u(-1, UnitMonomial(1, 0, 3));
    CHECK((u * u.inverse()).is_one());
}

TEST_CASE("scalar: mu") {
    CHECK(mu({1, 1}, {1, 1}) == kX * kY);
    CHECK(mu({0, 0}, {5, -3}).is_one());
    CHECK(mu({0, 1}, {1, 0}) == kZ.inverse());
    CHECK(mu({1, 0}, {0, 1}) == kZ);
    // Independent evaluation of the formula on a grid of degrees.
    for (long a = -2; a <= 2; ++a)
        for (long b = -2; b <= 2; ++b)
            for (long c = -2; c <= 2; ++c)
                for (long e = -2; e <= 2; ++e) {
                    UnitMonomial m = mu({a, b}, {c, e});
                    CHECK(m.x == static_cast<int>(((a * c) % 2 + 2) % 2));
                    CHECK(m.y == static_cast<int>(((b * e) % 2 + 2) % 2));
                    CHECK(m.z == a * e - b * c);
                }
}

TEST_CASE("scalar: mu is not symmetric but its twist cancels") {
    CHECK(mu({1, 0}, {0, 1}) != mu({0, 1}, {1, 0}));
    for (long a = -3; a <= 3; ++a)
        for (long b = -3; b <= 3; ++b)
            for (long c = -3; c <= 3; ++c)
                for (long e = -3; e <= 3; ++e) CHECK((mu({a, b}, {c, e}) * mu({c, e}, {a, b})).is_one());
}

TEST_CASE("scalar: signed monomial strings") {
    RingElement r = RingElement::parse("+2*X*Y*Z^-3 - 1");
    CHECK(r == RingElement(UnitMonomial(1, 1, -3), 2) - RingElement(1));
    CHECK(RingElement::parse(r.to_string()) == r);
}

TEST_CASE("scalar: parse and render") {
    CHECK(RingElement::parse("X*Y*Z^2").to_string() == "X*Y*Z^2");
    CHECK(RingElement::parse("Z + X*Y*Z") == RingElement::Z() + RingElement::X() * RingElement::Y() * RingElement::Z());
    CHECK(RingElement::parse("-1") == RingElement(-1));
    Unit u;
    CHECK(RingElement::parse("-X*Z^-1").as_unit(u));
    CHECK(u.sign == -1);
    CHECK(u.mono == UnitMonomial(1, 0, -1));
    CHECK_FALSE(RingElement::parse("1 + X").as_unit(u));
    CHECK_THROWS_AS(RingElement::parse("X^^2"), ParseError);
}

TEST_CASE("polygraph: foam ruleset at d = 3") {
    Ruleset rs = build_instance(3);
    CHECK(rs.sig.is_foam());
    // Shadings never merge two adjacent label pairs.
    CHECK(rs.sig.objects.size() == 3);
    CHECK(rs.sig.letters.size() == 4);
    for (const char* name : {"dd", "dm", "bbev", "bbodd", "nc", "sq"}) CHECK(rs.schema(name) != nullptr);
    for (const char* name : {"zigzag1", "zigzag2", "zigzag3", "zigzag4", "dotslide", "r2", "r3"})
        CHECK(rs.schema(name) != nullptr);
    CHECK(rs.rules_R.size() == 14);
    CHECK(rs.rules_E.size() == 12);
    for (const auto& r : rs.rules_R) CHECK(r.orientation == Orientation::OrientedR);
    for (const auto& r : rs.rules_E) CHECK(r.orientation == Orientation::ModuloE);
    // Homogeneity of every instance.
    for (const auto& r : rs.rules_R) {
        GradingVector g = degree(rs.sig, r.lhs);
        for (const auto& t : r.rhs) CHECK(degree(rs.sig, t.diagram) == g);
    }
}

TEST_CASE("polygraph: generator degrees") {
    Signature sig = build_foam_signature(4);
    CHECK(sig.gens[sig.foam_gen("dot", 1)].degree == GradingVector{1, 1});
    CHECK(sig.gens[sig.foam_gen("rcup", 2)].degree == GradingVector{0, -1});
    CHECK(sig.gens[sig.foam_gen("rcap", 2)].degree == GradingVector{0, 1});
    CHECK(sig.gens[sig.foam_gen("lcup", 1)].degree == GradingVector{1, 0});
    CHECK(sig.gens[sig.foam_gen("lcap", 3)].degree == GradingVector{-1, 0});
    CHECK(sig.gens[sig.foam_cross(1, 0, 3, 1)].degree == GradingVector{0, 0});
}

TEST_CASE("polygraph: miniP ruleset") {
    Ruleset rs = load_ruleset(data_path("miniP.json"));
    CHECK(rs.id == "miniP");
    REQUIRE(rs.rules_R.size() == 2);
    CHECK(rs.rules_E.empty());
    CHECK(rs.sig.policy == InterchangePolicy::Super);
    const RewriteRule* l = find_rule(rs.rules_R, "snake_l");
    REQUIRE(l != nullptr);
    REQUIRE(l->monomial);
    CHECK(l->unit.sign == -1);
    CHECK(l->unit.mono.is_one());
}

TEST_CASE("polygraph: empty ruleset is valid") {
    const std::string text = R"({"id": "empty", "signature": {"objects": ["*"], "one_gens": [], "two_gens": []},
                                 "rules": []})";
    Ruleset rs = parse_ruleset(text);
    CHECK(rs.rules_R.empty());
    CHECK(rs.rules_E.empty());
}

TEST_CASE("polygraph: parse errors") {
    CHECK_THROWS_AS(parse_ruleset("{not json"), ParseError);
    CHECK_THROWS_AS(load_ruleset("/nonexistent/ruleset.json"), ParseError);
}

TEST_CASE("polygraph: inhomogeneous rule is rejected") {
    const std::string text = R"({"id": "bad", "signature": {"objects": ["*"], "one_gens": [],
        "two_gens": [{"name": "a", "src": [], "tgt": [], "degree": [1, 0]}]},
        "rules": [{"name": "r", "lhs": {"source": {"object": "*", "word": []}, "layers": [{"gen": "a", "pos": 0}]},
                   "rhs": [{"coeff": "1", "diagram": {"source": {"object": "*", "word": []}, "layers": []}}]}]})";
    CHECK_THROWS_AS(parse_ruleset(text), HomogeneityError);
}

TEST_CASE("polygraph: schema instantiation") {
    Ruleset rs = build_instance(2);
    const RuleSchema* nc = rs.schema("nc");
    REQUIRE(nc != nullptr);
    Bindings b;
    b.colours["i"] = 1;
    RewriteRule r = instantiate_rule_schema(rs.sig, *nc, b);
    CHECK(r.instance.find("nc") == 0);
    CHECK(r.rhs.size() == 2);

    Ruleset rs3 = build_instance(3);
    b.colours["i"] = 7;
    CHECK_THROWS_AS(instantiate_rule_schema(rs3.sig, *rs3.schema("nc"), b), IllegalLabel);

    const RuleSchema* pf = rs3.schema("pitchfork1");
    REQUIRE(pf != nullptr);
    Bindings adjacent;
    adjacent.colours["i"] = 1;
    adjacent.colours["j"] = 2;
    adjacent.orients["a"] = 0;
    CHECK_THROWS_AS(instantiate_rule_schema(rs3.sig, *pf, adjacent), DistantColourViolation);

    // A dot of colour 1 is not allowed where labels 1 and 2 are merged.
    Bindings shaded;
    shaded.colours["j"] = 1;
    shaded.object = "21";
    CHECK_THROWS_AS(instantiate_rule_schema(rs3.sig, *rs3.schema("dd"), shaded), IllegalLabel);
}

TEST_CASE("polygraph: serialization round trip") {
    Ruleset rs = load_ruleset(data_path("miniP.json"));
    Ruleset back = parse_ruleset(serialize_ruleset(rs));
    CHECK(back.rules_R.size() == rs.rules_R.size());
    CHECK(back.sig.gens.size() == rs.sig.gens.size());
    for (std::size_t k = 0; k < rs.rules_R.size(); ++k) CHECK(back.rules_R[k].lhs == rs.rules_R[k].lhs);
}

TEST_CASE("diagram: composition") {
    Ruleset rs = build_instance(3);
    const Signature& sig = rs.sig;
    Diagram d = parse_diagram_text(sig, "21 up_1 | rcup_1@1 ; rcap_1@0");
    Diagram id_src = identity_diagram(d.obj, d.source);
    Diagram id_tgt = identity_diagram(d.obj, target_word(sig, d));
    CHECK(compose(sig, d, id_src, ComposeOp::Vertical) == d);
    CHECK(compose(sig, id_tgt, d, ComposeOp::Vertical) == d);

    Diagram cup = parse_diagram_text(sig, "21 up_1 | rcup_1@1");
    Diagram cap = parse_diagram_text(sig, "21 up_1 down_1 up_1 | rcap_1@0");
    Diagram snake = compose(sig, cap, cup, ComposeOp::Vertical);
    CHECK(snake == d);
    CHECK(target_word(sig, snake) == d.source);

    Diagram dot = parse_diagram_text(sig, "111 | dot_1@0");
    CHECK_THROWS_AS(compose(sig, dot, d, ComposeOp::Vertical), BoundaryMismatch);
}

TEST_CASE("diagram: whiskering and contexts") {
    Ruleset rs = build_instance(3);
    const Signature& sig = rs.sig;
    Diagram dot = parse_diagram_text(sig, "111 | dot_1@0");
    Context empty;
    empty.right_obj = dot.obj;
    CHECK(contextualize(sig, empty, dot) == dot);

    int up1 = sig.find_letter("up_1");
    Diagram w = whisker(sig, {}, dot, {up1}, sig.object_id("21"));
    CHECK(w.source == std::vector<int>{up1});
    CHECK(w.layers.size() == 1);
    CHECK(w.layers[0].pos == 0);
    CHECK(is_legal(sig, w));
}

TEST_CASE("diagram: degrees") {
    Ruleset rs = build_instance(3);
    const Signature& sig = rs.sig;
    CHECK(degree(sig, parse_diagram_text(sig, "21 up_1 |")) == GradingVector{0, 0});
    CHECK(degree(sig, parse_diagram_text(sig, "111 | dot_1@0 ; dot_1@0")) == GradingVector{2, 2});
    CHECK(degree(sig, parse_diagram_text(sig, "111 | lcup_1@0 ; rcap_1@0")) == GradingVector{1, 1});
    CHECK(degree(sig, parse_diagram_text(sig, "21 | rcup_1@0 ; lcap_1@0")) == GradingVector{-1, -1});
    Ruleset rs4 = build_instance(4);
    const Signature& s4 = rs4.sig;
    int x = s4.foam_cross(1, 0, 3, 0);
    Diagram cr = identity_diagram(0, s4.gens[x].src);
    cr.obj = -1;
    for (int o = 0; o < static_cast<int>(s4.objects.size()); ++o)
        if (s4.left_object(cr.source, o) >= 0) {
            cr.obj = o;
            break;
        }
    REQUIRE(cr.obj >= 0);
    cr.layers.push_back({x, 0, fresh_uid()});
    CHECK(is_legal(s4, cr));
    CHECK(degree(s4, cr) == GradingVector{0, 0});
}

TEST_CASE("diagram: strand graphs") {
    Ruleset rs = build_instance(3);
    const Signature& sig = rs.sig;
    StrandGraph cw = strand_graph(sig, parse_diagram_text(sig, "111 | lcup_1@0 ; rcap_1@0"));
    REQUIRE(cw.strands.size() == 1);
    CHECK(cw.strands[0].closed);
    CHECK(cw.closed[1] == 1);
    CHECK(cw.shadings[1] == 1);

    StrandGraph neck = strand_graph(sig, parse_diagram_text(sig, "21 down_1 up_1 |"));
    CHECK(neck.strands.size() == 2);
    for (const auto& s : neck.strands) CHECK_FALSE(s.closed);
    CHECK(neck.closed[1] == 0);

    StrandGraph dots = strand_graph(sig, parse_diagram_text(sig, "111 | dot_1@0 ; dot_2@0"));
    CHECK(dots.dots.size() == 2);
    CHECK(dots.dot_count[1] == 1);
    CHECK(dots.dot_count[2] == 1);
}

TEST_CASE("diagram: legality") {
    Ruleset rs = build_instance(3);
    const Signature& sig = rs.sig;
    CHECK(is_legal(sig, parse_diagram_text(sig, "111 |")));
    CHECK(is_legal(sig, parse_diagram_text(sig, "111 | dot_1@0")));
    Diagram bad = parse_diagram_text(sig, "111 |");
    bad.obj = sig.object_id("21");
    bad.layers.push_back({sig.foam_gen("dot", 1), 0, fresh_uid()});
    CHECK_FALSE(is_legal(sig, bad));
    CHECK_THROWS(parse_diagram_text(sig, "111 | nosuch@0"));
    CHECK_THROWS_AS(parse_diagram_text(sig, "111 | rcap_1@0"), ParseError);
}

TEST_CASE("diagram: text round trip") {
    Ruleset rs = build_instance(3);
    const Signature& sig = rs.sig;
    for (const char* t : {"111 | lcup_1@0 ; rcap_1@0", "21 up_1 | rcup_1@1 ; rcap_1@0", "111 |"}) {
        Diagram d = parse_diagram_text(sig, t);
        CHECK(parse_diagram_text(sig, diagram_to_text(sig, d)) == d);
    }
    CHECK(diagram_brief(sig, parse_diagram_text(sig, "111 | dot_1@0")) == "[dot_1]");
}
