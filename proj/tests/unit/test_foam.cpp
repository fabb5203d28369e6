// Unit tests for the foam instance: variants, reduced foams, bases, bubbles.
#include "doctest.h"
#include "lgr/branching.hpp"
#include "lgr/errors.hpp"
#include "lgr/foam.hpp"

using namespace lgr;

TEST_CASE("foam: zigzag scalars per variant") {
    struct Case {
        FoamVariant v;
        const char* snake;
        const char* scalar;
    };
    // Straightening one zigzag of each shape; values computed by hand from
    // the two variants' E-rules.
    for (const Case& c : {Case{FoamVariant::GFoam, "2 up_1 | rcup_1@1 ; rcap_1@0", "Z^2"},
                          Case{FoamVariant::GFoamPrime, "2 up_1 | rcup_1@1 ; rcap_1@0", "X*Y*Z^2"}}) {
        Ruleset rs = build_instance(2, c.v);
        Diagram d = parse_diagram_text(rs.sig, c.snake);
        auto r = congruent_modulo(rs, d, identity_diagram(d.obj, d.source));
        REQUIRE(r.verdict == Verdict::Yes);
        CHECK(r.scalar.to_string() == c.scalar);
    }
}

TEST_CASE("foam: small parameters") {
    Ruleset r1 = build_instance(1);
    CHECK(r1.sig.letters.empty());
    CHECK(hom_basis(r1, {}, {}, 0).size() == 2);
    CHECK_THROWS_AS(build_instance(0), ParseError);
    CHECK(foam_variant_from_string("gfoam") == FoamVariant::GFoam);
    CHECK(foam_variant_from_string("gfoam-prime") == FoamVariant::GFoamPrime);
    CHECK_THROWS(foam_variant_from_string("other"));
}

TEST_CASE("foam: reduced foams") {
    Ruleset rs = build_instance(3);
    const Signature& sig = rs.sig;
    CHECK(is_reduced(rs, parse_diagram_text(sig, "21 up_1 |")));
    CHECK(is_reduced(rs, parse_diagram_text(sig, "111 | dot_2@0")));
    CHECK_FALSE(is_reduced(rs, parse_diagram_text(sig, "111 | lcup_1@0 ; rcap_1@0")));
    CHECK_FALSE(is_reduced(rs, parse_diagram_text(sig, "111 | dot_1@0 ; dot_1@0")));
    CHECK(geometrically_reduced(sig, parse_diagram_text(sig, "21 up_1 |")));
    CHECK_FALSE(geometrically_reduced(sig, parse_diagram_text(sig, "111 | lcup_1@0 ; rcap_1@0")));
}

TEST_CASE("foam: boundary circles") {
    Ruleset rs = build_instance(3);
    const Signature& sig = rs.sig;
    CHECK(boundary_circles(sig, {}, {}, 0).count == 3);
    auto w = parse_word(sig, "up_1 down_1");
    CHECK(boundary_circles(sig, w, w, 0).count == 3);
    CHECK(boundary_circles(sig, w, {}, 0).count == 2);
    CHECK_THROWS_AS(boundary_circles(sig, parse_word(sig, "up_1"), {}, 0), NotParallel);
}

TEST_CASE("foam: hom bases") {
    Ruleset rs2 = build_instance(2);
    CHECK(hom_basis(rs2, {}, {}, 0).size() == 4);
    auto up = parse_word(rs2.sig, "up_1");
    int obj = rs2.sig.object_id("2");
    auto b = hom_basis(rs2, up, up, obj);
    CHECK(b.size() == 2);
    for (const auto& e : b) {
        CHECK(is_reduced(rs2, e.diagram));
        CHECK(e.diagram.source == up);
        CHECK(target_word(rs2.sig, e.diagram) == up);
        CHECK(degree(rs2.sig, e.diagram).p == static_cast<long>(e.delta.size()));
    }
    Ruleset rs3 = build_instance(3);
    auto all = hom_basis(rs3, {}, {}, 0);
    CHECK(all.size() == 8);
    CHECK_THROWS_AS(hom_basis(rs3, parse_word(rs3.sig, "up_1"), {}, 0), NotParallel);
}

TEST_CASE("foam: bubble evaluation") {
    Ruleset rs = build_instance(3);
    const Signature& sig = rs.sig;
    CHECK_THROWS_AS(bubble_evaluate(rs, parse_diagram_text(sig, "111 | dot_1@0")), NoBubble);
    auto ccw = bubble_evaluate(rs, parse_diagram_text(sig, "21 | rcup_1@0 ; dot_2@1 ; lcap_1@0"));
    REQUIRE(ccw.result.terms.size() == 1);
    CHECK(ccw.result.terms[0].coeff == RingElement(1));

    // Nested circles evaluate to the same vector in every rewriting order.
    Diagram nested = legal_diagram(sig, "", "lcup_1@0 ; rcup_1@1 ; dot_2@2 ; lcap_1@1 ; rcap_1@0");
    auto ev = bubble_evaluate(rs, nested);
    for (Strategy st : {Strategy::Position, Strategy::Reverse}) {
        NormalizeOptions opt;
        opt.strategy = st;
        CHECK(vectors_congruent(rs, ev.result, normalize(rs, nested, opt).result) == Verdict::Yes);
    }
}

TEST_CASE("foam: variants share supports") {
    Ruleset a = build_instance(3, FoamVariant::GFoam);
    Ruleset b = build_instance(3, FoamVariant::GFoamPrime);
    for (const char* t : {"111 | lcup_1@0 ; rcap_1@0", "21 up_1 | rcup_1@1 ; rcap_1@0 ; dot_1@0",
                          "111 | lcup_2@0 ; dot_1@1 ; rcap_2@0 ; lcup_1@0 ; rcap_1@0"}) {
        Diagram da = parse_diagram_text(a.sig, t);
        REQUIRE(is_legal(a.sig, da));
        Vector va = normalize(a, da).result;
        Vector vb = normalize(b, parse_diagram_text(b.sig, t)).result;
        REQUIRE(va.terms.size() == vb.terms.size());
        for (const auto& ta : va.terms) {
            bool found = false;
            for (const auto& tb : vb.terms)
                if (congruent_modulo(a, ta.diagram, tb.diagram).verdict == Verdict::Yes) found = true;
            CHECK(found);
        }
    }
}

TEST_CASE("foam: enumeration agrees with the basis") {
    Ruleset rs = build_instance(2);
    CHECK(hom_dimension_by_enumeration(rs, {}, {}, 0, 4) == 4);
}
