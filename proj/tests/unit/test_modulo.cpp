// Unit tests for E-moves, canonical forms, congruence search and loops.
#include "doctest.h"
#include "lgr/errors.hpp"
#include "lgr/foam.hpp"
#include "lgr/modulo.hpp"

using namespace lgr;

TEST_CASE("modulo: interchange scalar of two dots") {
    Ruleset rs = build_instance(3);
    const Signature& sig = rs.sig;
    int dot1 = sig.foam_gen("dot", 1);
    // Independent value: mu((1,1),(1,1)) = X^1 Y^1 Z^0.
    CHECK(interchange_scalar(sig, dot1, dot1) == Unit(UnitMonomial(1, 1, 0)));
    Diagram d = parse_diagram_text(sig, "111 | dot_1@0 ; dot_1@0");
    CHECK(interchange_options(sig, d, 0) != 0);
    Diagram e = d;
    EMove m;
    REQUIRE(apply_interchange(sig, e, 0, interchange_options(sig, d, 0) & 1 ? 0 : 1, &m));
    CHECK(m.scalar == Unit(UnitMonomial(1, 1, 0)));
}

TEST_CASE("modulo: interchange-canonical form") {
    Ruleset rs = build_instance(3);
    const Signature& sig = rs.sig;
    Diagram sorted = parse_diagram_text(sig, "21 up_1 | dot_1@0 ; dot_3@1");
    Diagram swapped = parse_diagram_text(sig, "21 up_1 | dot_3@1 ; dot_1@0");
    auto [c1, u1] = interchange_canonical(sig, sorted);
    auto [c2, u2] = interchange_canonical(sig, swapped);
    CHECK(c1 == c2);
    // Both forms represent the same element: sorted = u1 c, swapped = u2 c.
    // Their ratio is the single interchange scalar XY.
    CHECK(u1.inverse() * u2 == Unit(UnitMonomial(1, 1, 0)));
}

TEST_CASE("modulo: e_neighbors") {
    Ruleset rs = build_instance(3);
    const Signature& sig = rs.sig;
    CHECK(e_neighbors(rs, parse_diagram_text(sig, "21 up_1 |")).empty());

    Diagram zz = parse_diagram_text(sig, "21 up_1 | lcup_1@0 ; lcap_1@1");
    bool found_zigzag = false;
    for (const auto& n : e_neighbors(rs, zz)) {
        if (n.move.kind == "Interchange") continue;
        if (n.diagram.is_identity()) {
            found_zigzag = true;
            CHECK(n.move.scalar == Unit(UnitMonomial(1, 0, 0)));
        }
    }
    CHECK(found_zigzag);

    Diagram slide = parse_diagram_text(sig, "12 up_2 | dot_1@0");
    bool found_slide = false;
    for (const auto& n : e_neighbors(rs, slide))
        if (n.move.kind != "Interchange" && n.diagram.layers.size() == 1 && n.diagram.layers[0].pos == 1) {
            found_slide = true;
            CHECK(n.move.scalar.is_one());
        }
    CHECK(found_slide);
}

TEST_CASE("modulo: moves invert and replay") {
    Ruleset rs = build_instance(3);
    const Signature& sig = rs.sig;
    Diagram d = parse_diagram_text(sig, "21 up_1 | rcup_1@1 ; rcap_1@0");
    for (const auto& n : e_neighbors(rs, d)) {
        Diagram back = n.diagram;
        apply_move(rs, back, inverse_move(n.move));
        CHECK(back == d);
        CHECK((n.move.scalar * inverse_move(n.move).scalar).is_one());
    }
    EMove wrong;
    wrong.kind = "Interchange";
    wrong.layer = 5;
    Diagram e = d;
    CHECK_THROWS_AS(apply_move(rs, e, wrong), ReplayError);
}

TEST_CASE("modulo: congruence verdicts") {
    Ruleset rs = build_instance(3);
    const Signature& sig = rs.sig;
    Diagram d = parse_diagram_text(sig, "111 | dot_1@0 ; dot_2@0");
    auto self = congruent_modulo(rs, d, d);
    CHECK(self.verdict == Verdict::Yes);
    CHECK(self.scalar.is_one());
    CHECK(self.witness.moves.empty());

    Diagram snake = parse_diagram_text(sig, "21 up_1 | rcup_1@1 ; rcap_1@0");
    Diagram id = parse_diagram_text(sig, "21 up_1 |");
    auto z = congruent_modulo(rs, snake, id);
    REQUIRE(z.verdict == Verdict::Yes);
    CHECK(z.scalar == Unit(UnitMonomial(0, 0, 2)));
    Unit replayed;
    CHECK(replay(rs, snake, z.witness.moves, &replayed) == id);
    CHECK(replayed == z.scalar);

    auto no = congruent_modulo(rs, parse_diagram_text(sig, "111 | dot_1@0"), parse_diagram_text(sig, "111 | dot_1@0 ; dot_1@0"));
    CHECK(no.verdict == Verdict::No);
    CHECK(e_invariants(rs, parse_diagram_text(sig, "111 | dot_1@0")) !=
          e_invariants(rs, parse_diagram_text(sig, "111 | dot_2@0")));
}

TEST_CASE("modulo: straightening") {
    Ruleset rs = build_instance(3);
    const Signature& sig = rs.sig;
    Diagram snake = parse_diagram_text(sig, "21 up_1 | rcup_1@1 ; rcap_1@0");
    CHECK(zigzag_pairs(sig, snake).size() == 1);
    Tidy t = tidy(rs, snake);
    CHECK(t.diagram.is_identity());
    CHECK(t.scalar == Unit(UnitMonomial(0, 0, 2)));
    Unit u;
    CHECK(replay(rs, snake, t.moves, &u) == t.diagram);
    CHECK(u == t.scalar);
}

TEST_CASE("modulo: loop scalars") {
    Ruleset rs = build_instance(3);
    const Signature& sig = rs.sig;
    Diagram d = parse_diagram_text(sig, "111 | dot_1@0 ; dot_1@0");

    CongruenceWitness empty{d, d, {}, Unit()};
    LoopTrace t0 = loop_scalar(rs, empty);
    CHECK(t0.scalar.is_one());
    CHECK(t0.identity);

    // One swap of two identical dots returns to the same diagram with the
    // dots exchanged.
    Diagram e = d;
    EMove m;
    int var = interchange_options(sig, d, 0) & 1 ? 0 : 1;
    REQUIRE(apply_interchange(sig, e, 0, var, &m));
    CHECK(e == d);
    CongruenceWitness one{d, d, {m}, m.scalar};
    LoopTrace t1 = loop_scalar(rs, one);
    CHECK(t1.scalar == Unit(UnitMonomial(1, 1, 0)));
    CHECK_FALSE(t1.identity);
    CHECK(t1.dot_map.at(0) == 1);

    CongruenceWitness two{d, d, {m, m}, Unit()};
    LoopTrace t2 = loop_scalar(rs, two);
    CHECK(t2.scalar.is_one());
    CHECK(t2.identity);

    CongruenceWitness open{d, parse_diagram_text(sig, "111 | dot_1@0"), {}, Unit()};
    CHECK_THROWS_AS(loop_scalar(rs, open), NotALoop);
}
