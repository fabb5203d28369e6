// Unit tests for finite abstract rewriting systems modulo.
#include <map>
#include <random>
#include <set>
#include <string>

#include "doctest.h"
#include "lgr/arsm.hpp"
#include "lgr/errors.hpp"

using namespace lgr;

namespace {

// Normal forms reachable from x by plain R-steps (no E-edges), for checking
// analyze() on systems without E.
std::set<int> reachable_normals(const FiniteARSM& s, int x) {
    std::set<int> seen{x}, normals;
    std::vector<int> stack{x};
    while (!stack.empty()) {
        int a = stack.back();
        stack.pop_back();
        bool out = false;
        for (const auto& e : s.r_edges)
            if (e.src == a) {
                out = true;
                if (seen.insert(e.tgt).second) stack.push_back(e.tgt);
            }
        if (!out) normals.insert(a);
    }
    return normals;
}

}  // namespace

TEST_CASE("arsm: one edge") {
    FiniteARSM s = parse_arsm(R"({"elements": ["a", "b"], "r_edges": [{"src": "a", "tgt": "b"}]})");
    ArsmReport r = analyze(s);
    CHECK(r.terminating);
    CHECK(r.confluent);
    CHECK(r.num_normal_classes == 1);
    CHECK(r.normal_forms == std::vector<int>{1});
    auto cr = church_rosser_witness(s, 0, 1);
    REQUIRE(cr.has_value());
    CHECK(cr->meet == 1);
    CHECK(cr->g.size() == 1);
    CHECK(cr->h.empty());
    auto self = church_rosser_witness(s, 0, 0);
    REQUIRE(self.has_value());
    CHECK(self->g.empty());
    CHECK(self->h.empty());
}

TEST_CASE("arsm: fork and cycle") {
    FiniteARSM fork = parse_arsm(R"({"elements": ["a", "b", "c"],
        "r_edges": [{"src": "a", "tgt": "b"}, {"src": "a", "tgt": "c"}]})");
    ArsmReport f = analyze(fork);
    CHECK(f.terminating);
    CHECK_FALSE(f.locally_confluent);
    CHECK_FALSE(f.confluent);
    CHECK_FALSE(church_rosser_witness(fork, 1, 2).has_value());

    FiniteARSM loop = parse_arsm(R"({"elements": ["a", "b"],
        "r_edges": [{"src": "a", "tgt": "b"}, {"src": "b", "tgt": "a"}]})");
    CHECK_FALSE(analyze(loop).terminating);

    FiniteARSM apart = parse_arsm(R"({"elements": ["a", "b"]})");
    CHECK(analyze(apart).num_components == 2);
    CHECK_THROWS_AS(church_rosser_witness(apart, 0, 1), NotCongruent);
}

TEST_CASE("arsm: E-classes and joins modulo") {
    FiniteARSM s = parse_arsm(R"({"elements": ["a", "b", "c", "b2"],
        "r_edges": [{"src": "a", "tgt": "b"}, {"src": "a", "tgt": "c"}, {"src": "c", "tgt": "b2"}],
        "e_edges": [{"src": "b", "tgt": "b2"}]})");
    ArsmReport r = analyze(s);
    CHECK(r.num_e_classes == 3);
    CHECK(r.e_class[1] == r.e_class[3]);
    CHECK(r.locally_confluent);
    CHECK(r.confluent);
    auto cr = church_rosser_witness(s, 1, 2);
    REQUIRE(cr.has_value());
}

TEST_CASE("arsm: scalar coherence") {
    FiniteARSM good = parse_arsm(R"({"elements": ["a", "b", "c"],
        "e_edges": [{"src": "a", "tgt": "b", "scalar": "X"}, {"src": "b", "tgt": "c", "scalar": "Z"},
                    {"src": "a", "tgt": "c", "scalar": "X*Z"}]})");
    ArsmReport g = analyze(good);
    CHECK(g.scalars_present);
    CHECK(g.scalar_coherent);

    FiniteARSM bad = parse_arsm(R"({"elements": ["a", "b", "c"],
        "e_edges": [{"src": "a", "tgt": "b", "scalar": "X"}, {"src": "b", "tgt": "c", "scalar": "Z"},
                    {"src": "a", "tgt": "c", "scalar": "Z"}]})");
    ArsmReport b = analyze(bad);
    CHECK_FALSE(b.scalar_coherent);
    CHECK_FALSE(b.incoherent_edges.empty());
    CHECK_THROWS_AS(parse_arsm(R"({"elements": ["a"], "e_edges": [{"src": "a", "tgt": "a", "scalar": "1+X"}]})"),
                    ParseError);
}

TEST_CASE("arsm: order compatibility") {
    FiniteARSM s = parse_arsm(R"({"elements": ["a", "b"], "r_edges": [{"src": "a", "tgt": "b"}],
        "order": [["b", "a"]]})");
    CHECK_FALSE(analyze(s).order_compatible);
    FiniteARSM t = parse_arsm(R"({"elements": ["a", "b"], "r_edges": [{"src": "a", "tgt": "b"}],
        "order": [["a", "b"]]})");
    CHECK(analyze(t).order_compatible);
}

TEST_CASE("arsm: json round trip") {
    FiniteARSM s = parse_arsm(R"({"elements": ["a", "b"], "r_edges": [{"src": "a", "tgt": "b", "label": "r"}],
        "e_edges": [{"src": 0, "tgt": 1, "scalar": "Y"}]})");
    FiniteARSM back = parse_arsm(arsm_to_json(s));
    CHECK(back.elements == s.elements);
    REQUIRE(back.e_edges.size() == 1);
    CHECK(back.e_edges[0].scalar == s.e_edges[0].scalar);
    CHECK(back.r_edges[0].label == "r");
}

TEST_CASE("arsm: terminating local confluence gives confluence") {
    std::mt19937_64 rng(2024);
    for (int trial = 0; trial < 200; ++trial) {
        FiniteARSM s;
        int n = 2 + static_cast<int>(rng() % 6);
        for (int k = 0; k < n; ++k) s.add_element("e" + std::to_string(k));
        for (int a = 0; a < n; ++a)
            for (int b = a + 1; b < n; ++b)
                if (rng() % 3 == 0) s.r_edges.push_back({a, b, "", std::nullopt});
        ArsmReport r = analyze(s);
        REQUIRE(r.terminating);
        bool unique = true;
        for (int x = 0; x < n; ++x)
            if (reachable_normals(s, x).size() != 1) unique = false;
        CHECK(r.confluent == unique);
        if (r.locally_confluent) CHECK(r.confluent);
    }
}
