// Acceptance checks: one PASS/FAIL line per criterion with its time limit.
#include <algorithm>
#include <chrono>
#include <cstdio>
#include <functional>
#include <map>
#include <numeric>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "lgr/arsm.hpp"
#include "lgr/branching.hpp"
#include "lgr/errors.hpp"
#include "lgr/foam.hpp"
#include "lgr/io.hpp"

using namespace lgr;

namespace {

using Clock = std::chrono::steady_clock;

int g_failures = 0;

void report(int n, bool ok, double seconds, double limit, const std::string& detail) {
    bool pass = ok && seconds < limit;
    if (!pass) ++g_failures;
    std::printf("criterion %2d: %s  %s  [%.2fs, limit %.0fs]\n", n, pass ? "PASS" : "FAIL", detail.c_str(), seconds,
                limit);
    std::fflush(stdout);
}

double since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

Unit unit_of(const std::string& text) {
    Unit u;
    if (!RingElement::parse(text).as_unit(u)) throw ParseError("not a unit: " + text);
    return u;
}

// ---------------------------------------------------------------------------
// Independent oracles.

// Number of non-crossing perfect matchings of n points on a line, by
// recursion on the partner of the first point.
long matchings(int n, std::map<int, long>& memo) {
    if (n % 2) return 0;
    if (n == 0) return 1;
    auto it = memo.find(n);
    if (it != memo.end()) return it->second;
    long total = 0;
    for (int partner = 1; partner < n; partner += 2)
        total += matchings(partner - 1, memo) * matchings(n - partner - 1, memo);
    return memo[n] = total;
}

// Words over {s, t} with no factor ss, tt or sts.
std::set<std::string> irreducible_s3_words(int max_len) {
    std::set<std::string> out;
    std::function<void(std::string)> grow = [&](std::string w) {
        for (const char* bad : {"ss", "tt", "sts"})
            if (w.find(bad) != std::string::npos) return;
        out.insert(w);
        if (static_cast<int>(w.size()) == max_len) return;
        grow(w + "s");
        grow(w + "t");
    };
    grow("");
    return out;
}

// Order of the group generated by the transpositions (0 1) and (1 2).
std::size_t s3_group_order() {
    using Perm = std::vector<int>;
    std::set<Perm> seen{{0, 1, 2}};
    std::vector<Perm> todo{{0, 1, 2}};
    const std::vector<Perm> gens{{1, 0, 2}, {0, 2, 1}};
    while (!todo.empty()) {
        Perm p = todo.back();
        todo.pop_back();
        for (const auto& g : gens) {
            Perm q(3);
            for (int k = 0; k < 3; ++k) q[k] = g[p[k]];
            if (seen.insert(q).second) todo.push_back(q);
        }
    }
    return seen.size();
}

struct DisjointSets {
    std::vector<int> parent;
    explicit DisjointSets(int n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
    int find(int a) { return parent[a] == a ? a : parent[a] = find(parent[a]); }
    void unite(int a, int b) { parent[find(a)] = find(b); }
};

// Closed curves traced by the single-label facets along the boundary of a
// foam from W to W2 (both with right object `obj`).
int oracle_boundary_circles(const Signature& sig, const std::vector<int>& w, const std::vector<int>& w2, int obj) {
    const int d = sig.d;
    auto gaps_of = [&](const std::vector<int>& word) {
        std::vector<unsigned> masks(word.size() + 1);
        int o = obj;
        masks[word.size()] = sig.masks[o];
        for (int k = static_cast<int>(word.size()) - 1; k >= 0; --k) {
            o = sig.act(word[k], o);
            masks[k] = sig.masks[o];
        }
        return masks;
    };
    auto free_label = [&](unsigned mask, int j) {
        bool left_merged = j - 1 >= 1 && (mask >> (j - 1) & 1u);
        bool right_merged = j <= d - 1 && (mask >> j & 1u);
        return !left_merged && !right_merged;
    };
    const std::vector<std::vector<int>> rows{w, w2};
    std::vector<std::vector<unsigned>> gaps{gaps_of(w), gaps_of(w2)};
    std::map<std::tuple<int, int, int>, int> id;
    for (int r = 0; r < 2; ++r)
        for (std::size_t g = 0; g < gaps[r].size(); ++g)
            for (int j = 1; j <= d; ++j)
                if (free_label(gaps[r][g], j)) id.emplace(std::make_tuple(r, static_cast<int>(g), j), id.size());
    DisjointSets ds(static_cast<int>(id.size()));
    auto link = [&](int r1, int g1, int j1, int r2, int g2, int j2) {
        auto a = id.find({r1, g1, j1});
        auto b = id.find({r2, g2, j2});
        if (a != id.end() && b != id.end()) ds.unite(a->second, b->second);
    };
    for (int r = 0; r < 2; ++r)
        for (std::size_t k = 0; k < rows[r].size(); ++k) {
            int i = sig.letters[rows[r][k]].colour;
            int g = static_cast<int>(k);
            for (int j = 1; j <= d; ++j)
                if (j != i && j != i + 1) link(r, g, j, r, g + 1, j);
            int open_side = (gaps[r][k] >> i & 1u) ? g + 1 : g;
            link(r, open_side, i, r, open_side, i + 1);
        }
    for (int j = 1; j <= d; ++j) {
        link(0, 0, j, 1, 0, j);
        link(0, static_cast<int>(w.size()), j, 1, static_cast<int>(w2.size()), j);
    }
    std::set<int> roots;
    for (int k = 0; k < static_cast<int>(id.size()); ++k) roots.insert(ds.find(k));
    return static_cast<int>(roots.size());
}

// ---------------------------------------------------------------------------
// Random legal foams.

// All legal words of length at most `max_len` ending at `obj`.
std::vector<std::vector<int>> legal_words(const Signature& sig, int obj, int max_len) {
    std::vector<std::vector<int>> out{{}};
    for (std::size_t k = 0; k < out.size(); ++k) {
        if (static_cast<int>(out[k].size()) == max_len) continue;
        int left = sig.left_object(out[k], obj);
        for (int l = 0; l < static_cast<int>(sig.letters.size()); ++l)
            if (sig.act(l, left) >= 0) {
                std::vector<int> w{l};
                w.insert(w.end(), out[k].begin(), out[k].end());
                out.push_back(w);
            }
    }
    return out;
}

Diagram random_foam(const Ruleset& rs, std::mt19937_64& rng, int max_gens, int max_word = 2) {
    const Signature& sig = rs.sig;
    int obj = static_cast<int>(rng() % sig.objects.size());
    auto words = legal_words(sig, obj, max_word);
    Diagram d = identity_diagram(obj, words[rng() % words.size()]);
    int target = 1 + static_cast<int>(rng() % max_gens);
    for (int n = 0; n < target; ++n) {
        std::vector<int> top = target_word(sig, d);
        std::vector<std::pair<int, Layer>> cand;  // weight, layer
        for (int g = 0; g < static_cast<int>(sig.gens.size()); ++g) {
            const Generator& gen = sig.gens[g];
            int width = gen.n_in();
            for (int pos = 0; pos + width <= static_cast<int>(top.size()); ++pos) {
                if (!std::equal(gen.src.begin(), gen.src.end(), top.begin() + pos)) continue;
                Diagram trial = d;
                trial.layers.push_back({g, pos, fresh_uid()});
                if (!is_legal(sig, trial)) continue;
                int weight = gen.kind == "rcap" || gen.kind == "lcap" ? 3 : gen.kind == "dot" ? 2 : 1;
                cand.push_back({weight, trial.layers.back()});
            }
        }
        if (cand.empty()) break;
        int total = 0;
        for (const auto& c : cand) total += c.first;
        int pick = static_cast<int>(rng() % total);
        for (const auto& c : cand) {
            if (pick < c.first) {
                d.layers.push_back(c.second);
                break;
            }
            pick -= c.first;
        }
    }
    return d;
}

// A random walk of E-moves; returns the moves taken.
std::vector<EMove> random_walk(const Ruleset& rs, Diagram& d, std::mt19937_64& rng, int steps, bool insertions) {
    std::vector<EMove> path;
    NeighborOptions opt;
    opt.insertions = insertions;
    for (int k = 0; k < steps; ++k) {
        auto nb = e_neighbors(rs, d, opt);
        if (nb.empty()) break;
        const Neighbor& n = nb[rng() % nb.size()];
        path.push_back(n.move);
        d = n.diagram;
    }
    return path;
}

// ---------------------------------------------------------------------------
// Criteria.

void criterion1() {
    auto t0 = Clock::now();
    struct Shape {
        const char* rule;
        const char* word;
        const char* layers;
    };
    const Shape shapes[] = {{"zigzag1", "down_1", "lcup_1@1 ; lcap_1@0"},
                            {"zigzag2", "up_1", "lcup_1@0 ; lcap_1@1"},
                            {"zigzag3", "up_1", "rcup_1@1 ; rcap_1@0"},
                            {"zigzag4", "down_1", "rcup_1@0 ; rcap_1@1"}};
    const std::vector<std::string> expect_gfoam{"1", "X", "Z^2", "Y*Z^2"};
    const std::vector<std::string> expect_prime{"1", "X", "X*Y*Z^2", "X*Z^2"};
    bool ok = true;
    std::string detail;
    for (FoamVariant v : {FoamVariant::GFoam, FoamVariant::GFoamPrime}) {
        Ruleset rs = build_instance(2, v);
        const auto& expect = v == FoamVariant::GFoam ? expect_gfoam : expect_prime;
        detail += v == FoamVariant::GFoam ? "gfoam(" : " gfoam'(";
        for (int k = 0; k < 4; ++k) {
            Diagram snake = legal_diagram(rs.sig, shapes[k].word, shapes[k].layers);
            std::string got = "none";
            for (const auto& n : e_neighbors(rs, snake))
                if (n.move.rule.rfind(std::string(shapes[k].rule) + "[", 0) == 0 && n.move.dir == 1 && n.diagram.is_identity())
                    got = n.move.scalar.to_string();
            ok = ok && got == expect[k] && unit_of(got) == unit_of(expect[k]);
            detail += (k ? "," : "") + got;
        }
        detail += ")";
    }
    report(1, ok, since(t0), 1, detail);
}

void criterion2() {
    auto t0 = Clock::now();
    bool ok = true;
    std::string detail;
    Ruleset rs = build_instance(3);
    const Signature& sig = rs.sig;
    for (int i = 1; i <= 2; ++i) {
        std::string c = std::to_string(i), c1 = std::to_string(i + 1);
        Diagram dotted = legal_diagram(sig, "", "rcup_" + c + "@0 ; dot_" + c1 + "@1 ; lcap_" + c + "@0");
        Diagram plain = legal_diagram(sig, "", "rcup_" + c + "@0 ; lcap_" + c + "@0");
        Diagram cw = legal_diagram(sig, "", "lcup_" + c + "@0 ; rcap_" + c + "@0");

        Vector one = bubble_evaluate(rs, dotted).result;
        bool ok1 = one.terms.size() == 1 && one.terms[0].coeff == RingElement(1) &&
                   one.terms[0].diagram.is_identity() && one.terms[0].diagram.obj == dotted.obj;
        bool ok0 = bubble_evaluate(rs, plain).result.is_zero();

        Vector got = bubble_evaluate(rs, cw).result;
        Diagram di = parse_diagram_text(sig, sig.objects[cw.obj] + " | dot_" + c + "@0");
        Diagram di1 = parse_diagram_text(sig, sig.objects[cw.obj] + " | dot_" + c1 + "@0");
        bool okcw = got.terms.size() == 2;
        for (const auto& t : got.terms) {
            if (congruent_modulo(rs, t.diagram, di).verdict == Verdict::Yes)
                okcw = okcw && t.coeff == RingElement::parse("Z");
            else if (congruent_modulo(rs, t.diagram, di1).verdict == Verdict::Yes)
                okcw = okcw && t.coeff == RingElement::parse("X*Y*Z");
            else
                okcw = false;
        }
        ok = ok && ok1 && ok0 && okcw;
        detail += (i > 1 ? " " : "") + std::string("i=") + c + ": ccw dotted " + (one.to_string(sig)) +
                  ", ccw " + (ok0 ? "0" : "nonzero") + ", cw " + got.to_string(sig) + ";";
    }
    report(2, ok, since(t0), 1, detail);
}

void criterion3() {
    auto t0 = Clock::now();
    bool ok = true;
    std::string detail;
    const std::vector<std::string> required{"zigzag_rcup", "zigzag_lcup", "zigzag_rcap", "zigzag_lcap",
                                            "B_nc",        "B_sq_1",      "B_sq_2",      "nc_sq_1",
                                            "nc_sq_2"};
    for (const char* id : {"foam", "foam'"}) {
        SuiteReport rep = critical_suite(id);
        int passed = 0;
        std::set<std::string> seen;
        for (const auto& e : rep.entries) {
            std::string source = e.branching_id.substr(0, e.branching_id.find('#'));
            seen.insert(source);
            bool entry_ok = e.passed();
            if (e.branching.kind == BranchingKind::ZigzagPair)
                entry_ok = entry_ok && e.certificate.left_scalar * e.certificate.closing.scalar ==
                                           e.certificate.right_scalar;
            if (source == "B_nc") {
                const RingElement want = RingElement::parse("Z + X*Y*Z");
                for (const Vector* v : {&e.certificate.left_end, &e.certificate.right_end}) {
                    bool one_dot = v->terms.size() == 1 && v->terms[0].coeff == want;
                    if (one_dot) {
                        const Diagram& dg = v->terms[0].diagram;
                        int dots = 0;
                        for (const auto& l : dg.layers) dots += e.rules->sig.gens[l.gen].name == "dot_2";
                        one_dot = dots == 1 && dg.layers.size() == 1;
                    }
                    entry_ok = entry_ok && one_dot;
                }
            }
            passed += entry_ok;
            ok = ok && entry_ok;
        }
        for (const auto& r : required) ok = ok && seen.count(r) == 1;
        detail += std::string(id) + " " + std::to_string(passed) + "/" + std::to_string(rep.entries.size()) +
                  " over " + std::to_string(seen.size()) + " sources; ";
    }
    report(3, ok, since(t0), 30, detail);
}

void criterion4() {
    auto t0 = Clock::now();
    bool ok = true;
    std::string detail;
    SuiteReport rep = critical_suite("miniP");
    int passed = 0;
    for (const auto& e : rep.entries) passed += e.passed();
    ok = ok && rep.entries.size() == 2 && passed == 2;
    const Ruleset& rs = suite_ruleset("miniP");
    bool minus = false;
    for (const auto& r : rs.rules_R)
        if (r.monomial && r.unit.sign == -1) minus = true;
    ok = ok && minus;

    std::string text = read_text_file(data_path("miniP.json"));
    const std::string from = "\"coeff\": \"-1\"";
    auto at = text.find(from);
    int flipped_passed = -1;
    if (at != std::string::npos) {
        text.replace(at, from.size(), "\"coeff\": \"1\"");
        Ruleset flipped = parse_ruleset(text);
        SuiteReport frep = critical_suite("miniP", flipped);
        flipped_passed = 0;
        for (const auto& e : frep.entries) flipped_passed += e.passed();
        ok = ok && frep.entries.size() == 2 && flipped_passed == 0;
    } else {
        ok = false;
    }
    detail += "suite " + std::to_string(passed) + "/2, flipped " + std::to_string(flipped_passed) + "/2; dims";

    int s = rs.sig.letter_id("s");
    std::map<int, long> memo;
    for (int m = 0; m <= 6; ++m)
        for (int n = 0; m + n <= 6; ++n) {
            std::vector<int> w(m, s), w2(n, s);
            long got = hom_dimension_by_enumeration(rs, w, w2, 0, (m + n + 1) / 2);
            long want = matchings(m + n, memo);
            ok = ok && got == want;
            if (m <= n) detail += " " + std::to_string(m) + "," + std::to_string(n) + "=" + std::to_string(got);
        }
    report(4, ok, since(t0), 5, detail);
}

void criterion5() {
    auto t0 = Clock::now();
    const Ruleset& rs = suite_ruleset("s3");
    int x = rs.sig.letter_id("x");
    FiniteARSM sys = arsm_from_ruleset(rs, {x}, {x}, 0, 6);
    ArsmReport r = analyze(sys);
    SuiteReport rep = critical_suite("s3");
    int passed = 0;
    for (const auto& e : rep.entries) passed += e.passed();

    // The oracle words, written with the ruleset's generator names.
    std::set<std::string> want;
    for (const auto& w : irreducible_s3_words(6)) {
        std::string name = "[";
        for (std::size_t k = 0; k < w.size(); ++k) name += (k ? " ; " : "") + std::string(w[k] == 's' ? "sigma" : "tau");
        want.insert(w.empty() ? "[id]" : name + "]");
    }
    std::set<std::string> got;
    std::set<int> classes;
    for (int e : r.normal_forms)
        if (classes.insert(r.e_class[e]).second) got.insert(sys.elements[e]);

    bool ok = r.terminating && r.locally_confluent && r.confluent && rep.entries.size() == 3 && passed == 3 &&
              r.num_normal_classes == 6 && want.size() == 6 && s3_group_order() == 6 && got == want;
    std::string detail = std::string(r.terminating ? "terminating" : "non-terminating") + ", criticals " +
                         std::to_string(passed) + "/" + std::to_string(rep.entries.size()) + ", normal forms " +
                         std::to_string(r.num_normal_classes) + " (oracle " + std::to_string(want.size()) +
                         ", |S3| = " + std::to_string(s3_group_order()) + ")";
    report(5, ok, since(t0), 1, detail);
}

void criterion6() {
    auto t0 = Clock::now();
    bool ok = true;
    int pairs = 0, elements = 0;
    std::string bad;
    std::mt19937_64 rng(6);
    for (int d : {2, 3}) {
        Ruleset rs = build_instance(d);
        const Signature& sig = rs.sig;
        std::vector<std::tuple<int, std::vector<int>, std::vector<int>>> candidates;
        for (int obj = 0; obj < static_cast<int>(sig.objects.size()); ++obj) {
            auto words = legal_words(sig, obj, 4);
            for (const auto& a : words)
                for (const auto& b : words)
                    if (sig.left_object(a, obj) == sig.left_object(b, obj)) candidates.emplace_back(obj, a, b);
        }
        std::shuffle(candidates.begin(), candidates.end(), rng);
        // Always include the largest boundaries as well as random ones.
        std::stable_sort(candidates.begin(), candidates.begin() + std::min<std::size_t>(candidates.size(), 40),
                         [](const auto& x, const auto& y) {
                             return std::get<1>(x).size() + std::get<2>(x).size() >
                                    std::get<1>(y).size() + std::get<2>(y).size();
                         });
        std::size_t take = std::min<std::size_t>(candidates.size(), 20);
        for (std::size_t k = 0; k < take; ++k) {
            const auto& [obj, w, w2] = candidates[k];
            ++pairs;
            int circles = oracle_boundary_circles(sig, w, w2, obj);
            auto basis = hom_basis(rs, w, w2, obj);
            bool pair_ok = basis.size() == (std::size_t{1} << circles);
            std::set<std::size_t> seen;
            GradingVector base;
            bool have_base = false;
            for (const auto& e : basis) {
                ++elements;
                const Diagram& dg = e.diagram;
                pair_ok = pair_ok && dg.source == w && target_word(sig, dg) == w2 && dg.obj == obj &&
                          is_legal(sig, dg) && is_reduced(rs, dg) && geometrically_reduced(sig, dg);
                GradingVector g = degree(sig, dg);
                long n = static_cast<long>(e.delta.size());
                GradingVector undotted{g.p - n, g.q - n};
                if (!have_base) {
                    base = undotted;
                    have_base = true;
                }
                pair_ok = pair_ok && undotted == base;
                seen.insert(std::hash<std::string>{}(diagram_to_text(sig, tidy(rs, dg).diagram)));
            }
            pair_ok = pair_ok && seen.size() == basis.size();
            if (!pair_ok)
                bad += " d=" + std::to_string(d) + ":" + diagram_to_text(sig, identity_diagram(obj, w)) + "->" +
                       diagram_to_text(sig, identity_diagram(obj, w2)) + "(" + std::to_string(basis.size()) +
                       " vs 2^" + std::to_string(circles) + ")";
            ok = ok && pair_ok;
        }
    }
    std::string detail = std::to_string(pairs) + " pairs, " + std::to_string(elements) + " basis elements";
    if (!bad.empty()) detail += "; mismatches:" + bad;
    report(6, ok && pairs >= 10, since(t0), 60, detail);
}

struct FuzzOutcome {
    long steps = 0;
    long bad_steps = 0;
    long violations = 0;
};

FuzzOutcome g_fuzz;

void criterion7() {
    auto t0 = Clock::now();
    Ruleset rs = build_instance(3);
    std::mt19937_64 rng(7);
    int mismatches = 0, unknowns = 0, errors = 0, samples = 0;
    long max_terms = 0;
    std::string first_error, first_unknown;
    for (int k = 0; k < 100; ++k) {
        Diagram d = random_foam(rs, rng, 10);
        ++samples;
        std::vector<Vector> results;
        try {
            for (Strategy st : {Strategy::Priority, Strategy::Position, Strategy::Reverse}) {
                NormalizeOptions opt;
                opt.strategy = st;
                opt.record_vectors = false;
                NormalizeResult n = normalize(rs, d, opt);
                g_fuzz.violations += n.order_violations;
                for (const auto& s : n.steps) {
                    ++g_fuzz.steps;
                    bool dec = s.decreasing;
                    for (const auto& t : rewrite_aligned(rs, s.redex))
                        dec = dec && order_compare(rs, s.redex.host, t.diagram) == OrderResult::Greater;
                    if (!dec) ++g_fuzz.bad_steps;
                }
                max_terms = std::max<long>(max_terms, static_cast<long>(n.result.terms.size()));
                unknowns += n.result.unknown_pairs;
                if (n.result.unknown_pairs && first_unknown.empty())
                    first_unknown = "merge in " + diagram_to_text(rs.sig, d);
                results.push_back(std::move(n.result));
            }
        } catch (const Error& e) {
            ++errors;
            if (first_error.empty()) first_error = e.what();
            continue;
        }
        for (std::size_t a = 0; a < results.size(); ++a)
            for (std::size_t b = a + 1; b < results.size(); ++b) {
                Verdict v = vectors_congruent(rs, results[a], results[b]);
                if (v == Verdict::No) ++mismatches;
                if (v == Verdict::Unknown) {
                    ++unknowns;
                    if (first_unknown.empty()) first_unknown = "comparison in " + diagram_to_text(rs.sig, d);
                }
            }
    }
    std::string detail = std::to_string(samples) + " foams x 3 strategies: " + std::to_string(mismatches) +
                         " mismatches, " + std::to_string(unknowns) + " unknowns, " + std::to_string(errors) +
                         " errors, largest normal form " + std::to_string(max_terms) + " terms";
    if (!first_error.empty()) detail += " (" + first_error + ")";
    if (!first_unknown.empty()) detail += "; first unknown: " + first_unknown;
    report(7, mismatches == 0 && unknowns == 0 && errors == 0, since(t0), 300, detail);
}

void criterion8() {
    auto t0 = Clock::now();
    std::string detail = std::to_string(g_fuzz.steps) + " steps, " + std::to_string(g_fuzz.bad_steps) +
                         " not decreasing, " + std::to_string(g_fuzz.violations) + " order violations";
    report(8, g_fuzz.steps > 0 && g_fuzz.bad_steps == 0 && g_fuzz.violations == 0, since(t0), 1, detail);
}

void criterion9() {
    auto t0 = Clock::now();
    std::mt19937_64 rng(9);
    std::vector<std::pair<const Ruleset*, Diagram>> pool;
    Ruleset r2 = build_instance(2), r3 = build_instance(3);
    for (const Ruleset* rs : {&r2, &r3}) {
        const Signature& sig = rs->sig;
        for (int obj = 0; obj < static_cast<int>(sig.objects.size()); ++obj) {
            auto words = legal_words(sig, obj, 2);
            for (const auto& a : words)
                for (const auto& b : words)
                    if (sig.left_object(a, obj) == sig.left_object(b, obj))
                        for (const auto& e : hom_basis(*rs, a, b, obj))
                            if (!e.diagram.layers.empty()) pool.emplace_back(rs, e.diagram);
        }
    }
    int loops = 0, good = 0, nontrivial = 0;
    std::string first_bad;
    for (int k = 0; k < 100 && !pool.empty(); ++k) {
        const auto& [rs, d] = pool[rng() % pool.size()];
        Diagram end = d;
        int len = 1 + static_cast<int>(rng() % 6);
        std::vector<EMove> moves = random_walk(*rs, end, rng, len, rng() % 2 == 0);
        CongruenceResult back = congruent_modulo(*rs, end, d);
        ++loops;
        if (back.verdict != Verdict::Yes) {
            if (first_bad.empty()) first_bad = "walk end not congruent: " + back.reason;
            continue;
        }
        moves.insert(moves.end(), back.witness.moves.begin(), back.witness.moves.end());
        Unit replayed;
        Diagram reached = replay(*rs, d, moves, &replayed);
        CongruenceWitness loop{d, d, moves, replayed};
        LoopTrace t = loop_scalar(*rs, loop);
        bool is_trivial = moves.empty();
        nontrivial += !is_trivial;
        if (reached == d && t.scalar.is_one() && replayed.is_one() && t.identity)
            ++good;
        else if (first_bad.empty())
            first_bad = diagram_to_text(rs->sig, d) + " scalar " + t.scalar.to_string();
    }
    std::string detail = std::to_string(good) + "/" + std::to_string(loops) + " loops with scalar 1 and identity (" +
                         std::to_string(nontrivial) + " non-empty, pool " + std::to_string(pool.size()) + ")";
    if (!first_bad.empty()) detail += "; first failure: " + first_bad;
    report(9, loops == 100 && good == loops, since(t0), 60, detail);
}

void criterion10() {
    auto t0 = Clock::now();
    Ruleset rs = build_instance(3);
    std::mt19937_64 rng(10);
    const std::vector<RingElement> coeffs{RingElement(1), RingElement(-1), RingElement(2), RingElement::X(),
                                          RingElement::Z(), RingElement::X() * RingElement::Y()};
    int tried = 0, factored = 0, attempts = 0;
    std::string first_bad;
    while (tried < 100 && attempts < 5000) {
        ++attempts;
        Diagram d = random_foam(rs, rng, 6);
        auto redexes = find_redexes(rs, d);
        if (redexes.empty()) continue;
        const Redex& r = redexes[rng() % redexes.size()];
        Diagram copy = d;
        random_walk(rs, copy, rng, 1 + static_cast<int>(rng() % 4), false);
        Vector v;
        v.terms.push_back({coeffs[rng() % coeffs.size()], d});
        v.terms.push_back({coeffs[rng() % coeffs.size()], copy});
        Factorization fz = factor_step(rs, v, 0, r);
        if (!fz.nonpositive) {
            if (first_bad.empty()) first_bad = "step on a duplicated class was positive";
            ++tried;
            continue;
        }
        ++tried;
        bool ok = fz.ok && fz.g.size() <= 1 && fz.h.size() <= 1;
        for (const auto& s : fz.g) ok = ok && s.positive;
        for (const auto& s : fz.h) ok = ok && s.positive;
        ok = ok && vectors_congruent(rs, fz.g_end, fz.h_end) == Verdict::Yes;
        if (ok)
            ++factored;
        else if (first_bad.empty())
            first_bad = diagram_to_text(rs.sig, d) + " by " + r.instance;
    }
    std::string detail = std::to_string(factored) + "/" + std::to_string(tried) + " non-positive steps factor";
    if (!first_bad.empty()) detail += "; first failure: " + first_bad;
    report(10, tried == 100 && factored == tried, since(t0), 10, detail);
}

}  // namespace

int main() {
    const std::vector<void (*)()> criteria{criterion1, criterion2, criterion3, criterion4, criterion5,
                                           criterion6, criterion7, criterion8, criterion9, criterion10};
    for (std::size_t k = 0; k < criteria.size(); ++k) {
        try {
            criteria[k]();
        } catch (const std::exception& e) {
            report(static_cast<int>(k + 1), false, 0, 1, std::string("exception: ") + e.what());
        }
    }
    std::printf("%d of %zu criteria failed\n", g_failures, criteria.size());
    return g_failures == 0 ? 0 : 1;
}
