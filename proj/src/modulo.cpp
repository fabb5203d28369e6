// Modulo moves, straightening, canonical forms and congruence search.
#include "lgr/modulo.hpp"

#include <algorithm>
#include <deque>
#include <set>
#include <unordered_map>

#include "lgr/errors.hpp"
#include "lgr/foam.hpp"

namespace lgr {

namespace {

std::vector<int> slice_at(const Signature& sig, const Diagram& d, int t) {
    std::vector<int> w = d.source;
    for (int k = 0; k < t; ++k) w = apply_layer(sig, w, d.layers[k]);
    return w;
}

const Diagram& pattern_of(const RewriteRule& r, int dir) { return dir > 0 ? r.lhs : r.rhs.front().diagram; }
const Diagram& replacement_of(const RewriteRule& r, int dir) { return dir > 0 ? r.rhs.front().diagram : r.lhs; }

bool word_matches(const std::vector<int>& word, int anchor, const std::vector<int>& pattern) {
    if (anchor < 0 || anchor + static_cast<int>(pattern.size()) > static_cast<int>(word.size())) return false;
    return std::equal(pattern.begin(), pattern.end(), word.begin() + anchor);
}

// Replaces the pattern window of an E-rule; returns false when it does not match.
bool replace_window(const Ruleset& rs, const Diagram& d, int rule, int dir, int layer, int anchor, Diagram& out,
                    const std::vector<int>* slice_word = nullptr) {
    const RewriteRule& r = rs.rules_E.at(rule);
    const Diagram& pat = pattern_of(r, dir);
    const Diagram& rep = replacement_of(r, dir);
    const int L = static_cast<int>(d.layers.size());
    const int k = static_cast<int>(pat.layers.size());
    if (layer < 0 || layer + k > L) return false;
    for (int j = 0; j < k; ++j) {
        const Layer& a = d.layers[layer + j];
        if (a.gen != pat.layers[j].gen || a.pos != pat.layers[j].pos + anchor) return false;
    }
    std::vector<int> w = slice_word ? *slice_word : slice_at(rs.sig, d, layer);
    if (!word_matches(w, anchor, pat.source)) return false;
    out.obj = d.obj;
    out.source = d.source;
    out.layers.assign(d.layers.begin(), d.layers.begin() + layer);
    std::vector<char> used(k, 0);
    for (const auto& nl : rep.layers) {
        Layer x{nl.gen, nl.pos + anchor, 0};
        const std::string& kind = rs.sig.gens[nl.gen].kind;
        for (int j = 0; j < k; ++j) {
            if (!used[j] && rs.sig.gens[d.layers[layer + j].gen].kind == kind) {
                used[j] = 1;
                x.uid = d.layers[layer + j].uid;
                break;
            }
        }
        if (x.uid == 0) x.uid = fresh_uid();
        out.layers.push_back(x);
    }
    out.layers.insert(out.layers.end(), d.layers.begin() + layer + k, d.layers.end());
    return is_legal(rs.sig, out);
}

Unit rule_scalar(const RewriteRule& r, int dir) { return dir > 0 ? r.unit : r.unit.inverse(); }

bool is_cup_like(const Generator& g) { return g.n_in() == 0 && g.n_out() == 2 && g.links.size() == 1; }
bool is_cap_like(const Generator& g) { return g.n_in() == 2 && g.n_out() == 0 && g.links.size() == 1; }

// Follows a letter upwards from slice t; returns the consuming layer and leg
// (or layer -1 when the letter reaches the top).
std::pair<int, int> track_up(const Signature& sig, const Diagram& d, int t, int x, std::vector<int>* positions) {
    const int L = static_cast<int>(d.layers.size());
    for (; t < L; ++t) {
        if (positions) positions->push_back(x);
        const Layer& l = d.layers[t];
        const Generator& g = sig.gens[l.gen];
        const int n = g.n_in(), m = g.n_out();
        if (x < l.pos) continue;
        if (x >= l.pos + n) {
            x = x - n + m;
            continue;
        }
        return {t, x - l.pos};
    }
    if (positions) positions->push_back(x);
    return {-1, x};
}

bool has_zigzag_rules(const Ruleset& rs) {
    for (const auto& r : rs.rules_E)
        if (r.move_kind == MoveKind::Zigzag) return true;
    return false;
}

}  // namespace

Unit interchange_scalar(const Signature& sig, int upper_gen, int lower_gen) {
    const GradingVector& a = sig.gens[upper_gen].degree;
    const GradingVector& b = sig.gens[lower_gen].degree;
    if (sig.policy == InterchangePolicy::Super) return Unit(((a.p * b.p) & 1) ? -1 : 1, UnitMonomial());
    return Unit(mu(a, b));
}

int interchange_options(const Signature& sig, const Diagram& d, int k) {
    if (k < 0 || k + 1 >= static_cast<int>(d.layers.size())) return 0;
    const Layer& lo = d.layers[k];
    const Layer& up = d.layers[k + 1];
    const int m1 = sig.gens[lo.gen].n_out();
    const int n2 = sig.gens[up.gen].n_in();
    int bits = 0;
    if (up.pos + n2 <= lo.pos) bits |= 1;
    if (up.pos >= lo.pos + m1) bits |= 2;
    return bits;
}

bool apply_interchange(const Signature& sig, Diagram& d, int k, int variant, EMove* move) {
    const int opts = interchange_options(sig, d, k);
    if (!(opts >> variant & 1)) return false;
    const Layer lo = d.layers[k];
    const Layer up = d.layers[k + 1];
    const Generator& g1 = sig.gens[lo.gen];
    const Generator& g2 = sig.gens[up.gen];
    Layer nlo = up, nup = lo;
    if (variant == 0) {
        nlo.pos = up.pos;
        nup.pos = lo.pos + (g2.n_out() - g2.n_in());
    } else {
        nlo.pos = up.pos - (g1.n_out() - g1.n_in());
        nup.pos = lo.pos;
    }
    d.layers[k] = nlo;
    d.layers[k + 1] = nup;
    if (move) {
        *move = EMove{};
        move->kind = "Interchange";
        move->variant = variant;
        move->layer = k;
        move->anchor = std::min(lo.pos, up.pos);
        move->dir = 1;
        move->scalar = interchange_scalar(sig, up.gen, lo.gen);
    }
    return true;
}

std::optional<EMove> rule_move_at(const Ruleset& rs, const Diagram& d, int rule, int dir, int layer, int anchor) {
    Diagram out;
    if (!replace_window(rs, d, rule, dir, layer, anchor, out)) return std::nullopt;
    const RewriteRule& r = rs.rules_E[rule];
    EMove m;
    m.kind = to_string(r.move_kind);
    m.variant = rule;
    m.layer = layer;
    m.anchor = anchor;
    m.dir = dir;
    m.rule = r.instance;
    m.scalar = rule_scalar(r, dir);
    return m;
}

void apply_move(const Ruleset& rs, Diagram& d, const EMove& m, bool check_scalar) {
    if (m.kind == "Interchange") {
        EMove got;
        if (!apply_interchange(rs.sig, d, m.layer, m.variant, &got))
            throw ReplayError("interchange at layer " + std::to_string(m.layer) + " is not applicable");
        if (check_scalar && !(got.scalar == m.scalar))
            throw ReplayError("interchange scalar mismatch at layer " + std::to_string(m.layer));
        return;
    }
    if (m.variant < 0 || m.variant >= static_cast<int>(rs.rules_E.size()))
        throw ReplayError("unknown modulo rule index " + std::to_string(m.variant));
    const RewriteRule& r = rs.rules_E[m.variant];
    if (!m.rule.empty() && m.rule != r.instance) throw ReplayError("rule name mismatch for move " + m.rule);
    Diagram out;
    if (!replace_window(rs, d, m.variant, m.dir, m.layer, m.anchor, out))
        throw ReplayError("rule " + r.instance + " does not apply at layer " + std::to_string(m.layer));
    if (check_scalar && !(rule_scalar(r, m.dir) == m.scalar)) throw ReplayError("scalar mismatch for " + r.instance);
    d = std::move(out);
}

EMove inverse_move(const EMove& m) {
    EMove inv = m;
    if (m.kind == "Interchange") {
        inv.variant = 1 - m.variant;
    } else {
        inv.dir = -m.dir;
    }
    inv.scalar = m.scalar.inverse();
    return inv;
}

std::vector<EMove> inverse_path(const std::vector<EMove>& path) {
    std::vector<EMove> out;
    out.reserve(path.size());
    for (auto it = path.rbegin(); it != path.rend(); ++it) out.push_back(inverse_move(*it));
    return out;
}

Unit path_scalar(const std::vector<EMove>& path) {
    Unit u;
    for (const auto& m : path) u *= m.scalar;
    return u;
}

std::vector<Neighbor> e_neighbors(const Ruleset& rs, const Diagram& d, const NeighborOptions& opt) {
    std::vector<Neighbor> out;
    const int L = static_cast<int>(d.layers.size());
    if (opt.interchanges) {
        for (int k = 0; k + 1 < L; ++k) {
            const int bits = interchange_options(rs.sig, d, k);
            for (int v = 0; v < 2; ++v) {
                if (!(bits >> v & 1)) continue;
                Neighbor nb{EMove{}, d};
                apply_interchange(rs.sig, nb.diagram, k, v, &nb.move);
                out.push_back(std::move(nb));
            }
        }
    }
    if (!opt.rule_moves && !opt.insertions) return out;
    const std::vector<std::vector<int>> sl = slices(rs.sig, d);
    for (int r = 0; r < static_cast<int>(rs.rules_E.size()); ++r) {
        const RewriteRule& rule = rs.rules_E[r];
        for (int dir : {1, -1}) {
            const Diagram& pat = pattern_of(rule, dir);
            if (pat.layers.empty()) {
                if (!opt.insertions) continue;
                for (int t = 0; t <= L; ++t) {
                    const int len = static_cast<int>(sl[t].size());
                    for (int s = 0; s + static_cast<int>(pat.source.size()) <= len; ++s) {
                        if (!word_matches(sl[t], s, pat.source)) continue;
                        Diagram nd;
                        if (!replace_window(rs, d, r, dir, t, s, nd, &sl[t])) continue;
                        EMove m{to_string(rule.move_kind), r, t, s, dir, rule.instance, rule_scalar(rule, dir)};
                        out.push_back({m, std::move(nd)});
                    }
                }
                continue;
            }
            if (!opt.rule_moves) continue;
            const int k = static_cast<int>(pat.layers.size());
            for (int t = 0; t + k <= L; ++t) {
                if (d.layers[t].gen != pat.layers[0].gen) continue;
                const int s = d.layers[t].pos - pat.layers[0].pos;
                Diagram nd;
                if (!replace_window(rs, d, r, dir, t, s, nd, &sl[t])) continue;
                EMove m{to_string(rule.move_kind), r, t, s, dir, rule.instance, rule_scalar(rule, dir)};
                out.push_back({m, std::move(nd)});
            }
        }
    }
    return out;
}

std::pair<Diagram, Unit> interchange_canonical(const Signature& sig, const Diagram& d, std::vector<EMove>* moves) {
    Diagram c = d;
    Unit u;
    const long L = static_cast<long>(c.layers.size());
    long guard = 4 * L * L + 16;
    int k = 0;
    while (k + 1 < L && guard-- > 0) {
        if (interchange_options(sig, c, k) == 1) {
            EMove m;
            apply_interchange(sig, c, k, 0, &m);
            u *= m.scalar;
            if (moves) moves->push_back(m);
            k = std::max(0, k - 1);
        } else {
            ++k;
        }
    }
    return {c, u};
}

std::vector<ZigzagPair> zigzag_pairs(const Signature& sig, const Diagram& d) {
    std::vector<ZigzagPair> out;
    const int L = static_cast<int>(d.layers.size());
    for (int n = 0; n < L; ++n) {
        const Generator& g = sig.gens[d.layers[n].gen];
        if (!is_cup_like(g)) continue;
        for (int leg = 0; leg < 2; ++leg) {
            auto [m, in_leg] = track_up(sig, d, n + 1, d.layers[n].pos + leg, nullptr);
            if (m < 0 || !is_cap_like(sig.gens[d.layers[m].gen])) continue;
            if (leg == 0 && in_leg == 1) out.push_back({n, m, 1});
            if (leg == 1 && in_leg == 0) out.push_back({n, m, 2});
        }
    }
    return out;
}

std::optional<std::vector<EMove>> straighten_pair(const Ruleset& rs, Diagram& d, int cup, int cap) {
    const Signature& sig = rs.sig;
    if (cup < 0 || cap <= cup || cap >= static_cast<int>(d.layers.size())) return std::nullopt;
    int shape = 0, sleg = 0;
    for (const auto& zp : zigzag_pairs(sig, d))
        if (zp.cup == cup && zp.cap == cap) shape = zp.shape;
    if (shape == 0) return std::nullopt;
    sleg = shape == 1 ? 0 : 1;
    std::vector<int> spos;
    track_up(sig, d, cup + 1, d.layers[cup].pos + sleg, &spos);
    // spos[j] is the position of the middle segment in slice cup+1+j.
    Diagram w = d;
    std::vector<int> key(cap - cup + 1);
    key[0] = 1;
    key[cap - cup] = 2;
    for (int t = cup + 1; t < cap; ++t) {
        const int x = spos[t - cup - 1];
        const Layer& l = w.layers[t];
        const int n = sig.gens[l.gen].n_in();
        bool left = l.pos + n <= x;
        bool right = l.pos >= x + 1;
        if (!left && !right) return std::nullopt;
        key[t - cup] = (left == (shape == 1)) ? 0 : 3;
    }
    std::vector<EMove> moves;
    const int variant = shape == 1 ? 0 : 1;
    bool swapped = true;
    while (swapped) {
        swapped = false;
        for (int j = 0; j + 1 < static_cast<int>(key.size()); ++j) {
            if (key[j] <= key[j + 1]) continue;
            EMove m;
            if (!apply_interchange(sig, w, cup + j, variant, &m)) return std::nullopt;
            moves.push_back(m);
            std::swap(key[j], key[j + 1]);
            swapped = true;
        }
    }
    const int at = cup + static_cast<int>(std::count(key.begin(), key.end(), 0));
    for (int r = 0; r < static_cast<int>(rs.rules_E.size()); ++r) {
        const RewriteRule& rule = rs.rules_E[r];
        if (rule.move_kind != MoveKind::Zigzag || rule.lhs.layers.size() != 2) continue;
        const int s = w.layers[at].pos - rule.lhs.layers[0].pos;
        auto mv = rule_move_at(rs, w, r, 1, at, s);
        if (!mv) continue;
        apply_move(rs, w, *mv, false);
        moves.push_back(*mv);
        d = std::move(w);
        return moves;
    }
    return std::nullopt;
}

Diagram straighten(const Ruleset& rs, const Diagram& d, std::vector<EMove>* moves) {
    Diagram cur = d;
    if (!has_zigzag_rules(rs)) return cur;
    std::set<std::pair<std::uint32_t, std::uint32_t>> failed;
    while (true) {
        auto pairs = zigzag_pairs(rs.sig, cur);
        std::stable_sort(pairs.begin(), pairs.end(),
                         [](const ZigzagPair& a, const ZigzagPair& b) { return a.cap - a.cup < b.cap - b.cup; });
        bool progress = false;
        for (const auto& zp : pairs) {
            auto key = std::make_pair(cur.layers[zp.cup].uid, cur.layers[zp.cap].uid);
            if (failed.count(key)) continue;
            auto got = straighten_pair(rs, cur, zp.cup, zp.cap);
            if (!got) {
                failed.insert(key);
                continue;
            }
            if (moves) moves->insert(moves->end(), got->begin(), got->end());
            progress = true;
            break;
        }
        if (!progress) return cur;
    }
}

Tidy tidy(const Ruleset& rs, const Diagram& d) {
    Tidy t;
    Diagram s = straighten(rs, d, &t.moves);
    auto [c, u] = interchange_canonical(rs.sig, s, &t.moves);
    t.diagram = std::move(c);
    t.scalar = path_scalar(t.moves);
    return t;
}

std::string to_string(Verdict v) {
    switch (v) {
        case Verdict::Yes: return "YES";
        case Verdict::No: return "NO";
        case Verdict::Unknown: return "UNKNOWN";
    }
    return "UNKNOWN";
}

namespace {

bool e_preserves_generators(const Ruleset& rs) {
    for (const auto& r : rs.rules_E) {
        std::vector<int> a, b;
        for (const auto& l : r.lhs.layers) a.push_back(l.gen);
        for (const auto& l : r.rhs.front().diagram.layers) b.push_back(l.gen);
        std::sort(a.begin(), a.end());
        std::sort(b.begin(), b.end());
        if (a != b) return false;
    }
    return true;
}

bool e_is_interchange_only(const Ruleset& rs) { return rs.rules_E.empty(); }

bool has_crossings(const Signature& sig, const Diagram& d) {
    for (const auto& l : d.layers)
        if (sig.gens[l.gen].kind == "cross") return true;
    return false;
}

}  // namespace

std::vector<long> e_invariants(const Ruleset& rs, const Diagram& d) {
    std::vector<long> inv;
    GradingVector g = degree(rs.sig, d);
    inv.push_back(rs.sig.policy == InterchangePolicy::Super ? ((g.p % 2) + 2) % 2 : g.p);
    inv.push_back(g.q);
    if (rs.sig.is_foam()) {
        auto c = order_counters(rs.sig, d);
        inv.insert(inv.end(), c.begin(), c.end());
        auto f = facet_invariant(rs.sig, d);
        inv.insert(inv.end(), f.begin(), f.end());
    }
    if (e_preserves_generators(rs)) {
        std::vector<long> gens(rs.sig.gens.size(), 0);
        for (const auto& l : d.layers) gens[l.gen]++;
        inv.insert(inv.end(), gens.begin(), gens.end());
    }
    return inv;
}

SearchResult bfs_search(const Diagram& start, const ExpandFn& expand, const GoalFn& goal, long budget) {
    SearchResult res;
    std::vector<SearchNode> nodes;
    std::unordered_map<Diagram, int, DiagramHash> index;
    nodes.push_back({start, -1, {}});
    index.emplace(start, 0);
    auto finish = [&](int id) {
        std::vector<int> chain;
        for (int x = id; x >= 0; x = nodes[x].parent) chain.push_back(x);
        std::reverse(chain.begin(), chain.end());
        for (int x : chain) res.path.insert(res.path.end(), nodes[x].moves.begin(), nodes[x].moves.end());
        res.found = true;
        res.diagram = nodes[id].diagram;
        res.states = static_cast<long>(nodes.size());
    };
    if (goal(start)) {
        finish(0);
        return res;
    }
    std::deque<int> queue{0};
    while (!queue.empty()) {
        int cur = queue.front();
        queue.pop_front();
        Diagram here = nodes[cur].diagram;
        for (auto& [mv, nd] : expand(here)) {
            if (index.count(nd)) continue;
            if (static_cast<long>(nodes.size()) >= budget) {
                res.states = static_cast<long>(nodes.size());
                return res;
            }
            int id = static_cast<int>(nodes.size());
            nodes.push_back({nd, cur, mv});
            index.emplace(nodes.back().diagram, id);
            if (goal(nodes[id].diagram)) {
                finish(id);
                return res;
            }
            queue.push_back(id);
        }
    }
    res.exhausted = true;
    res.states = static_cast<long>(nodes.size());
    return res;
}

namespace {

struct Side {
    std::vector<SearchNode> nodes;
    std::unordered_map<Diagram, int, DiagramHash> index;
    std::deque<int> queue;

    std::vector<EMove> path(int id) const {
        std::vector<int> chain;
        for (int x = id; x >= 0; x = nodes[x].parent) chain.push_back(x);
        std::reverse(chain.begin(), chain.end());
        std::vector<EMove> out;
        for (int x : chain) out.insert(out.end(), nodes[x].moves.begin(), nodes[x].moves.end());
        return out;
    }
};

}  // namespace

CongruenceResult congruent_modulo(const Ruleset& rs, const Diagram& d1, const Diagram& d2, long budget) {
    CongruenceResult res;
    res.witness.source = d1;
    res.witness.target = d2;
    const Signature& sig = rs.sig;
    if (d1.obj != d2.obj || d1.source != d2.source || target_word(sig, d1) != target_word(sig, d2)) {
        res.verdict = Verdict::No;
        res.reason = "boundary mismatch";
        return res;
    }
    if (e_invariants(rs, d1) != e_invariants(rs, d2)) {
        res.verdict = Verdict::No;
        res.reason = "invariant mismatch (degree, shadings, circles, dots or generators)";
        return res;
    }
    Tidy t1 = tidy(rs, d1);
    Tidy t2 = tidy(rs, d2);
    auto conclude = [&](const std::vector<EMove>& mid) {
        res.verdict = Verdict::Yes;
        res.witness.moves = t1.moves;
        res.witness.moves.insert(res.witness.moves.end(), mid.begin(), mid.end());
        auto back = inverse_path(t2.moves);
        res.witness.moves.insert(res.witness.moves.end(), back.begin(), back.end());
        res.scalar = path_scalar(res.witness.moves);
        res.witness.scalar = res.scalar;
    };
    if (t1.diagram == t2.diagram) {
        conclude({});
        res.states = 1;
        return res;
    }
    for (int phase = 1; phase <= 2; ++phase) {
        if (phase == 2 && !(has_crossings(sig, t1.diagram) || has_crossings(sig, t2.diagram))) break;
        NeighborOptions opt;
        opt.insertions = phase == 2;
        const size_t size_cap = std::max(t1.diagram.layers.size(), t2.diagram.layers.size()) + 2;
        Side a, b;
        a.nodes.push_back({t1.diagram, -1, {}});
        a.index.emplace(t1.diagram, 0);
        a.queue.push_back(0);
        b.nodes.push_back({t2.diagram, -1, {}});
        b.index.emplace(t2.diagram, 0);
        b.queue.push_back(0);
        long states = 2;
        bool turn_a = true;
        while (!a.queue.empty() || !b.queue.empty()) {
            Side& me = (turn_a && !a.queue.empty()) || b.queue.empty() ? a : b;
            Side& other = &me == &a ? b : a;
            turn_a = !turn_a;
            int cur = me.queue.front();
            me.queue.pop_front();
            Diagram here = me.nodes[cur].diagram;
            for (auto& nb : e_neighbors(rs, here, opt)) {
                if (nb.diagram.layers.size() > size_cap) continue;
                std::vector<EMove> mv{nb.move};
                auto [canon, u] = interchange_canonical(sig, nb.diagram, &mv);
                (void)u;
                if (me.index.count(canon)) continue;
                int id = static_cast<int>(me.nodes.size());
                me.nodes.push_back({canon, cur, mv});
                me.index.emplace(me.nodes.back().diagram, id);
                ++states;
                auto hit = other.index.find(canon);
                if (hit != other.index.end()) {
                    std::vector<EMove> pa = (&me == &a) ? a.path(id) : a.path(hit->second);
                    std::vector<EMove> pb = (&me == &a) ? b.path(hit->second) : b.path(id);
                    auto back = inverse_path(pb);
                    pa.insert(pa.end(), back.begin(), back.end());
                    conclude(pa);
                    res.states = states;
                    return res;
                }
                if (states >= budget) {
                    res.verdict = Verdict::Unknown;
                    res.reason = "budget exhausted";
                    res.states = states;
                    return res;
                }
                me.queue.push_back(id);
            }
        }
        res.states += states;
        budget -= states;
        if (e_is_interchange_only(rs)) {
            res.verdict = Verdict::No;
            res.reason = "interchange class exhausted";
            return res;
        }
    }
    res.verdict = Verdict::Unknown;
    res.reason = "search space exhausted without a connection";
    return res;
}

Diagram replay(const Ruleset& rs, const Diagram& source, const std::vector<EMove>& moves, Unit* scalar) {
    Diagram cur = source;
    Unit u;
    for (const auto& m : moves) {
        apply_move(rs, cur, m, true);
        u *= m.scalar;
    }
    if (scalar) *scalar = u;
    return cur;
}

LoopTrace loop_scalar(const Ruleset& rs, const CongruenceWitness& w) {
    if (!(w.source == w.target)) throw NotALoop("witness source and target differ");
    LoopTrace tr;
    Diagram end = replay(rs, w.source, w.moves, &tr.scalar);
    if (!(end == w.source)) throw NotALoop("replaying the witness does not return to its source");
    const Signature& sig = rs.sig;
    std::unordered_map<std::uint32_t, int> where;
    for (int k = 0; k < static_cast<int>(end.layers.size()); ++k) where[end.layers[k].uid] = k;
    for (int k = 0; k < static_cast<int>(w.source.layers.size()); ++k) {
        if (sig.gens[w.source.layers[k].gen].kind != "dot") continue;
        auto it = where.find(w.source.layers[k].uid);
        int j = it == where.end() ? -1 : it->second;
        tr.dot_map[k] = j;
        if (j != k) tr.identity = false;
    }
    StrandGraph a = strand_graph(sig, w.source);
    StrandGraph b = strand_graph(sig, end);
    for (int s = 0; s < static_cast<int>(a.strands.size()); ++s) {
        const Strand& st = a.strands[s];
        int found = -1;
        if (!st.closed) {
            for (int t = 0; t < static_cast<int>(b.strands.size()); ++t)
                if (!b.strands[t].closed && b.strands[t].bottom == st.bottom && b.strands[t].top == st.top) found = t;
        } else {
            std::set<std::uint32_t> uids;
            for (int lay : st.layers) uids.insert(w.source.layers[lay].uid);
            for (int t = 0; t < static_cast<int>(b.strands.size()) && found < 0; ++t) {
                if (!b.strands[t].closed) continue;
                for (int lay : b.strands[t].layers)
                    if (uids.count(end.layers[lay].uid)) {
                        found = t;
                        break;
                    }
            }
        }
        tr.strand_map[s] = found;
        if (found != s) tr.identity = false;
    }
    return tr;
}

void check_adaptedness(Ruleset& rs, long budget) {
    for (const auto& r : rs.rules_R) {
        for (const auto& t : r.rhs) {
            CongruenceResult c = congruent_modulo(rs, r.lhs, t.diagram, budget);
            if (c.verdict == Verdict::Yes)
                throw AdaptednessError("rule " + r.instance + ": source is congruent to a target monomial");
            if (c.verdict == Verdict::Unknown)
                rs.warnings.push_back("adaptedness of " + r.instance + " is inconclusive within budget");
        }
    }
}

}  // namespace lgr
