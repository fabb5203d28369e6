// Redex search up to E, rewriting steps and normalization.
#include "lgr/rewrite.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>
#include <unordered_set>

#include "lgr/errors.hpp"

namespace lgr {

namespace {

constexpr long kDotSearchBudget = 4000;
constexpr long kStrandSearchBudget = 6000;
constexpr long kLiteralSearchBudget = 4000;

std::vector<long> counters(const Ruleset& rs, const Diagram& d) { return order_counters(rs.sig, d); }

int index_of_uid(const Diagram& d, std::uint32_t uid) {
    for (int k = 0; k < static_cast<int>(d.layers.size()); ++k)
        if (d.layers[k].uid == uid) return k;
    return -1;
}

bool same_uids(const Diagram& a, const Diagram& b) {
    if (a.layers.size() != b.layers.size()) return false;
    for (size_t k = 0; k < a.layers.size(); ++k)
        if (a.layers[k].uid != b.layers[k].uid) return false;
    return true;
}

// Literal occurrence of the source of `pat` in `d` at (layer, anchor).
bool window_matches(const Signature& sig, const Diagram& d, const Diagram& pat, int layer, int anchor,
                    const std::vector<int>* word = nullptr) {
    const int L = static_cast<int>(d.layers.size());
    const int k = static_cast<int>(pat.layers.size());
    if (layer < 0 || layer + k > L) return false;
    for (int j = 0; j < k; ++j) {
        const Layer& a = d.layers[layer + j];
        if (a.gen != pat.layers[j].gen || a.pos != pat.layers[j].pos + anchor) return false;
    }
    std::vector<int> w;
    if (!word) {
        w = d.source;
        for (int t = 0; t < layer; ++t) w = apply_layer(sig, w, d.layers[t]);
        word = &w;
    }
    if (anchor < 0 || anchor + static_cast<int>(pat.source.size()) > static_cast<int>(word->size())) return false;
    return std::equal(pat.source.begin(), pat.source.end(), word->begin() + anchor);
}

}  // namespace

std::string strand_identity(const Strand& s) {
    std::ostringstream os;
    if (s.closed) {
        os << "c" << s.key;
    } else {
        os << "o";
        for (int b : s.bottom) os << "b" << b;
        for (int t : s.top) os << "t" << t;
    }
    return os.str();
}

namespace {

using Expansion = std::vector<std::pair<std::vector<EMove>, Diagram>>;

// All interchange neighbours, each brought to interchange-canonical form.
Expansion swap_expand(const Signature& sig, const Diagram& d) {
    Expansion out;
    const int L = static_cast<int>(d.layers.size());
    for (int k = 0; k + 1 < L; ++k) {
        const int bits = interchange_options(sig, d, k);
        for (int v = 0; v < 2; ++v) {
            if (!(bits >> v & 1)) continue;
            Diagram nd = d;
            EMove m;
            apply_interchange(sig, nd, k, v, &m);
            std::vector<EMove> mv{m};
            auto [c, u] = interchange_canonical(sig, nd, &mv);
            (void)u;
            out.emplace_back(std::move(mv), std::move(c));
        }
    }
    return out;
}

// Moves of a single dot (tracked by uid): interchanges with its neighbours
// and dot slides.
Expansion dot_expand(const Ruleset& rs, const Diagram& d, std::uint32_t uid) {
    Expansion out;
    const int k = index_of_uid(d, uid);
    if (k < 0) return out;
    for (int s : {k - 1, k}) {
        const int bits = interchange_options(rs.sig, d, s);
        for (int v = 0; v < 2; ++v) {
            if (!(bits >> v & 1)) continue;
            Diagram nd = d;
            EMove m;
            apply_interchange(rs.sig, nd, s, v, &m);
            out.push_back({{m}, std::move(nd)});
        }
    }
    for (int r = 0; r < static_cast<int>(rs.rules_E.size()); ++r) {
        const RewriteRule& rule = rs.rules_E[r];
        if (rule.move_kind != MoveKind::DotSlide) continue;
        for (int dir : {1, -1}) {
            const Diagram& pat = dir > 0 ? rule.lhs : rule.rhs.front().diagram;
            if (pat.layers.size() != 1 || d.layers[k].gen != pat.layers[0].gen) continue;
            const int anchor = d.layers[k].pos - pat.layers[0].pos;
            auto mv = rule_move_at(rs, d, r, dir, k, anchor);
            if (!mv) continue;
            Diagram nd = d;
            apply_move(rs, nd, *mv, false);
            out.push_back({{*mv}, std::move(nd)});
        }
    }
    return out;
}

// Snake insertions on letters of the given strands.
Expansion snake_expand(const Ruleset& rs, const Diagram& d, const std::set<std::string>& strands) {
    Expansion out;
    StrandGraph sg = strand_graph(rs.sig, d);
    const int L = static_cast<int>(d.layers.size());
    for (int r = 0; r < static_cast<int>(rs.rules_E.size()); ++r) {
        const RewriteRule& rule = rs.rules_E[r];
        if (rule.move_kind != MoveKind::Zigzag || rule.lhs.source.size() != 1) continue;
        for (int t = 0; t <= L; ++t) {
            const auto& w = sg.words[t];
            for (int x = 0; x < static_cast<int>(w.size()); ++x) {
                if (w[x] != rule.lhs.source[0]) continue;
                if (!strands.count(strand_identity(sg.strands[sg.strand_at(t, x)]))) continue;
                auto mv = rule_move_at(rs, d, r, -1, t, x);
                if (!mv) continue;
                Diagram nd = d;
                apply_move(rs, nd, *mv, false);
                std::vector<EMove> path{*mv};
                auto [c, u] = interchange_canonical(rs.sig, nd, &path);
                (void)u;
                out.emplace_back(std::move(path), std::move(c));
            }
        }
    }
    return out;
}

struct Candidate {
    int rule = -1;
    int rank = 0;
    int layer = 0;
    int anchor = 0;
    MatchKind kind = MatchKind::Literal;
    std::vector<std::uint32_t> uids;  // dots or bubble generators
    std::string a, b;                 // strand identities
    bool admissible = true;
    std::optional<Redex> ready;       // pre-aligned (literal matcher)
};

Redex make_redex(const Ruleset& rs, const Candidate& c, const Diagram& host, const std::vector<EMove>& path,
                 const Diagram& aligned, int layer, int anchor) {
    Redex r;
    r.rule = c.rule;
    r.rule_name = rs.rules_R[c.rule].name;
    r.instance = rs.rules_R[c.rule].instance;
    r.host = host;
    r.alignment = path;
    r.scalar = path_scalar(path);
    r.aligned = aligned;
    r.layer = layer;
    r.anchor = anchor;
    r.host_layer = c.layer;
    r.host_anchor = c.anchor;
    r.uids = c.uids;
    if (!c.a.empty()) r.strands = {c.a, c.b};
    r.admissible = c.admissible;
    return r;
}

std::vector<int> rules_with(const Ruleset& rs, MatchKind k) {
    std::vector<int> out;
    for (int r = 0; r < static_cast<int>(rs.rules_R.size()); ++r)
        if (rs.rules_R[r].matcher == k) out.push_back(r);
    return out;
}

// ---- dot pairs -------------------------------------------------------------

// Union of faces reachable by a dot of colour j through dot slides.
std::vector<int> dot_regions(const Signature& sig, const StrandGraph& sg, int j) {
    std::vector<int> parent(sg.num_faces);
    for (int f = 0; f < sg.num_faces; ++f) parent[f] = f;
    std::function<int(int)> find = [&](int x) { return parent[x] == x ? x : parent[x] = find(parent[x]); };
    for (size_t t = 0; t < sg.words.size(); ++t) {
        const auto& w = sg.words[t];
        for (int x = 0; x < static_cast<int>(w.size()); ++x) {
            const int c = sig.letters[w[x]].colour;
            if (c == j || c == j - 1) continue;
            parent[find(sg.face_at(static_cast<int>(t), x))] = find(sg.face_at(static_cast<int>(t), x + 1));
        }
    }
    std::vector<int> out(sg.num_faces);
    for (int f = 0; f < sg.num_faces; ++f) out[f] = find(f);
    return out;
}

void dot_pair_candidates(const Ruleset& rs, const Diagram& d, const StrandGraph& sg, std::vector<Candidate>& out) {
    for (int r : rules_with(rs, MatchKind::DotPair)) {
        const int j = rs.rules_R[r].colour();
        std::vector<int> region = dot_regions(rs.sig, sg, j);
        std::vector<const DotInfo*> dots;
        for (const auto& dot : sg.dots)
            if (dot.colour == j) dots.push_back(&dot);
        for (size_t x = 0; x < dots.size(); ++x) {
            for (size_t y = x + 1; y < dots.size(); ++y) {
                if (region[dots[x]->face] != region[dots[y]->face]) continue;
                Candidate c;
                c.rule = r;
                c.rank = rs.priority_of(rs.rules_R[r].name);
                c.kind = MatchKind::DotPair;
                c.layer = dots[x]->layer;
                c.anchor = d.layers[dots[x]->layer].pos;
                c.uids = {d.layers[dots[x]->layer].uid, d.layers[dots[y]->layer].uid};
                out.push_back(std::move(c));
            }
        }
    }
}

std::optional<Redex> align_dot_pair(const Ruleset& rs, const Diagram& host, const Candidate& c) {
    const Diagram& pat = rs.rules_R[c.rule].lhs;
    const std::uint32_t u = c.uids[0], v = c.uids[1];
    int layer = -1, anchor = 0;
    auto goal = [&](const Diagram& d) {
        const int ku = index_of_uid(d, u), kv = index_of_uid(d, v);
        if (std::abs(ku - kv) != 1 || d.layers[ku].pos != d.layers[kv].pos) return false;
        layer = std::min(ku, kv);
        anchor = d.layers[ku].pos - pat.layers[0].pos;
        return window_matches(rs.sig, d, pat, layer, anchor);
    };
    auto expand = [&](const Diagram& d) { return dot_expand(rs, d, u); };
    SearchResult sr = bfs_search(host, expand, goal, kDotSearchBudget);
    if (!sr.found) return std::nullopt;
    goal(sr.diagram);
    return make_redex(rs, c, host, sr.path, sr.diagram, layer, anchor);
}

// ---- dot next to a strand ---------------------------------------------------

void dot_strand_candidates(const Ruleset& rs, const Diagram& d, const StrandGraph& sg, std::vector<Candidate>& out) {
    for (int r : rules_with(rs, MatchKind::DotStrand)) {
        const int i = rs.rules_R[r].colour();
        const int dot_gen = rs.rules_R[r].lhs.layers[0].gen;
        // Faces bordered by an i-strand, up to dot slides of the i-dot.
        std::vector<int> region = dot_regions(rs.sig, sg, i);
        std::set<int> faces;
        for (size_t t = 0; t < sg.words.size(); ++t) {
            const auto& w = sg.words[t];
            for (int x = 0; x < static_cast<int>(w.size()); ++x) {
                if (rs.sig.letters[w[x]].colour != i) continue;
                faces.insert(region[sg.face_at(static_cast<int>(t), x)]);
                faces.insert(region[sg.face_at(static_cast<int>(t), x + 1)]);
            }
        }
        for (const auto& dot : sg.dots) {
            if (d.layers[dot.layer].gen != dot_gen || !faces.count(region[dot.face])) continue;
            Candidate c;
            c.rule = r;
            c.rank = rs.priority_of(rs.rules_R[r].name);
            c.kind = MatchKind::DotStrand;
            c.layer = dot.layer;
            c.anchor = d.layers[dot.layer].pos;
            c.uids = {d.layers[dot.layer].uid};
            out.push_back(std::move(c));
        }
    }
}

std::optional<Redex> align_dot_strand(const Ruleset& rs, const Diagram& host, const Candidate& c) {
    const RewriteRule& rule = rs.rules_R[c.rule];
    const Diagram& pat = rule.lhs;
    const int strand_letter = pat.source.at(0);
    const int i = rule.colour();
    const int other_letter = rs.sig.is_foam() ? rs.sig.foam_letter(i, 1 - rs.sig.letters[strand_letter].orient) : -1;
    const std::uint32_t u = c.uids[0];
    std::vector<EMove> tail;
    Diagram finished;
    int layer = -1, anchor = 0;
    auto goal = [&](const Diagram& d) {
        const int t = index_of_uid(d, u);
        const int g = d.layers[t].pos;
        std::vector<int> w = d.source;
        for (int s = 0; s < t; ++s) w = apply_layer(rs.sig, w, d.layers[s]);
        const int anc = g - pat.layers[0].pos;
        if (window_matches(rs.sig, d, pat, t, anc, &w)) {
            tail.clear();
            finished = d;
            layer = t;
            anchor = anc;
            return true;
        }
        // The strand sits on the other side: bend it with a snake first.
        if (other_letter < 0 || g < 1 || w[g - 1] != other_letter) return false;
        for (int e = 0; e < static_cast<int>(rs.rules_E.size()); ++e) {
            const RewriteRule& z = rs.rules_E[e];
            if (z.move_kind != MoveKind::Zigzag || z.lhs.source != std::vector<int>{other_letter}) continue;
            auto ins = rule_move_at(rs, d, e, -1, t + 1, g - 1);
            if (!ins) continue;
            Diagram nd = d;
            apply_move(rs, nd, *ins, false);
            for (int v = 0; v < 2; ++v) {
                Diagram sd = nd;
                EMove sw;
                if (!apply_interchange(rs.sig, sd, t, v, &sw)) continue;
                const int nt = index_of_uid(sd, u);
                const int na = sd.layers[nt].pos - pat.layers[0].pos;
                if (!window_matches(rs.sig, sd, pat, nt, na)) continue;
                tail = {*ins, sw};
                finished = sd;
                layer = nt;
                anchor = na;
                return true;
            }
        }
        return false;
    };
    auto expand = [&](const Diagram& d) { return dot_expand(rs, d, u); };
    SearchResult sr = bfs_search(host, expand, goal, kDotSearchBudget);
    if (!sr.found) return std::nullopt;
    goal(sr.diagram);
    std::vector<EMove> path = sr.path;
    path.insert(path.end(), tail.begin(), tail.end());
    return make_redex(rs, c, host, path, finished, layer, anchor);
}

// ---- bubbles ----------------------------------------------------------------

struct BubbleShape {
    int cup = -1, cap = -1;
    std::vector<int> side;  // per block layer: 0 left, 1 cup, 2 inside, 3 cap, 4 right
    std::vector<int> inside;
};

bool is_cupish(const Generator& g) { return g.n_in() == 0 && g.n_out() == 2; }
bool is_capish(const Generator& g) { return g.n_in() == 2 && g.n_out() == 0; }

std::optional<BubbleShape> bubble_shape(const Signature& sig, const Diagram& d, int cup, int cap) {
    const Generator& gc = sig.gens[d.layers[cup].gen];
    const Generator& gk = sig.gens[d.layers[cap].gen];
    if (!is_cupish(gc) || !is_capish(gk)) return std::nullopt;
    BubbleShape b;
    b.cup = cup;
    b.cap = cap;
    int x = d.layers[cup].pos;  // left leg
    b.side.push_back(1);
    for (int t = cup + 1; t < cap; ++t) {
        const Layer& l = d.layers[t];
        const Generator& g = sig.gens[l.gen];
        const int n = g.n_in(), m = g.n_out();
        if (l.pos + n <= x) {
            b.side.push_back(0);
            x += m - n;
        } else if (l.pos >= x + 2) {
            b.side.push_back(4);
        } else if (n == 0 && m == 0 && l.pos == x + 1) {
            b.side.push_back(2);
            b.inside.push_back(t);
        } else {
            return std::nullopt;
        }
    }
    if (d.layers[cap].pos != x) return std::nullopt;
    b.side.push_back(3);
    return b;
}

void bubble_candidates(const Ruleset& rs, const Diagram& d, const StrandGraph& sg, std::vector<Candidate>& out) {
    std::vector<int> rules = rules_with(rs, MatchKind::Bubble);
    if (rules.empty()) return;
    for (const auto& s : sg.strands) {
        if (!s.closed || s.layers.size() != 2) continue;
        auto shape = bubble_shape(rs.sig, d, s.layers[0], s.layers[1]);
        if (!shape) continue;
        const int i = s.colour;
        const bool ccw = rs.sig.gens[d.layers[shape->cup].gen].kind == "rcup";
        int ci = 0, cnext = 0;
        for (int t : shape->inside) {
            const int c = rs.sig.gens[d.layers[t].gen].colour;
            if (c == i) ++ci;
            if (c == i + 1) ++cnext;
        }
        if ((ccw && ci > 0) || ci + cnext > 1) continue;
        for (int r : rules) {
            const RewriteRule& rule = rs.rules_R[r];
            if (rule.colour() != i) continue;
            const Diagram& pat = rule.lhs;
            if (pat.layers.front().gen != d.layers[shape->cup].gen || pat.layers.back().gen != d.layers[shape->cap].gen)
                continue;
            const int want_dots = static_cast<int>(pat.layers.size()) - 2;
            if (want_dots != ci + cnext) continue;
            Candidate c;
            c.rule = r;
            c.rank = rs.priority_of(rule.name);
            c.kind = MatchKind::Bubble;
            c.layer = shape->cup;
            c.anchor = d.layers[shape->cup].pos;
            c.uids = {d.layers[shape->cup].uid, d.layers[shape->cap].uid};
            out.push_back(std::move(c));
        }
    }
}

std::optional<Redex> align_bubble(const Ruleset& rs, const Diagram& host, const Candidate& c) {
    const RewriteRule& rule = rs.rules_R[c.rule];
    const int i = rule.colour();
    Diagram d = host;
    std::vector<EMove> path;
    // Slide foreign dots out across the left leg.
    while (true) {
        const int cup = index_of_uid(d, c.uids[0]), cap = index_of_uid(d, c.uids[1]);
        auto shape = bubble_shape(rs.sig, d, cup, cap);
        if (!shape) return std::nullopt;
        int foreign = -1;
        for (int t : shape->inside) {
            const int col = rs.sig.gens[d.layers[t].gen].colour;
            if (col != i && col != i + 1) {
                foreign = t;
                break;
            }
        }
        if (foreign < 0) break;
        bool moved = false;
        for (int e = 0; e < static_cast<int>(rs.rules_E.size()) && !moved; ++e) {
            const RewriteRule& z = rs.rules_E[e];
            if (z.move_kind != MoveKind::DotSlide) continue;
            const Diagram& pat = z.rhs.front().diagram;
            if (pat.layers.size() != 1 || pat.layers[0].gen != d.layers[foreign].gen) continue;
            auto mv = rule_move_at(rs, d, e, -1, foreign, d.layers[foreign].pos - pat.layers[0].pos);
            if (!mv) continue;
            apply_move(rs, d, *mv, false);
            path.push_back(*mv);
            moved = true;
        }
        if (!moved) return std::nullopt;
    }
    const int cup = index_of_uid(d, c.uids[0]), cap = index_of_uid(d, c.uids[1]);
    auto shape = bubble_shape(rs.sig, d, cup, cap);
    if (!shape) return std::nullopt;
    std::vector<int> key, variant;
    for (int s : shape->side) {
        key.push_back(s == 0 || s == 4 ? 0 : s);
        variant.push_back(s == 4 ? 1 : 0);
    }
    bool swapped = true;
    while (swapped) {
        swapped = false;
        for (int j = 0; j + 1 < static_cast<int>(key.size()); ++j) {
            if (key[j] <= key[j + 1]) continue;
            EMove m;
            if (!apply_interchange(rs.sig, d, cup + j, variant[j + 1], &m)) return std::nullopt;
            path.push_back(m);
            std::swap(key[j], key[j + 1]);
            std::swap(variant[j], variant[j + 1]);
            swapped = true;
        }
    }
    const int at = index_of_uid(d, c.uids[0]);
    const int anchor = d.layers[at].pos - rule.lhs.layers[0].pos;
    if (!window_matches(rs.sig, d, rule.lhs, at, anchor)) return std::nullopt;
    return make_redex(rs, c, host, path, d, at, anchor);
}

// ---- necks and squeezes -------------------------------------------------------

// i-strands with a letter on the boundary of each i-unshaded face, keyed by face.
std::map<int, std::set<int>> face_borders(const Signature& sig, const StrandGraph& sg, int i, bool need_next_clear) {
    std::map<int, std::set<int>> out;
    for (size_t t = 0; t < sg.words.size(); ++t) {
        const auto& w = sg.words[t];
        const int ts = static_cast<int>(t);
        for (int g = 0; g <= static_cast<int>(w.size()); ++g) {
            const unsigned m = sig.masks[sg.object_at(ts, g)];
            if (m >> i & 1u) continue;
            if (need_next_clear && (m >> (i + 1) & 1u)) continue;
            const int f = sg.face_at(ts, g);
            if (g >= 1 && sig.letters[w[g - 1]].colour == i) out[f].insert(sg.strand_at(ts, g - 1));
            if (g < static_cast<int>(w.size()) && sig.letters[w[g]].colour == i) out[f].insert(sg.strand_at(ts, g));
        }
    }
    return out;
}

// Lowest slice and position where a strand appears (for ordering).
std::pair<int, int> first_occurrence(const StrandGraph& sg, int strand) {
    for (size_t t = 0; t < sg.words.size(); ++t)
        for (int x = 0; x < static_cast<int>(sg.words[t].size()); ++x)
            if (sg.strand_at(static_cast<int>(t), x) == strand) return {static_cast<int>(t), x};
    return {0, 0};
}

void neck_candidates(const Ruleset& rs, const Diagram&, const StrandGraph& sg, RedexPolicy policy,
                     std::vector<Candidate>& out) {
    for (int r : rules_with(rs, MatchKind::Neck)) {
        const int i = rs.rules_R[r].colour();
        std::set<std::pair<std::string, std::string>> seen;
        for (const auto& [face, ss] : face_borders(rs.sig, sg, i, false)) {
            std::vector<int> v(ss.begin(), ss.end());
            for (size_t x = 0; x < v.size(); ++x) {
                for (size_t y = x; y < v.size(); ++y) {
                    const bool same = x == y;
                    if (same && (policy == RedexPolicy::Admissible ||
                                 rs.rules_R[r].admissibility != Admissibility::DistinctStrands))
                        continue;
                    std::string a = strand_identity(sg.strands[v[x]]), b = strand_identity(sg.strands[v[y]]);
                    if (a > b) std::swap(a, b);
                    if (!seen.insert({a, b}).second) continue;
                    Candidate c;
                    c.rule = r;
                    c.rank = rs.priority_of(rs.rules_R[r].name);
                    c.kind = MatchKind::Neck;
                    auto [lt, lx] = std::min(first_occurrence(sg, v[x]), first_occurrence(sg, v[y]));
                    c.layer = lt;
                    c.anchor = lx;
                    c.a = a;
                    c.b = b;
                    c.admissible = !same || rs.rules_R[r].admissibility != Admissibility::DistinctStrands;
                    out.push_back(std::move(c));
                }
            }
        }
    }
}

void squeeze_candidates(const Ruleset& rs, const Diagram&, const StrandGraph& sg, RedexPolicy policy,
                        std::vector<Candidate>& out) {
    for (int r : rules_with(rs, MatchKind::Squeeze)) {
        const int i = rs.rules_R[r].colour();
        auto borders = face_borders(rs.sig, sg, i, true);
        // Faces F adjacent across (i+1)-letters to an (i+1)-shaded face B.
        std::map<int, std::set<int>> around;
        for (size_t t = 0; t < sg.words.size(); ++t) {
            const auto& w = sg.words[t];
            const int ts = static_cast<int>(t);
            for (int x = 0; x < static_cast<int>(w.size()); ++x) {
                if (rs.sig.letters[w[x]].colour != i + 1) continue;
                const int o1 = sg.object_at(ts, x);
                const int f1 = sg.face_at(ts, x), f2 = sg.face_at(ts, x + 1);
                if (rs.sig.masks[o1] >> (i + 1) & 1u) around[f1].insert(f2);
                else around[f2].insert(f1);
            }
        }
        std::set<std::pair<std::string, std::string>> seen;
        for (const auto& [bface, fs] : around) {
            for (int f1 : fs) {
                for (int f2 : fs) {
                    auto i1 = borders.find(f1), i2 = borders.find(f2);
                    if (i1 == borders.end() || i2 == borders.end()) continue;
                    for (int sa : i1->second) {
                        for (int sb : i2->second) {
                            const bool same = sa == sb;
                            if (same && (policy == RedexPolicy::Admissible ||
                                         rs.rules_R[r].admissibility != Admissibility::DistinctStrands))
                                continue;
                            std::string a = strand_identity(sg.strands[sa]), b = strand_identity(sg.strands[sb]);
                            if (!seen.insert({a, b}).second) continue;
                            Candidate c;
                            c.rule = r;
                            c.rank = rs.priority_of(rs.rules_R[r].name);
                            c.kind = MatchKind::Squeeze;
                            auto [lt, lx] = std::min(first_occurrence(sg, sa), first_occurrence(sg, sb));
                            c.layer = lt;
                            c.anchor = lx;
                            c.a = a;
                            c.b = b;
                            c.admissible = !same || rs.rules_R[r].admissibility != Admissibility::DistinctStrands;
                            out.push_back(std::move(c));
                        }
                    }
                }
            }
        }
    }
}

// Finds a slice where the rule source appears with its outer letters on the
// candidate strands.  Neck candidates are unordered; squeeze candidates ordered.
std::optional<Redex> align_strands(const Ruleset& rs, const Diagram& host, const Candidate& c) {
    const RewriteRule& rule = rs.rules_R[c.rule];
    const Diagram& pat = rule.lhs;
    const int width = static_cast<int>(pat.source.size());
    const bool ordered = c.kind == MatchKind::Squeeze;
    int layer = -1, anchor = 0;
    auto goal = [&](const Diagram& d) {
        StrandGraph sg = strand_graph(rs.sig, d);
        for (size_t t = 0; t < sg.words.size(); ++t) {
            const auto& w = sg.words[t];
            for (int g = 0; g + width <= static_cast<int>(w.size()); ++g) {
                if (!std::equal(pat.source.begin(), pat.source.end(), w.begin() + g)) continue;
                const std::string x = strand_identity(sg.strands[sg.strand_at(static_cast<int>(t), g)]);
                const std::string y = strand_identity(sg.strands[sg.strand_at(static_cast<int>(t), g + width - 1)]);
                const bool hit = (x == c.a && y == c.b) || (!ordered && x == c.b && y == c.a);
                if (!hit) continue;
                layer = static_cast<int>(t);
                anchor = g;
                return true;
            }
        }
        return false;
    };
    auto [start, su] = interchange_canonical(rs.sig, host);
    (void)su;
    std::vector<EMove> lead;
    interchange_canonical(rs.sig, host, &lead);
    auto expand = [&](const Diagram& d) { return swap_expand(rs.sig, d); };
    SearchResult sr = bfs_search(start, expand, goal, kStrandSearchBudget);
    if (!sr.found && sr.exhausted) {
        // One snake on either strand, then interchanges again.
        std::set<std::string> ids{c.a, c.b};
        for (auto& [pre, nd] : snake_expand(rs, start, ids)) {
            SearchResult s2 = bfs_search(nd, expand, goal, kStrandSearchBudget);
            if (s2.found) {
                sr = s2;
                sr.path.insert(sr.path.begin(), pre.begin(), pre.end());
                break;
            }
        }
    }
    if (!sr.found) return std::nullopt;
    goal(sr.diagram);
    std::vector<EMove> path = lead;
    path.insert(path.end(), sr.path.begin(), sr.path.end());
    return make_redex(rs, c, host, path, sr.diagram, layer, anchor);
}

// ---- literal rules (generic signatures) ------------------------------------------

void literal_candidates(const Ruleset& rs, const Diagram& host, std::vector<Candidate>& out) {
    std::vector<int> rules = rules_with(rs, MatchKind::Literal);
    if (rules.empty()) return;
    std::set<std::pair<int, std::vector<std::uint32_t>>> seen;
    auto collect = [&](const Diagram& d, const std::vector<EMove>& path) {
        const std::vector<std::vector<int>> sl = slices(rs.sig, d);
        for (int r : rules) {
            const Diagram& pat = rs.rules_R[r].lhs;
            const int k = static_cast<int>(pat.layers.size());
            if (k == 0) continue;
            for (int t = 0; t + k <= static_cast<int>(d.layers.size()); ++t) {
                if (d.layers[t].gen != pat.layers[0].gen) continue;
                const int anchor = d.layers[t].pos - pat.layers[0].pos;
                if (!window_matches(rs.sig, d, pat, t, anchor, &sl[t])) continue;
                std::vector<std::uint32_t> uids;
                for (int j = 0; j < k; ++j) uids.push_back(d.layers[t + j].uid);
                std::vector<std::uint32_t> key = uids;
                std::sort(key.begin(), key.end());
                if (!seen.insert({r, key}).second) continue;
                Candidate c;
                c.rule = r;
                c.rank = rs.priority_of(rs.rules_R[r].name);
                c.kind = MatchKind::Literal;
                c.uids = uids;
                int lo = static_cast<int>(host.layers.size());
                for (auto u : uids) lo = std::min(lo, index_of_uid(host, u));
                c.layer = lo;
                c.anchor = anchor;
                c.ready = make_redex(rs, c, host, path, d, t, anchor);
                out.push_back(std::move(c));
            }
        }
        return false;
    };
    collect(host, {});
    auto expand = [&](const Diagram& d) {
        Expansion ex;
        const int L = static_cast<int>(d.layers.size());
        for (int k = 0; k + 1 < L; ++k) {
            const int bits = interchange_options(rs.sig, d, k);
            for (int v = 0; v < 2; ++v) {
                if (!(bits >> v & 1)) continue;
                Diagram nd = d;
                EMove m;
                apply_interchange(rs.sig, nd, k, v, &m);
                ex.push_back({{m}, std::move(nd)});
            }
        }
        return ex;
    };
    // Breadth-first over the interchange class, recording paths.
    std::vector<SearchNode> nodes{{host, -1, {}}};
    std::unordered_map<Diagram, int, DiagramHash> index{{host, 0}};
    for (size_t q = 0; q < nodes.size() && static_cast<long>(nodes.size()) < kLiteralSearchBudget; ++q) {
        Diagram here = nodes[q].diagram;
        for (auto& [mv, nd] : expand(here)) {
            if (index.count(nd)) continue;
            const int id = static_cast<int>(nodes.size());
            nodes.push_back({nd, static_cast<int>(q), mv});
            index.emplace(nd, id);
            std::vector<EMove> path;
            for (int x = id; x > 0; x = nodes[x].parent)
                path.insert(path.begin(), nodes[x].moves.begin(), nodes[x].moves.end());
            collect(nodes[id].diagram, path);
        }
    }
}

std::optional<Redex> align(const Ruleset& rs, const Diagram& host, const Candidate& c) {
    switch (c.kind) {
        case MatchKind::Literal: return c.ready;
        case MatchKind::DotPair: return align_dot_pair(rs, host, c);
        case MatchKind::DotStrand: return align_dot_strand(rs, host, c);
        case MatchKind::Bubble: return align_bubble(rs, host, c);
        case MatchKind::Neck:
        case MatchKind::Squeeze: return align_strands(rs, host, c);
    }
    return std::nullopt;
}

std::vector<Candidate> candidates(const Ruleset& rs, const Diagram& d, RedexPolicy policy) {
    std::vector<Candidate> out;
    literal_candidates(rs, d, out);
    bool need_graph = false;
    for (const auto& r : rs.rules_R)
        if (r.matcher != MatchKind::Literal) need_graph = true;
    if (need_graph) {
        StrandGraph sg = strand_graph(rs.sig, d);
        dot_pair_candidates(rs, d, sg, out);
        dot_strand_candidates(rs, d, sg, out);
        bubble_candidates(rs, d, sg, out);
        neck_candidates(rs, d, sg, policy, out);
        squeeze_candidates(rs, d, sg, policy, out);
    }
    return out;
}

void order_candidates(std::vector<Candidate>& cs, Strategy s, std::mt19937_64* rng) {
    auto key = [&](const Candidate& c) {
        switch (s) {
            case Strategy::Position: return std::make_tuple(c.layer, c.anchor, c.rank);
            case Strategy::Reverse: return std::make_tuple(-c.rank, -c.layer, -c.anchor);
            default: return std::make_tuple(c.rank, c.layer, c.anchor);
        }
    };
    std::stable_sort(cs.begin(), cs.end(), [&](const Candidate& a, const Candidate& b) { return key(a) < key(b); });
    if (s == Strategy::Random) {
        std::mt19937_64 local(0);
        std::shuffle(cs.begin(), cs.end(), rng ? *rng : local);
    }
}

Diagram substitute(const Signature& sig, const Diagram& d, int layer, int width, int anchor, const Diagram& rep) {
    Diagram out;
    out.obj = d.obj;
    out.source = d.source;
    out.layers.assign(d.layers.begin(), d.layers.begin() + layer);
    std::vector<char> used(width, 0);
    for (const auto& nl : rep.layers) {
        Layer x{nl.gen, nl.pos + anchor, 0};
        for (int j = 0; j < width; ++j) {
            if (!used[j] && sig.gens[d.layers[layer + j].gen].kind == sig.gens[nl.gen].kind) {
                used[j] = 1;
                x.uid = d.layers[layer + j].uid;
                break;
            }
        }
        if (x.uid == 0) x.uid = fresh_uid();
        out.layers.push_back(x);
    }
    out.layers.insert(out.layers.end(), d.layers.begin() + layer + width, d.layers.end());
    return out;
}

bool lex_greater(const std::vector<long>& a, const std::vector<long>& b) { return a > b; }

bool class_equal(const Ruleset& rs, const Diagram& a, const Diagram& b, long budget, Unit* u, bool* unknown) {
    if (a == b) {
        if (u) *u = Unit();
        return true;
    }
    if (e_invariants(rs, a) != e_invariants(rs, b)) return false;
    CongruenceResult c = congruent_modulo(rs, a, b, budget);
    if (c.verdict == Verdict::Unknown && unknown) *unknown = true;
    if (c.verdict != Verdict::Yes) return false;
    if (u) *u = c.scalar;
    return true;
}

}  // namespace

Vector Vector::monomial(const Diagram& d, const RingElement& c) {
    Vector v;
    if (!c.is_zero()) v.terms.push_back({c, d});
    return v;
}

std::string Vector::to_string(const Signature& sig) const {
    if (terms.empty()) return "0";
    std::string out;
    for (size_t k = 0; k < terms.size(); ++k) {
        std::string c = terms[k].coeff.to_string();
        const bool compound = c.find_first_of("+-", 1) != std::string::npos;
        if (compound) c = "(" + c + ")";
        std::string body = diagram_brief(sig, terms[k].diagram);
        std::string piece = c == "1" ? body : (c == "-1" ? "-" + body : c + "*" + body);
        if (k == 0) {
            out = piece;
        } else if (piece[0] == '-') {
            out += " - " + piece.substr(1);
        } else {
            out += " + " + piece;
        }
    }
    return out;
}

void add_term(const Ruleset& rs, Vector& v, const RingElement& c, const Diagram& d, long budget) {
    if (c.is_zero()) return;
    Tidy t = tidy(rs, d);
    RingElement coeff = c * RingElement(t.scalar);
    for (size_t k = 0; k < v.terms.size(); ++k) {
        Unit u;
        bool unknown = false;
        const bool structural = v.terms[k].diagram == t.diagram;
        if (structural || class_equal(rs, t.diagram, v.terms[k].diagram, budget, &u, &unknown)) {
            if (!structural) ++v.congruence_merges;
            v.terms[k].coeff += coeff * RingElement(structural ? Unit() : u);
            if (v.terms[k].coeff.is_zero()) v.terms.erase(v.terms.begin() + static_cast<long>(k));
            return;
        }
        if (unknown) ++v.unknown_pairs;
    }
    v.terms.push_back({coeff, t.diagram});
}

Vector canonicalize(const Ruleset& rs, const Vector& v, long budget) {
    Vector out;
    out.merge_budget = budget;
    for (const auto& t : v.terms) add_term(rs, out, t.coeff, t.diagram, budget);
    return out;
}

Strategy strategy_from_string(const std::string& s) {
    if (s == "priority") return Strategy::Priority;
    if (s == "position") return Strategy::Position;
    if (s == "reverse") return Strategy::Reverse;
    if (s == "random") return Strategy::Random;
    throw ParseError("unknown strategy '" + s + "' (priority, position, reverse, random)");
}

std::string to_string(Strategy s) {
    switch (s) {
        case Strategy::Priority: return "priority";
        case Strategy::Position: return "position";
        case Strategy::Reverse: return "reverse";
        case Strategy::Random: return "random";
    }
    return "priority";
}

std::vector<Redex> find_redexes(const Ruleset& rs, const Diagram& d, RedexPolicy policy) {
    std::vector<Candidate> cs = candidates(rs, d, policy);
    order_candidates(cs, Strategy::Priority, nullptr);
    std::vector<Redex> out;
    for (const auto& c : cs) {
        auto r = align(rs, d, c);
        if (r) out.push_back(std::move(*r));
    }
    return out;
}

std::optional<Redex> choose_redex(const Ruleset& rs, const Diagram& d, Strategy strategy, std::mt19937_64* rng) {
    std::vector<Candidate> cs = candidates(rs, d, RedexPolicy::Admissible);
    order_candidates(cs, strategy, rng);
    for (const auto& c : cs) {
        auto r = align(rs, d, c);
        if (r) return r;
    }
    return std::nullopt;
}

std::vector<Term> rewrite_aligned(const Ruleset& rs, const Redex& r) {
    const RewriteRule& rule = rs.rules_R.at(r.rule);
    std::vector<Term> out;
    const int width = static_cast<int>(rule.lhs.layers.size());
    for (const auto& t : rule.rhs) {
        Diagram nd = substitute(rs.sig, r.aligned, r.layer, width, r.anchor, t.diagram);
        if (!is_legal(rs.sig, nd))
            throw IllegalDiagram("rule " + rule.instance + " produced an illegal diagram");
        out.push_back({t.coeff, std::move(nd)});
    }
    return out;
}

RewriteStep apply_step(const Ruleset& rs, const Vector& v, std::size_t index, const Redex& r, long merge_budget,
                       bool merge) {
    if (index >= v.terms.size()) throw StaleRedex("term index " + std::to_string(index) + " is out of range");
    const Diagram& host = v.terms[index].diagram;
    if (!(host == r.host) || !same_uids(host, r.host))
        throw StaleRedex("redex for " + r.instance + " was computed on a different diagram");
    {
        Unit u;
        Diagram check = replay(rs, host, r.alignment, &u);
        if (!(check == r.aligned) || !(u == r.scalar))
            throw StaleRedex("alignment witness of " + r.instance + " does not replay");
        if (!window_matches(rs.sig, r.aligned, rs.rules_R.at(r.rule).lhs, r.layer, r.anchor))
            throw StaleRedex("rule source of " + r.instance + " is not at the recorded location");
    }
    RewriteStep st;
    st.redex = r;
    st.index = index;
    st.coeff = v.terms[index].coeff;
    st.before = v;
    std::vector<Term> produced = rewrite_aligned(rs, r);
    const std::vector<long> hc = counters(rs, host);
    for (const auto& t : produced)
        if (!lex_greater(hc, counters(rs, t.diagram))) st.decreasing = false;
    for (size_t k = 0; k < v.terms.size(); ++k) {
        if (k == index) continue;
        if (class_equal(rs, host, v.terms[k].diagram, merge_budget, nullptr, nullptr)) st.positive = false;
    }
    Vector after;
    after.merge_budget = merge_budget;
    for (size_t k = 0; k < v.terms.size(); ++k)
        if (k != index) after.terms.push_back(v.terms[k]);
    const RingElement lead = st.coeff * RingElement(r.scalar);
    for (const auto& t : produced) {
        if (merge) {
            add_term(rs, after, lead * t.coeff, t.diagram, merge_budget);
        } else {
            RingElement c = lead * t.coeff;
            if (!c.is_zero()) after.terms.push_back({c, t.diagram});
        }
    }
    st.after = std::move(after);
    return st;
}

bool is_normal(const Ruleset& rs, const Diagram& d) { return !choose_redex(rs, d, Strategy::Priority).has_value(); }

NormalizeResult normalize(const Ruleset& rs, const Vector& v, const NormalizeOptions& opt) {
    NormalizeResult res;
    std::mt19937_64 rng(opt.seed);
    Vector cur = canonicalize(rs, v, opt.merge_budget);
    std::unordered_set<Diagram, DiagramHash> normal;
    while (true) {
        std::vector<size_t> order(cur.terms.size());
        for (size_t k = 0; k < order.size(); ++k) order[k] = k;
        if (opt.strategy == Strategy::Random) std::shuffle(order.begin(), order.end(), rng);
        bool stepped = false;
        for (size_t k : order) {
            const Diagram& d = cur.terms[k].diagram;
            if (normal.count(d)) continue;
            auto r = choose_redex(rs, d, opt.strategy, &rng);
            if (!r) {
                normal.insert(d);
                continue;
            }
            if (static_cast<long>(res.steps.size()) >= opt.fuel)
                throw FuelExhausted("normalization needs more than " + std::to_string(opt.fuel) + " steps");
            RewriteStep st = apply_step(rs, cur, k, *r, opt.merge_budget, true);
            if (!st.decreasing) ++res.order_violations;
            cur = st.after;
            if (!opt.record_vectors) {
                st.before = Vector();
                st.after = Vector();
            }
            res.steps.push_back(std::move(st));
            stepped = true;
            break;
        }
        if (!stepped) break;
    }
    res.result = std::move(cur);
    return res;
}

NormalizeResult normalize(const Ruleset& rs, const Diagram& d, const NormalizeOptions& opt) {
    return normalize(rs, Vector::monomial(d), opt);
}

std::string to_string(OrderResult r) {
    switch (r) {
        case OrderResult::Greater: return "Greater";
        case OrderResult::Less: return "Less";
        case OrderResult::Equal: return "Equal";
        case OrderResult::Incomparable: return "Incomparable";
    }
    return "Incomparable";
}

OrderResult order_compare(const Ruleset& rs, const Diagram& a, const Diagram& b) {
    const auto ca = counters(rs, a), cb = counters(rs, b);
    if (ca == cb) return OrderResult::Equal;
    return ca > cb ? OrderResult::Greater : OrderResult::Less;
}

OrderResult order_compare(const Ruleset& rs, const Vector& a, const Vector& b) {
    std::vector<Diagram> xa, xb;
    for (const auto& t : a.terms) xa.push_back(t.diagram);
    for (const auto& t : b.terms) xb.push_back(t.diagram);
    // Remove classes common to both supports.
    std::vector<char> used(xb.size(), 0);
    std::vector<Diagram> ra;
    for (const auto& x : xa) {
        bool common = false;
        for (size_t k = 0; k < xb.size() && !common; ++k) {
            if (used[k]) continue;
            if (class_equal(rs, x, xb[k], a.merge_budget, nullptr, nullptr)) {
                used[k] = 1;
                common = true;
            }
        }
        if (!common) ra.push_back(x);
    }
    std::vector<Diagram> rb;
    for (size_t k = 0; k < xb.size(); ++k)
        if (!used[k]) rb.push_back(xb[k]);
    if (ra.empty() && rb.empty()) return OrderResult::Equal;
    auto dominates = [&](const std::vector<Diagram>& big, const std::vector<Diagram>& small) {
        if (big.empty()) return false;
        for (const auto& y : small) {
            bool found = false;
            for (const auto& x : big)
                if (order_compare(rs, x, y) == OrderResult::Greater) found = true;
            if (!found) return false;
        }
        return true;
    };
    if (dominates(ra, rb)) return OrderResult::Greater;
    if (dominates(rb, ra)) return OrderResult::Less;
    return OrderResult::Incomparable;
}

Verdict vectors_congruent(const Ruleset& rs, const Vector& a, const Vector& b, long budget) {
    Vector ca = canonicalize(rs, a, budget), cb = canonicalize(rs, b, budget);
    std::vector<char> used(cb.terms.size(), 0);
    bool unknown = false;
    for (const auto& t : ca.terms) {
        bool matched = false;
        for (size_t k = 0; k < cb.terms.size() && !matched; ++k) {
            if (used[k]) continue;
            Unit u;
            if (!class_equal(rs, t.diagram, cb.terms[k].diagram, budget, &u, &unknown)) continue;
            // t = u * other, so the coefficient of other must be coeff * u.
            if (!(t.coeff * RingElement(u) == cb.terms[k].coeff)) return Verdict::No;
            used[k] = 1;
            matched = true;
        }
        if (!matched) return unknown ? Verdict::Unknown : Verdict::No;
    }
    for (char u : used)
        if (!u) return unknown ? Verdict::Unknown : Verdict::No;
    return Verdict::Yes;
}

Redex transport_redex(const Redex& r, const Diagram& new_host, const std::vector<EMove>& path) {
    Redex out = r;
    out.host = new_host;
    out.alignment = path;
    out.alignment.insert(out.alignment.end(), r.alignment.begin(), r.alignment.end());
    out.scalar = path_scalar(out.alignment);
    return out;
}

namespace {

// Replays the transported alignment so that uids match the new host.
Redex refresh(const Ruleset& rs, Redex r) {
    Unit u;
    r.aligned = replay(rs, r.host, r.alignment, &u);
    r.scalar = u;
    return r;
}

}  // namespace

Factorization factor_step(const Ruleset& rs, const Vector& v, std::size_t index, const Redex& r, long budget) {
    Factorization fz;
    fz.f = apply_step(rs, v, index, r, budget, false);
    fz.nonpositive = !fz.f.positive;
    const Diagram& host = v.terms[index].diagram;

    // g: merge the source, then one positive step on the merged class.
    Vector cv = canonicalize(rs, v, budget);
    fz.g_end = cv;
    for (size_t k = 0; k < cv.terms.size(); ++k) {
        CongruenceResult c = congruent_modulo(rs, cv.terms[k].diagram, host, budget);
        if (c.verdict != Verdict::Yes) continue;
        Redex moved = refresh(rs, transport_redex(r, cv.terms[k].diagram, c.witness.moves));
        RewriteStep g = apply_step(rs, cv, k, moved, budget, true);
        fz.g_end = g.after;
        fz.g.push_back(std::move(g));
        break;
    }

    // h: rewrite the remaining copy of the class in f's target.
    const Vector& fv = fz.f.after;
    fz.h_end = fv;
    // Only the remainder terms precede the produced ones in f's target.
    for (size_t k = 0; k + 1 < v.terms.size() && k < fv.terms.size(); ++k) {
        CongruenceResult c = congruent_modulo(rs, fv.terms[k].diagram, host, budget);
        if (c.verdict != Verdict::Yes) continue;
        Redex moved = refresh(rs, transport_redex(r, fv.terms[k].diagram, c.witness.moves));
        RewriteStep h = apply_step(rs, fv, k, moved, budget, true);
        fz.h_end = h.after;
        fz.h.push_back(std::move(h));
        break;
    }
    fz.verdict = vectors_congruent(rs, fz.g_end, fz.h_end, budget);
    bool positive = true;
    for (const auto& s : fz.g) positive = positive && s.positive;
    for (const auto& s : fz.h) positive = positive && s.positive;
    fz.ok = fz.verdict == Verdict::Yes && positive && fz.g.size() <= 1 && fz.h.size() <= 1;
    return fz;
}

}  // namespace lgr
