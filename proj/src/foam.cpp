// Foam instance helpers: boundary circles, facet components, reduced foams,
// hom-space bases and bubble evaluation.
#include "lgr/foam.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <numeric>
#include <set>
#include <sstream>

#include "lgr/errors.hpp"

namespace lgr {

namespace {

struct UF {
    std::vector<int> p;
    explicit UF(int n) : p(n) { std::iota(p.begin(), p.end(), 0); }
    int find(int x) { return p[x] == x ? x : p[x] = find(p[x]); }
    void unite(int a, int b) { p[find(a)] = find(b); }
};

bool label_free(const Signature& sig, int obj, int j) {
    const unsigned m = sig.masks[obj];
    const bool left = j >= 2 && (m >> (j - 1) & 1u);
    const bool right = j <= sig.d - 1 && (m >> j & 1u);
    return !left && !right;
}

// Shared union-find over labelled cells of a sequence of words.
struct LabelledCells {
    const Signature& sig;
    std::vector<std::vector<int>> objs;  // per row, gap objects
    std::vector<int> offset;             // per row, first cell
    int cells = 0;
    UF uf{0};

    LabelledCells(const Signature& s, const std::vector<std::vector<int>>& words, int obj) : sig(s) {
        for (const auto& w : words) {
            offset.push_back(cells);
            objs.push_back(gap_objects(sig, w, obj));
            cells += static_cast<int>(w.size()) + 1;
        }
        uf = UF(cells * (sig.d + 1));
    }
    int node(int row, int gap, int j) const { return (offset[row] + gap) * (sig.d + 1) + j; }
    bool exists(int row, int gap, int j) const { return label_free(sig, objs[row][gap], j); }

    // Links inside one word: labels carried across letters of other colours,
    // and the two labels on the unshaded side of each letter.
    void link_row(int row, const std::vector<int>& w) {
        for (int x = 0; x < static_cast<int>(w.size()); ++x) {
            const int c = sig.letters[w[x]].colour;
            for (int j = 1; j <= sig.d; ++j) {
                if (j == c || j == c + 1) continue;
                if (exists(row, x, j) && exists(row, x + 1, j)) uf.unite(node(row, x, j), node(row, x + 1, j));
            }
            const int u = (sig.masks[objs[row][x]] >> c & 1u) ? x + 1 : x;
            if (exists(row, u, c) && exists(row, u, c + 1)) uf.unite(node(row, u, c), node(row, u, c + 1));
        }
    }
};

std::vector<std::string> split_ws(const std::string& s) {
    std::stringstream ss(s);
    std::vector<std::string> out;
    std::string tok;
    while (ss >> tok) out.push_back(tok);
    return out;
}

}  // namespace

FoamVariant foam_variant_from_string(const std::string& s) {
    if (s == "gfoam" || s == "foam") return FoamVariant::GFoam;
    if (s == "gfoam-prime" || s == "gfoam_prime" || s == "foam'" || s == "prime") return FoamVariant::GFoamPrime;
    throw ParseError("unknown foam variant '" + s + "' (gfoam, gfoam-prime)");
}

Ruleset build_instance(int d, FoamVariant variant) {
    if (d < 1) throw ParseError("foam parameter d must be at least 1");
    return load_ruleset(data_path(variant == FoamVariant::GFoam ? "foam_d.json" : "foam_d_prime.json"), d);
}

std::vector<int> parse_word(const Signature& sig, const std::string& text) {
    std::vector<int> out;
    for (const auto& tok : split_ws(text)) out.push_back(sig.letter_id(tok));
    return out;
}

BoundaryCircles boundary_circles(const Signature& sig, const std::vector<int>& w, const std::vector<int>& w2, int obj) {
    const int l1 = sig.left_object(w, obj), l2 = sig.left_object(w2, obj);
    if (l1 < 0 || l2 < 0) throw NotParallel("a boundary word is not composable at its right object");
    if (l1 != l2) throw NotParallel("boundary words start at different objects");
    BoundaryCircles bc;
    bc.words = {w, w2};
    LabelledCells lc(sig, bc.words, obj);
    lc.link_row(0, w);
    lc.link_row(1, w2);
    const int n1 = static_cast<int>(w.size()), n2 = static_cast<int>(w2.size());
    for (int j = 1; j <= sig.d; ++j) {
        if (lc.exists(0, 0, j)) lc.uf.unite(lc.node(0, 0, j), lc.node(1, 0, j));
        if (lc.exists(0, n1, j)) lc.uf.unite(lc.node(0, n1, j), lc.node(1, n2, j));
    }
    bc.component.assign(lc.cells * (sig.d + 1), -1);
    std::map<int, int> ids;
    for (int row = 0; row < 2; ++row) {
        const int len = static_cast<int>(bc.words[row].size());
        for (int g = 0; g <= len; ++g) {
            for (int j = 1; j <= sig.d; ++j) {
                if (!lc.exists(row, g, j)) continue;
                const int r = lc.uf.find(lc.node(row, g, j));
                auto it = ids.emplace(r, static_cast<int>(ids.size())).first;
                bc.component[lc.node(row, g, j)] = it->second;
            }
        }
    }
    bc.count = static_cast<int>(ids.size());
    return bc;
}

FacetComponents facet_components(const Signature& sig, const Diagram& d) {
    StrandGraph sg = strand_graph(sig, d);
    LabelledCells lc(sig, sg.words, d.obj);
    const int rows = static_cast<int>(sg.words.size());
    for (int t = 0; t < rows; ++t) lc.link_row(t, sg.words[t]);
    // Cells of one face carry the same labels.
    std::vector<int> face_cell(sg.num_faces, -1);
    for (int t = 0; t < rows; ++t) {
        for (int g = 0; g <= static_cast<int>(sg.words[t].size()); ++g) {
            const int f = sg.face_at(t, g);
            const int cell = lc.offset[t] + g;
            if (face_cell[f] < 0) {
                face_cell[f] = cell;
                continue;
            }
            for (int j = 1; j <= sig.d; ++j)
                if (lc.exists(t, g, j)) lc.uf.unite(cell * (sig.d + 1) + j, face_cell[f] * (sig.d + 1) + j);
        }
    }
    FacetComponents fc;
    fc.node.assign(lc.cells, std::vector<int>(sig.d + 1, -1));
    std::map<int, int> ids;
    for (int t = 0; t < rows; ++t) {
        for (int g = 0; g <= static_cast<int>(sg.words[t].size()); ++g) {
            const int cell = lc.offset[t] + g;
            for (int j = 1; j <= sig.d; ++j) {
                if (!lc.exists(t, g, j)) continue;
                const int r = lc.uf.find(cell * (sig.d + 1) + j);
                auto [it, fresh] = ids.emplace(r, static_cast<int>(ids.size()));
                fc.node[cell][j] = it->second;
                if (fresh) {
                    fc.bottom_cell.push_back(cell);
                    fc.bottom_label.push_back(j);
                } else if (fc.bottom_cell[it->second] == cell) {
                    fc.bottom_label[it->second] = j;
                }
            }
        }
    }
    fc.count = static_cast<int>(ids.size());
    fc.dots.assign(fc.count, 0);
    for (const auto& dot : sg.dots) {
        const int cell = lc.offset[dot.layer] + d.layers[dot.layer].pos;
        const int comp = fc.node[cell][dot.colour];
        if (comp >= 0) fc.dots[comp]++;
    }
    fc.circles.assign(fc.count, {});
    BoundaryCircles bc = boundary_circles(sig, d.source, sg.words.back(), d.obj);
    LabelledCells bl(sig, bc.words, d.obj);
    for (int row = 0; row < 2; ++row) {
        const int t = row == 0 ? 0 : rows - 1;
        for (int g = 0; g <= static_cast<int>(sg.words[t].size()); ++g) {
            for (int j = 1; j <= sig.d; ++j) {
                const int comp = fc.node[lc.offset[t] + g][j];
                if (comp < 0) continue;
                const int circ = bc.component[bl.node(row, g, j)];
                auto& v = fc.circles[comp];
                if (std::find(v.begin(), v.end(), circ) == v.end()) v.push_back(circ);
            }
        }
    }
    return fc;
}

std::vector<long> facet_invariant(const Signature& sig, const Diagram& d) {
    FacetComponents fc = facet_components(sig, d);
    std::vector<std::vector<long>> keys;
    for (int c = 0; c < fc.count; ++c) {
        std::vector<long> k(fc.circles[c].begin(), fc.circles[c].end());
        std::sort(k.begin(), k.end());
        k.push_back(-1 - fc.dots[c]);
        keys.push_back(std::move(k));
    }
    std::sort(keys.begin(), keys.end());
    std::vector<long> out;
    for (const auto& k : keys) out.insert(out.end(), k.begin(), k.end());
    return out;
}

bool geometrically_reduced(const Signature& sig, const Diagram& d) {
    StrandGraph sg = strand_graph(sig, d);
    for (const auto& s : sg.strands)
        if (s.closed) return false;
    FacetComponents fc = facet_components(sig, d);
    BoundaryCircles bc = boundary_circles(sig, d.source, sg.words.back(), d.obj);
    if (fc.count != bc.count) return false;
    std::set<int> seen;
    for (int c = 0; c < fc.count; ++c) {
        if (fc.circles[c].size() != 1 || fc.dots[c] > 1) return false;
        if (!seen.insert(fc.circles[c][0]).second) return false;
    }
    return true;
}

bool is_reduced(const Ruleset& rs, const Diagram& d) { return is_normal(rs, d); }

namespace {

// Boundary points in circular order: bottom letters left to right, then top
// letters right to left.  Point p < m is bottom letter p; otherwise top letter
// m + n - 1 - (p - m).
struct BoundaryPoints {
    std::vector<int> w, w2;
    int m = 0, n = 0;
    bool bottom(int p) const { return p < m; }
    int letter(int p) const { return p < m ? w[p] : w2[m + n - 1 - p]; }
    int index(int p) const { return p < m ? p : m + n - 1 - p; }
};

bool compatible(const Signature& sig, const BoundaryPoints& bp, int a, int b) {
    const LetterType& x = sig.letters[bp.letter(a)];
    const LetterType& y = sig.letters[bp.letter(b)];
    if (x.colour != y.colour) return false;
    if (bp.bottom(a) == bp.bottom(b)) return x.orient != y.orient;
    return x.orient == y.orient;
}

void matchings(const Signature& sig, const BoundaryPoints& bp, std::vector<int> pts, std::vector<int>& partner,
               const std::function<bool()>& emit) {
    if (pts.empty()) {
        emit();
        return;
    }
    const int a = pts[0];
    for (size_t k = 1; k < pts.size(); k += 2) {
        const int b = pts[k];
        if (!compatible(sig, bp, a, b)) continue;
        std::vector<int> inner(pts.begin() + 1, pts.begin() + static_cast<long>(k));
        std::vector<int> outer(pts.begin() + static_cast<long>(k) + 1, pts.end());
        partner[a] = b;
        partner[b] = a;
        bool stop = false;
        matchings(sig, bp, inner, partner, [&]() {
            matchings(sig, bp, outer, partner, [&]() {
                stop = emit();
                return stop;
            });
            return stop;
        });
        if (stop) return;
    }
}

std::optional<Diagram> realize(const Signature& sig, const BoundaryPoints& bp, const std::vector<int>& partner,
                               int obj) {
    Diagram d;
    d.obj = obj;
    d.source = bp.w;
    std::vector<int> cur(bp.m);
    std::iota(cur.begin(), cur.end(), 0);
    std::vector<int> word = bp.w;
    bool progress = true;
    while (progress) {
        progress = false;
        for (int x = 0; x + 1 < static_cast<int>(cur.size()); ++x) {
            const int a = cur[x], b = cur[x + 1];
            if (!bp.bottom(a) || partner[a] != b) continue;
            const LetterType& la = sig.letters[word[x]];
            const int gen = sig.foam_gen(la.orient == 0 ? "rcap" : "lcap", la.colour);
            d.layers.push_back({gen, x, fresh_uid()});
            cur.erase(cur.begin() + x, cur.begin() + x + 2);
            word.erase(word.begin() + x, word.begin() + x + 2);
            progress = true;
            break;
        }
    }
    for (int p : cur)
        if (bp.bottom(partner[p])) return std::nullopt;
    // Cups: peel innermost pairs off the top word, then apply in reverse.
    std::vector<int> top(bp.n);
    for (int y = 0; y < bp.n; ++y) top[y] = bp.m + bp.n - 1 - y;
    std::vector<int> tw = bp.w2;
    std::vector<std::pair<int, int>> cups;  // (position, gen)
    progress = true;
    while (progress) {
        progress = false;
        for (int x = 0; x + 1 < static_cast<int>(top.size()); ++x) {
            const int a = top[x], b = top[x + 1];
            if (bp.bottom(partner[a]) || partner[a] != b) continue;
            const LetterType& la = sig.letters[tw[x]];
            cups.push_back({x, sig.foam_gen(la.orient == 1 ? "rcup" : "lcup", la.colour)});
            top.erase(top.begin() + x, top.begin() + x + 2);
            tw.erase(tw.begin() + x, tw.begin() + x + 2);
            progress = true;
            break;
        }
    }
    if (tw != word) return std::nullopt;
    for (auto it = cups.rbegin(); it != cups.rend(); ++it) d.layers.push_back({it->second, it->first, fresh_uid()});
    if (!is_legal(sig, d) || target_word(sig, d) != bp.w2) return std::nullopt;
    return d;
}

}  // namespace

std::vector<BasisElement> hom_basis(const Ruleset& rs, const std::vector<int>& w, const std::vector<int>& w2, int obj) {
    const Signature& sig = rs.sig;
    if (!sig.is_foam()) throw ParseError("hom_basis needs a foam ruleset");
    BoundaryCircles bc = boundary_circles(sig, w, w2, obj);
    BoundaryPoints bp{w, w2, static_cast<int>(w.size()), static_cast<int>(w2.size())};
    std::vector<int> pts(bp.m + bp.n);
    std::iota(pts.begin(), pts.end(), 0);
    std::vector<int> partner(pts.size(), -1);
    // Prefer a matching whose foam is also a normal form: the geometric test
    // does not see every neck that an admissible neck-cutting can remove.
    std::optional<Diagram> base, geometric;
    if ((bp.m + bp.n) % 2 == 0) {
        matchings(sig, bp, pts, partner, [&]() {
            auto d = realize(sig, bp, partner, obj);
            if (!d || !geometrically_reduced(sig, *d)) return false;
            if (!geometric) geometric = d;
            if (!is_normal(rs, *d)) return false;
            base = d;
            return true;
        });
    }
    std::vector<BasisElement> out;
    if (!base) base = geometric;
    if (!base) return out;
    FacetComponents fc = facet_components(sig, *base);
    StrandGraph sg = strand_graph(sig, *base);
    auto with_dots = [&](std::vector<std::pair<int, int>> dots) {  // (cell, label)
        Diagram d = *base;
        std::sort(dots.begin(), dots.end(), std::greater<>());
        for (auto [cell, label] : dots) {
            int t = 0;
            while (t + 1 < static_cast<int>(sg.cell_offset.size()) && sg.cell_offset[t + 1] <= cell) ++t;
            const int gap = cell - sg.cell_offset[t];
            d.layers.insert(d.layers.begin() + t, Layer{sig.foam_gen("dot", label), gap, fresh_uid()});
        }
        return d;
    };
    // Dot position per component: the lowest-leftmost cell, or the first
    // cell and label of the component where a single dot is in normal form.
    std::vector<std::pair<int, int>> spot(fc.count);
    for (int c = 0; c < fc.count; ++c) {
        spot[c] = {fc.bottom_cell[c], fc.bottom_label[c]};
        if (is_normal(rs, with_dots({spot[c]}))) continue;
        bool found = false;
        for (int cell = 0; cell < static_cast<int>(fc.node.size()) && !found; ++cell)
            for (int j = 1; j < static_cast<int>(fc.node[cell].size()) && !found; ++j)
                if (fc.node[cell][j] == c && is_normal(rs, with_dots({{cell, j}}))) {
                    spot[c] = {cell, j};
                    found = true;
                }
    }
    // Component touching each circle.
    std::vector<int> comp_of(bc.count, -1);
    for (int c = 0; c < fc.count; ++c) comp_of[fc.circles[c][0]] = c;
    for (unsigned mask = 0; mask < (1u << bc.count); ++mask) {
        BasisElement e;
        std::vector<std::pair<int, int>> dots;
        for (int c = 0; c < bc.count; ++c) {
            if (!(mask >> c & 1u)) continue;
            e.delta.push_back(c);
            dots.push_back(spot[comp_of[c]]);
        }
        e.diagram = with_dots(std::move(dots));
        out.push_back(std::move(e));
    }
    return out;
}

BubbleEvaluation bubble_evaluate(const Ruleset& rs, const Diagram& d) {
    StrandGraph sg = strand_graph(rs.sig, d);
    bool closed = false;
    for (const auto& s : sg.strands) closed = closed || s.closed;
    if (!closed) throw NoBubble("the diagram has no closed component");
    Ruleset sub = rs;
    sub.rules_R.clear();
    for (const auto& r : rs.rules_R)
        if (r.matcher == MatchKind::Bubble || r.matcher == MatchKind::DotPair || r.matcher == MatchKind::DotStrand)
            sub.rules_R.push_back(r);
    NormalizeResult nr = normalize(sub, d);
    return {nr.result, nr.steps};
}

long hom_dimension_by_enumeration(const Ruleset& rs, const std::vector<int>& w, const std::vector<int>& w2, int obj,
                                  int max_layers, bool loop_free) {
    const Signature& sig = rs.sig;
    std::vector<Diagram> found;
    std::function<void(Diagram&, const std::vector<int>&, int)> grow = [&](Diagram& d, const std::vector<int>& word,
                                                                          int left) {
        if (word == w2) found.push_back(d);
        if (left == 0) return;
        for (int g = 0; g < static_cast<int>(sig.gens.size()); ++g) {
            const Generator& gen = sig.gens[g];
            for (int p = 0; p + gen.n_in() <= static_cast<int>(word.size()); ++p) {
                if (!std::equal(gen.src.begin(), gen.src.end(), word.begin() + p)) continue;
                d.layers.push_back({g, p, fresh_uid()});
                if (is_legal(sig, d)) grow(d, apply_layer(sig, word, d.layers.back()), left - 1);
                d.layers.pop_back();
            }
        }
    };
    Diagram start = identity_diagram(obj, w);
    grow(start, w, max_layers);
    Vector classes;
    for (const auto& d : found) {
        if (loop_free) {
            bool closed = false;
            for (const auto& s : strand_graph(sig, d).strands) closed = closed || s.closed;
            if (closed) continue;
        }
        NormalizeResult nr = normalize(rs, d);
        for (const auto& t : nr.result.terms) {
            bool known = false;
            for (const auto& c : classes.terms) {
                if (c.diagram == t.diagram) known = true;
                else if (congruent_modulo(rs, c.diagram, t.diagram).verdict == Verdict::Yes) known = true;
                if (known) break;
            }
            if (!known) classes.terms.push_back({RingElement(1), t.diagram});
        }
    }
    return static_cast<long>(classes.terms.size());
}

}  // namespace lgr
