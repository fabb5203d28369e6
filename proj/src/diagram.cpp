// Diagram structure: slices, legality, composition, strands and faces.
#include "lgr/diagram.hpp"

#include <algorithm>
#include <atomic>
#include <numeric>
#include <sstream>

#include "lgr/errors.hpp"

namespace lgr {

namespace {

std::atomic<std::uint32_t> g_uid{1};

class UnionFind {
public:
    explicit UnionFind(size_t n) : parent_(n) { std::iota(parent_.begin(), parent_.end(), 0); }
    int find(int x) {
        while (parent_[x] != x) {
            parent_[x] = parent_[parent_[x]];
            x = parent_[x];
        }
        return x;
    }
    void unite(int a, int b) {
        a = find(a);
        b = find(b);
        if (a != b) parent_[std::max(a, b)] = std::min(a, b);
    }
    std::vector<int>& raw() { return parent_; }

private:
    std::vector<int> parent_;
};

std::string trim(const std::string& s) {
    size_t a = s.find_first_not_of(" \t\r\n");
    if (a == std::string::npos) return "";
    size_t b = s.find_last_not_of(" \t\r\n");
    return s.substr(a, b - a + 1);
}

std::vector<std::string> split_ws(const std::string& s) {
    std::istringstream in(s);
    std::vector<std::string> out;
    std::string tok;
    while (in >> tok) out.push_back(tok);
    return out;
}

}  // namespace

std::uint32_t fresh_uid() { return g_uid.fetch_add(1); }

bool Diagram::operator==(const Diagram& o) const {
    if (obj != o.obj || source != o.source || layers.size() != o.layers.size()) return false;
    for (size_t k = 0; k < layers.size(); ++k)
        if (layers[k].gen != o.layers[k].gen || layers[k].pos != o.layers[k].pos) return false;
    return true;
}

std::size_t Diagram::hash() const {
    std::size_t h = 1469598103934665603ull ^ static_cast<std::size_t>(obj);
    auto mix = [&](std::size_t v) {
        h ^= v + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
    };
    mix(source.size());
    for (int l : source) mix(static_cast<std::size_t>(l));
    mix(layers.size());
    for (const auto& l : layers) mix(static_cast<std::size_t>(l.gen) * 1000003u + static_cast<std::size_t>(l.pos));
    return h;
}

void Diagram::renumber() {
    for (auto& l : layers) l.uid = fresh_uid();
}

Diagram identity_diagram(int obj, std::vector<int> word) {
    Diagram d;
    d.obj = obj;
    d.source = std::move(word);
    return d;
}

std::vector<int> apply_layer(const Signature& sig, const std::vector<int>& word, const Layer& layer) {
    const Generator& g = sig.gens.at(layer.gen);
    const int n = g.n_in();
    if (layer.pos < 0 || layer.pos + n > static_cast<int>(word.size()))
        throw BoundaryMismatch("generator " + g.name + " at position " + std::to_string(layer.pos) +
                               " exceeds a word of length " + std::to_string(word.size()));
    for (int k = 0; k < n; ++k)
        if (word[layer.pos + k] != g.src[k])
            throw BoundaryMismatch("generator " + g.name + " does not match the word at position " +
                                   std::to_string(layer.pos));
    std::vector<int> out;
    out.reserve(word.size() - n + g.n_out());
    out.insert(out.end(), word.begin(), word.begin() + layer.pos);
    out.insert(out.end(), g.tgt.begin(), g.tgt.end());
    out.insert(out.end(), word.begin() + layer.pos + n, word.end());
    return out;
}

std::vector<std::vector<int>> slices(const Signature& sig, const Diagram& d) {
    std::vector<std::vector<int>> out;
    out.reserve(d.layers.size() + 1);
    out.push_back(d.source);
    for (const auto& l : d.layers) out.push_back(apply_layer(sig, out.back(), l));
    return out;
}

std::vector<int> target_word(const Signature& sig, const Diagram& d) {
    std::vector<int> w = d.source;
    for (const auto& l : d.layers) w = apply_layer(sig, w, l);
    return w;
}

std::vector<int> gap_objects(const Signature& sig, const std::vector<int>& word, int obj) {
    std::vector<int> out(word.size() + 1, -1);
    out[word.size()] = obj;
    for (size_t k = word.size(); k-- > 0;) out[k] = sig.act(word[k], out[k + 1]);
    return out;
}

bool is_legal(const Signature& sig, const Diagram& d) {
    if (d.obj < 0 || d.obj >= static_cast<int>(sig.objects.size())) return false;
    std::vector<int> word = d.source;
    std::vector<int> objs = gap_objects(sig, word, d.obj);
    if (std::find(objs.begin(), objs.end(), -1) != objs.end()) return false;
    for (const auto& l : d.layers) {
        if (l.gen < 0 || l.gen >= static_cast<int>(sig.gens.size())) return false;
        const Generator& g = sig.gens[l.gen];
        std::vector<int> next;
        try {
            next = apply_layer(sig, word, l);
        } catch (const BoundaryMismatch&) {
            return false;
        }
        std::vector<int> nobjs = gap_objects(sig, next, d.obj);
        if (std::find(nobjs.begin(), nobjs.end(), -1) != nobjs.end()) return false;
        if (nobjs[l.pos] != objs[l.pos]) return false;
        if (!g.allowed.empty() && !g.allowed[objs[l.pos + g.n_in()]]) return false;
        word = std::move(next);
        objs = std::move(nobjs);
    }
    return true;
}

GradingVector degree(const Signature& sig, const Diagram& d) {
    GradingVector g;
    for (const auto& l : d.layers) g += sig.gens.at(l.gen).degree;
    return g;
}

Diagram whisker(const Signature& sig, const std::vector<int>& left, const Diagram& d, const std::vector<int>& right,
                int right_obj) {
    if (sig.left_object(right, right_obj) != d.obj)
        throw BoundaryMismatch("right whiskering word does not meet the diagram's right object");
    Diagram out;
    out.obj = right_obj;
    out.source = left;
    out.source.insert(out.source.end(), d.source.begin(), d.source.end());
    out.source.insert(out.source.end(), right.begin(), right.end());
    const int shift = static_cast<int>(left.size());
    for (const auto& l : d.layers) out.layers.push_back({l.gen, l.pos + shift, l.uid});
    if (sig.left_object(out.source, out.obj) < 0) throw BoundaryMismatch("whiskered source word is not composable");
    return out;
}

Diagram compose(const Signature& sig, const Diagram& d1, const Diagram& d2, ComposeOp op) {
    switch (op) {
        case ComposeOp::Vertical: {
            if (d1.obj != d2.obj || target_word(sig, d2) != d1.source)
                throw BoundaryMismatch("vertical composition: target of the lower diagram differs from the source "
                                       "of the upper one");
            Diagram out = d2;
            out.layers.insert(out.layers.end(), d1.layers.begin(), d1.layers.end());
            return out;
        }
        case ComposeOp::WhiskerLeft:
        case ComposeOp::WhiskerRight: {
            if (op == ComposeOp::WhiskerLeft && !d1.is_identity())
                throw BoundaryMismatch("left whiskering needs an identity on the left");
            if (op == ComposeOp::WhiskerRight && !d2.is_identity())
                throw BoundaryMismatch("right whiskering needs an identity on the right");
            const int left_of_d2 = sig.left_object(d2.source, d2.obj);
            if (left_of_d2 != d1.obj) throw BoundaryMismatch("horizontal composition: objects do not meet");
            // d2's layers first (whiskered by s(d1)), then d1's (whiskered by t(d2)).
            Diagram first = whisker(sig, d1.source, d2, {}, d2.obj);
            Diagram second = whisker(sig, {}, d1, target_word(sig, d2), d2.obj);
            Diagram out = first;
            out.layers.insert(out.layers.end(), second.layers.begin(), second.layers.end());
            return out;
        }
    }
    throw BoundaryMismatch("unknown composition");
}

Diagram contextualize(const Signature& sig, const Context& ctx, const Diagram& d) {
    Diagram mid = whisker(sig, ctx.left, d, ctx.right, ctx.right_obj);
    Diagram out = mid;
    if (ctx.has_below) out = compose(sig, out, ctx.below, ComposeOp::Vertical);
    if (ctx.has_above) out = compose(sig, ctx.above, out, ComposeOp::Vertical);
    return out;
}

StrandGraph strand_graph(const Signature& sig, const Diagram& d) {
    StrandGraph sg;
    sg.words = slices(sig, d);
    const int L = static_cast<int>(d.layers.size());
    sg.letter_offset.resize(L + 2);
    sg.cell_offset.resize(L + 2);
    int nl = 0, nc = 0;
    for (int t = 0; t <= L; ++t) {
        sg.letter_offset[t] = nl;
        sg.cell_offset[t] = nc;
        nl += static_cast<int>(sg.words[t].size());
        nc += static_cast<int>(sg.words[t].size()) + 1;
    }
    sg.letter_offset[L + 1] = nl;
    sg.cell_offset[L + 1] = nc;

    UnionFind lu(nl), cu(nc);
    std::vector<std::vector<std::uint32_t>> node_uids(nl);
    std::vector<std::vector<int>> node_layers(nl);
    for (int t = 0; t < L; ++t) {
        const Layer& l = d.layers[t];
        const Generator& g = sig.gens[l.gen];
        const int n = g.n_in(), m = g.n_out(), p = l.pos;
        const int len = static_cast<int>(sg.words[t].size());
        const int lo = sg.letter_offset[t], hi = sg.letter_offset[t + 1];
        for (int x = 0; x < len; ++x) {
            if (x < p) lu.unite(lo + x, hi + x);
            else if (x >= p + n) lu.unite(lo + x, hi + x - n + m);
        }
        auto leg = [&](int k) { return k < n ? lo + p + k : hi + p + (k - n); };
        for (auto [a, b] : g.links) lu.unite(leg(a), leg(b));
        if (g.passes_all)
            for (int k = 1; k < n + m; ++k) lu.unite(leg(0), leg(k));
        for (int k = 0; k < n + m; ++k) {
            node_uids[leg(k)].push_back(l.uid);
            node_layers[leg(k)].push_back(t);
        }
        const int co = sg.cell_offset[t], ch = sg.cell_offset[t + 1];
        for (int gp = 0; gp <= len; ++gp) {
            if (gp <= p) cu.unite(co + gp, ch + gp);
            if (gp >= p + n) cu.unite(co + gp, ch + gp - n + m);
        }
    }
    // Strands.
    sg.node_strand.assign(nl, -1);
    std::vector<int> root_to_strand(nl, -1);
    for (int t = 0; t <= L; ++t) {
        for (int x = 0; x < static_cast<int>(sg.words[t].size()); ++x) {
            int node = sg.letter_offset[t] + x;
            int r = lu.find(node);
            if (root_to_strand[r] < 0) {
                root_to_strand[r] = static_cast<int>(sg.strands.size());
                Strand s;
                s.colour = sig.letters[sg.words[t][x]].colour;
                s.closed = true;
                s.key = 0xffffffffu;
                sg.strands.push_back(s);
            }
            int sid = root_to_strand[r];
            sg.node_strand[node] = sid;
            Strand& s = sg.strands[sid];
            if (t == 0) {
                s.closed = false;
                s.bottom.push_back(x);
            }
            if (t == L) {
                s.closed = false;
                s.top.push_back(x);
            }
            for (auto u : node_uids[node]) s.key = std::min(s.key, u);
            for (int lay : node_layers[node]) s.layers.push_back(lay);
        }
    }
    for (auto& s : sg.strands) {
        std::sort(s.layers.begin(), s.layers.end());
        s.layers.erase(std::unique(s.layers.begin(), s.layers.end()), s.layers.end());
    }
    // Faces.
    sg.cell_face.assign(nc, -1);
    sg.cell_object.assign(nc, -1);
    std::vector<int> root_to_face(nc, -1);
    for (int t = 0; t <= L; ++t) {
        std::vector<int> objs = gap_objects(sig, sg.words[t], d.obj);
        for (int gp = 0; gp < static_cast<int>(objs.size()); ++gp) {
            int cell = sg.cell_offset[t] + gp;
            sg.cell_object[cell] = objs[gp];
            int r = cu.find(cell);
            if (root_to_face[r] < 0) root_to_face[r] = sg.num_faces++;
            sg.cell_face[cell] = root_to_face[r];
        }
    }
    for (int t = 0; t < L; ++t) {
        const Generator& g = sig.gens[d.layers[t].gen];
        if (g.kind == "dot") sg.dots.push_back({t, g.colour, sg.face_at(t, d.layers[t].pos)});
    }
    if (sig.is_foam()) {
        const int dd = sig.d;
        sg.shadings.assign(dd + 1, 0);
        sg.closed.assign(dd + 1, 0);
        sg.dot_count.assign(dd + 1, 0);
        for (const auto& s : sg.strands)
            if (s.closed) sg.closed[s.colour]++;
        for (const auto& dot : sg.dots) sg.dot_count[dot.colour]++;
        for (int i = 1; i <= dd - 1; ++i) {
            UnionFind su = cu;
            for (int t = 0; t <= L; ++t) {
                const auto& w = sg.words[t];
                for (int x = 0; x < static_cast<int>(w.size()); ++x) {
                    if (sig.letters[w[x]].colour == i) continue;
                    int a = sg.cell_offset[t] + x;
                    int oa = sg.cell_object[a], ob = sg.cell_object[a + 1];
                    if ((sig.masks[oa] >> i & 1u) && (sig.masks[ob] >> i & 1u)) su.unite(a, a + 1);
                }
            }
            std::vector<char> seen(nc, 0);
            int count = 0;
            for (int c = 0; c < nc; ++c) {
                if (!(sig.masks[sg.cell_object[c]] >> i & 1u)) continue;
                int r = su.find(c);
                if (!seen[r]) {
                    seen[r] = 1;
                    ++count;
                }
            }
            sg.shadings[i] = count;
        }
    }
    return sg;
}

std::vector<long> order_counters(const Signature& sig, const Diagram& d) {
    std::vector<long> out;
    if (sig.is_foam()) {
        StrandGraph sg = strand_graph(sig, d);
        for (int i = 1; i <= sig.d - 1; ++i) out.push_back(sg.shadings[i]);
        for (int i = 1; i <= sig.d - 1; ++i) out.push_back(sg.closed[i]);
        for (int i = 1; i <= sig.d; ++i) out.push_back(sg.dot_count[i]);
        return out;
    }
    // Shortlex: size first, then generators with earlier-declared ones larger.
    out.push_back(static_cast<long>(d.layers.size()));
    const long ng = static_cast<long>(sig.gens.size());
    for (const auto& l : d.layers) out.push_back(ng - l.gen);
    return out;
}

Diagram parse_diagram_text(const Signature& sig, const std::string& text) {
    std::string body = trim(text);
    std::string head = body, tail;
    size_t bar = body.find('|');
    if (bar != std::string::npos) {
        head = body.substr(0, bar);
        tail = body.substr(bar + 1);
    }
    std::vector<std::string> htoks = split_ws(head);
    if (htoks.empty()) throw ParseError("diagram text needs an object before '|'");
    Diagram d;
    d.obj = sig.object_id(htoks[0]);
    for (size_t k = 1; k < htoks.size(); ++k) d.source.push_back(sig.letter_id(htoks[k]));
    std::string rest = trim(tail);
    if (!rest.empty()) {
        std::stringstream ss(rest);
        std::string item;
        while (std::getline(ss, item, ';')) {
            item = trim(item);
            if (item.empty()) continue;
            Layer l;
            size_t at = item.find('@');
            std::string name = trim(item.substr(0, at));
            l.gen = sig.gen_id(name);
            if (at != std::string::npos) {
                try {
                    l.pos = std::stoi(trim(item.substr(at + 1)));
                } catch (const std::exception&) {
                    throw ParseError("bad layer position in '" + item + "'");
                }
            }
            l.uid = fresh_uid();
            d.layers.push_back(l);
        }
    }
    try {
        (void)slices(sig, d);
    } catch (const BoundaryMismatch& e) {
        throw ParseError(std::string("diagram does not typecheck: ") + e.what());
    }
    if (sig.left_object(d.source, d.obj) < 0) throw ParseError("source word is not composable at its object");
    return d;
}

std::string diagram_to_text(const Signature& sig, const Diagram& d) {
    std::string out = sig.objects[d.obj];
    for (int l : d.source) out += " " + sig.letters[l].name;
    out += " |";
    for (size_t k = 0; k < d.layers.size(); ++k) {
        out += k == 0 ? " " : " ; ";
        out += sig.gens[d.layers[k].gen].name + "@" + std::to_string(d.layers[k].pos);
    }
    return out;
}

std::string diagram_brief(const Signature& sig, const Diagram& d) {
    if (d.layers.empty()) return "[id]";
    std::string out = "[";
    for (size_t k = 0; k < d.layers.size(); ++k) {
        if (k) out += " ; ";
        out += sig.gens[d.layers[k].gen].name;
        if (d.layers[k].pos != 0) out += "@" + std::to_string(d.layers[k].pos);
    }
    return out + "]";
}

}  // namespace lgr
