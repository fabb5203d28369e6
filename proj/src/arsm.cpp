// Finite abstract rewriting systems modulo and their analysis.
#include "lgr/arsm.hpp"

#include <algorithm>
#include <deque>
#include <fstream>
#include <functional>
#include <numeric>
#include <set>
#include <sstream>
#include <unordered_map>

#include "json.hpp"
#include "lgr/errors.hpp"
#include "lgr/rewrite.hpp"

namespace lgr {

using nlohmann::json;

int FiniteARSM::index(const std::string& name) const {
    auto it = std::find(elements.begin(), elements.end(), name);
    if (it == elements.end()) throw ParseError("unknown element '" + name + "'");
    return static_cast<int>(it - elements.begin());
}

int FiniteARSM::add_element(const std::string& name) {
    auto it = std::find(elements.begin(), elements.end(), name);
    if (it != elements.end()) return static_cast<int>(it - elements.begin());
    elements.push_back(name);
    return static_cast<int>(elements.size()) - 1;
}

namespace {

struct UF {
    std::vector<int> p;
    explicit UF(int n) : p(n) { std::iota(p.begin(), p.end(), 0); }
    int find(int x) { return p[x] == x ? x : p[x] = find(p[x]); }
    void unite(int a, int b) { p[find(a)] = find(b); }
};

std::vector<int> relabel(UF& uf, int n, int& count) {
    std::vector<int> out(n);
    std::map<int, int> ids;
    for (int k = 0; k < n; ++k) out[k] = ids.emplace(uf.find(k), static_cast<int>(ids.size())).first->second;
    count = static_cast<int>(ids.size());
    return out;
}

int endpoint(const FiniteARSM& sys, const json& j) {
    if (j.is_number_integer()) {
        const int k = j.get<int>();
        if (k < 0 || k >= static_cast<int>(sys.elements.size())) throw ParseError("element index out of range");
        return k;
    }
    if (j.is_string()) return sys.index(j.get<std::string>());
    throw ParseError("edge endpoints must be element names or indices");
}

std::optional<Unit> parse_scalar(const json& e) {
    if (!e.contains("scalar") || e["scalar"].is_null()) return std::nullopt;
    const std::string text = e["scalar"].is_string() ? e["scalar"].get<std::string>() : e["scalar"].dump();
    Unit u;
    if (!RingElement::parse(text).as_unit(u)) throw ParseError("edge scalar '" + text + "' is not a unit");
    return u;
}

std::vector<ArsmEdge> parse_edges(const FiniteARSM& sys, const json& j, const char* key) {
    std::vector<ArsmEdge> out;
    if (!j.contains(key)) return out;
    for (const auto& e : j.at(key)) {
        ArsmEdge ed;
        ed.src = endpoint(sys, e.at("src"));
        ed.tgt = endpoint(sys, e.at("tgt"));
        if (e.contains("label")) ed.label = e["label"].get<std::string>();
        ed.scalar = parse_scalar(e);
        out.push_back(std::move(ed));
    }
    return out;
}

json edges_to_json(const FiniteARSM& sys, const std::vector<ArsmEdge>& edges) {
    json arr = json::array();
    for (const auto& e : edges) {
        json j{{"src", sys.elements[e.src]}, {"tgt", sys.elements[e.tgt]}};
        if (!e.label.empty()) j["label"] = e.label;
        if (e.scalar) j["scalar"] = e.scalar->to_string();
        arr.push_back(j);
    }
    return arr;
}

// Breadth-first search along R-edges forward and E-edges both ways.
struct Reach {
    std::vector<int> order;
    std::vector<int> parent_step;  // index into `steps`, -1 at the root
    std::vector<ArsmStep> steps;
    std::vector<char> seen;
};

Reach forward_reach(const FiniteARSM& sys, int start, const std::vector<std::vector<ArsmStep>>& out_steps) {
    Reach r;
    const int n = static_cast<int>(sys.elements.size());
    r.seen.assign(n, 0);
    r.parent_step.assign(n, -1);
    std::deque<int> q{start};
    r.seen[start] = 1;
    while (!q.empty()) {
        const int x = q.front();
        q.pop_front();
        r.order.push_back(x);
        for (const auto& st : out_steps[x]) {
            if (r.seen[st.to]) continue;
            r.seen[st.to] = 1;
            r.steps.push_back(st);
            r.parent_step[st.to] = static_cast<int>(r.steps.size()) - 1;
            q.push_back(st.to);
        }
    }
    return r;
}

std::vector<ArsmStep> path_to(const Reach& r, int target) {
    std::vector<ArsmStep> out;
    for (int x = target; r.parent_step[x] >= 0;) {
        const ArsmStep& st = r.steps[r.parent_step[x]];
        out.push_back(st);
        x = st.from;
    }
    std::reverse(out.begin(), out.end());
    return out;
}

std::vector<std::vector<ArsmStep>> adjacency(const FiniteARSM& sys) {
    std::vector<std::vector<ArsmStep>> out(sys.elements.size());
    for (int k = 0; k < static_cast<int>(sys.r_edges.size()); ++k) {
        const auto& e = sys.r_edges[k];
        out[e.src].push_back({true, k, 1, e.src, e.tgt});
    }
    for (int k = 0; k < static_cast<int>(sys.e_edges.size()); ++k) {
        const auto& e = sys.e_edges[k];
        out[e.src].push_back({false, k, 1, e.src, e.tgt});
        out[e.tgt].push_back({false, k, -1, e.tgt, e.src});
    }
    return out;
}

json steps_to_json(const FiniteARSM& sys, const std::vector<ArsmStep>& steps) {
    json arr = json::array();
    for (const auto& s : steps) {
        const ArsmEdge& e = s.is_r ? sys.r_edges[s.edge] : sys.e_edges[s.edge];
        json j{{"kind", s.is_r ? "R" : "E"}, {"from", sys.elements[s.from]}, {"to", sys.elements[s.to]}};
        if (!e.label.empty()) j["label"] = e.label;
        if (!s.is_r) j["dir"] = s.dir;
        arr.push_back(j);
    }
    return arr;
}

}  // namespace

FiniteARSM parse_arsm(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::exception& e) {
        throw ParseError(std::string("invalid JSON: ") + e.what());
    }
    FiniteARSM sys;
    try {
        for (const auto& e : j.at("elements")) {
            const std::string name = e.get<std::string>();
            if (std::find(sys.elements.begin(), sys.elements.end(), name) != sys.elements.end())
                throw ParseError("duplicate element '" + name + "'");
            sys.elements.push_back(name);
        }
        sys.r_edges = parse_edges(sys, j, "r_edges");
        sys.e_edges = parse_edges(sys, j, "e_edges");
        if (j.contains("order"))
            for (const auto& p : j["order"]) sys.order.push_back({endpoint(sys, p.at(0)), endpoint(sys, p.at(1))});
    } catch (const json::exception& e) {
        throw ParseError(std::string("malformed system: ") + e.what());
    }
    return sys;
}

FiniteARSM load_arsm(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open system file '" + path + "'");
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_arsm(ss.str());
}

std::string arsm_to_json(const FiniteARSM& sys) {
    json j;
    j["elements"] = sys.elements;
    j["r_edges"] = edges_to_json(sys, sys.r_edges);
    j["e_edges"] = edges_to_json(sys, sys.e_edges);
    if (!sys.order.empty()) {
        json o = json::array();
        for (auto [a, b] : sys.order) o.push_back({sys.elements[a], sys.elements[b]});
        j["order"] = o;
    }
    return j.dump(1);
}

ArsmReport analyze(const FiniteARSM& sys) {
    ArsmReport rep;
    const int n = static_cast<int>(sys.elements.size());
    UF ue(n), ua(n);
    for (const auto& e : sys.e_edges) {
        ue.unite(e.src, e.tgt);
        ua.unite(e.src, e.tgt);
    }
    for (const auto& e : sys.r_edges) ua.unite(e.src, e.tgt);
    rep.e_class = relabel(ue, n, rep.num_e_classes);
    rep.component = relabel(ua, n, rep.num_components);
    const int nc = rep.num_e_classes;

    // R-steps on E-classes.
    std::vector<std::set<int>> succ(nc);
    for (const auto& e : sys.r_edges) succ[rep.e_class[e.src]].insert(rep.e_class[e.tgt]);
    std::vector<int> colour(nc, 0);
    bool cycle = false;
    std::function<void(int)> dfs = [&](int c) {
        colour[c] = 1;
        for (int s : succ[c]) {
            if (colour[s] == 1) cycle = true;
            else if (colour[s] == 0) dfs(s);
        }
        colour[c] = 2;
    };
    for (int c = 0; c < nc; ++c)
        if (colour[c] == 0) dfs(c);
    rep.terminating = !cycle;

    std::set<int> normal_classes;
    for (int c = 0; c < nc; ++c)
        if (succ[c].empty()) normal_classes.insert(c);
    for (int x = 0; x < n; ++x)
        if (normal_classes.count(rep.e_class[x])) rep.normal_forms.push_back(x);
    rep.num_normal_classes = static_cast<int>(normal_classes.size());

    // Local branchings: two R-edges out of one E-class.
    const auto adj = adjacency(sys);
    std::vector<std::vector<int>> out_edges(nc);
    for (int k = 0; k < static_cast<int>(sys.r_edges.size()); ++k)
        out_edges[rep.e_class[sys.r_edges[k].src]].push_back(k);
    rep.locally_confluent = true;
    for (int c = 0; c < nc; ++c) {
        const auto& es = out_edges[c];
        for (size_t a = 0; a < es.size(); ++a) {
            for (size_t b = a + 1; b < es.size(); ++b) {
                LocalBranching lb;
                lb.source_class = c;
                lb.left_edge = es[a];
                lb.right_edge = es[b];
                Reach l = forward_reach(sys, sys.r_edges[es[a]].tgt, adj);
                Reach r = forward_reach(sys, sys.r_edges[es[b]].tgt, adj);
                for (int x : r.order) {
                    if (!l.seen[x]) continue;
                    lb.joinable = true;
                    lb.meet = x;
                    lb.left_path = path_to(l, x);
                    lb.right_path = path_to(r, x);
                    break;
                }
                if (!lb.joinable) rep.locally_confluent = false;
                rep.branchings.push_back(std::move(lb));
            }
        }
    }

    // Confluence: each class reaches exactly one normal class.
    if (rep.terminating) {
        std::vector<std::set<int>> nf(nc);
        std::vector<char> done(nc, 0);
        std::function<void(int)> collect = [&](int c) {
            if (done[c]) return;
            done[c] = 1;
            if (succ[c].empty()) nf[c].insert(c);
            for (int s : succ[c]) {
                collect(s);
                nf[c].insert(nf[s].begin(), nf[s].end());
            }
        };
        rep.confluent = true;
        for (int c = 0; c < nc; ++c) {
            collect(c);
            if (nf[c].size() != 1) rep.confluent = false;
        }
    }

    // Scalar coherence of E-cycles through potentials on a spanning forest.
    for (const auto& e : sys.e_edges) rep.scalars_present = rep.scalars_present || e.scalar.has_value();
    for (const auto& e : sys.r_edges) rep.scalars_present = rep.scalars_present || e.scalar.has_value();
    {
        std::vector<std::optional<Unit>> phi(n);
        std::vector<std::vector<std::pair<int, int>>> inc(n);  // (edge, side)
        for (int k = 0; k < static_cast<int>(sys.e_edges.size()); ++k) {
            inc[sys.e_edges[k].src].push_back({k, 0});
            inc[sys.e_edges[k].tgt].push_back({k, 1});
        }
        std::vector<char> tree(sys.e_edges.size(), 0);
        for (int s = 0; s < n; ++s) {
            if (phi[s]) continue;
            phi[s] = Unit();
            std::deque<int> q{s};
            while (!q.empty()) {
                const int x = q.front();
                q.pop_front();
                for (auto [k, side] : inc[x]) {
                    const auto& e = sys.e_edges[k];
                    const Unit u = e.scalar.value_or(Unit());
                    const int y = side == 0 ? e.tgt : e.src;
                    // src = u * tgt at the level of potentials.
                    const Unit py = side == 0 ? u.inverse() * *phi[x] : u * *phi[x];
                    if (!phi[y]) {
                        phi[y] = py;
                        tree[k] = 1;
                        q.push_back(y);
                    }
                }
            }
        }
        for (int k = 0; k < static_cast<int>(sys.e_edges.size()); ++k) {
            const auto& e = sys.e_edges[k];
            if (!(*phi[e.src] == e.scalar.value_or(Unit()) * *phi[e.tgt])) {
                rep.scalar_coherent = false;
                rep.incoherent_edges.push_back(k);
            }
        }
    }

    if (!sys.order.empty()) {
        std::set<std::pair<int, int>> gt(sys.order.begin(), sys.order.end());
        for (const auto& e : sys.r_edges)
            if (!gt.count({e.src, e.tgt})) rep.order_compatible = false;
    }
    return rep;
}

std::string report_to_json(const FiniteARSM& sys, const ArsmReport& rep) {
    json j;
    j["elements"] = sys.elements.size();
    j["e_classes"] = rep.num_e_classes;
    j["terminating"] = rep.terminating;
    json nfs = json::array();
    for (int x : rep.normal_forms) nfs.push_back(sys.elements[x]);
    j["normal_forms"] = nfs;
    j["normal_classes"] = rep.num_normal_classes;
    j["pi0"] = rep.num_components;
    j["locally_confluent"] = rep.locally_confluent;
    j["confluent"] = rep.confluent;
    json table = json::array();
    for (const auto& b : rep.branchings) {
        json e{{"left", sys.r_edges[b.left_edge].label.empty() ? std::to_string(b.left_edge)
                                                                 : sys.r_edges[b.left_edge].label},
               {"right", sys.r_edges[b.right_edge].label.empty() ? std::to_string(b.right_edge)
                                                                   : sys.r_edges[b.right_edge].label},
               {"source", sys.elements[sys.r_edges[b.left_edge].src]},
               {"joinable", b.joinable}};
        if (b.joinable) {
            e["meet"] = sys.elements[b.meet];
            e["left_path"] = steps_to_json(sys, b.left_path);
            e["right_path"] = steps_to_json(sys, b.right_path);
        }
        table.push_back(e);
    }
    j["local_branchings"] = table;
    j["scalars_present"] = rep.scalars_present;
    j["scalar_coherent"] = rep.scalar_coherent;
    if (!rep.incoherent_edges.empty()) {
        json bad = json::array();
        for (int k : rep.incoherent_edges)
            bad.push_back({sys.elements[sys.e_edges[k].src], sys.elements[sys.e_edges[k].tgt]});
        j["incoherent_e_edges"] = bad;
    }
    if (!sys.order.empty()) j["order_compatible"] = rep.order_compatible;
    return j.dump(1);
}

std::optional<ChurchRosser> church_rosser_witness(const FiniteARSM& sys, int x, int y) {
    const int n = static_cast<int>(sys.elements.size());
    if (x < 0 || y < 0 || x >= n || y >= n) throw ParseError("element index out of range");
    UF uf(n);
    for (const auto& e : sys.r_edges) uf.unite(e.src, e.tgt);
    for (const auto& e : sys.e_edges) uf.unite(e.src, e.tgt);
    if (uf.find(x) != uf.find(y))
        throw NotCongruent(sys.elements[x] + " and " + sys.elements[y] + " are not congruent");
    if (x == y) return ChurchRosser{{}, {}, x};
    const auto adj = adjacency(sys);
    Reach a = forward_reach(sys, x, adj);
    Reach b = forward_reach(sys, y, adj);
    for (int z : b.order)
        if (a.seen[z]) return ChurchRosser{path_to(a, z), path_to(b, z), z};
    return std::nullopt;
}

FiniteARSM arsm_from_ruleset(const Ruleset& rs, const std::vector<int>& word, const std::vector<int>& target, int obj,
                             int max_layers) {
    const Signature& sig = rs.sig;
    FiniteARSM sys;
    std::unordered_map<Diagram, int, DiagramHash> ids;
    std::vector<Diagram> diagrams;
    auto intern = [&](const Diagram& d) {
        auto it = ids.find(d);
        if (it != ids.end()) return it->second;
        const int k = sys.add_element(diagram_brief(sig, d));
        ids.emplace(d, k);
        diagrams.push_back(d);
        return k;
    };
    std::function<void(Diagram&, const std::vector<int>&, int)> grow = [&](Diagram& d, const std::vector<int>& w,
                                                                          int left) {
        if (w == target) intern(tidy(rs, d).diagram);
        if (left == 0) return;
        for (int g = 0; g < static_cast<int>(sig.gens.size()); ++g) {
            const Generator& gen = sig.gens[g];
            for (int p = 0; p + gen.n_in() <= static_cast<int>(w.size()); ++p) {
                if (!std::equal(gen.src.begin(), gen.src.end(), w.begin() + p)) continue;
                d.layers.push_back({g, p, fresh_uid()});
                if (is_legal(sig, d)) grow(d, apply_layer(sig, w, d.layers.back()), left - 1);
                d.layers.pop_back();
            }
        }
    };
    Diagram start = identity_diagram(obj, word);
    grow(start, word, max_layers);
    for (size_t k = 0; k < diagrams.size(); ++k) {
        const Diagram d = diagrams[k];
        const int src = static_cast<int>(k);
        for (const auto& r : find_redexes(rs, d, RedexPolicy::Admissible)) {
            std::vector<Term> out = rewrite_aligned(rs, r);
            Unit c;
            if (out.size() != 1 || !out[0].coeff.as_unit(c)) continue;
            Tidy t = tidy(rs, out[0].diagram);
            const int tgt = intern(t.diagram);
            sys.r_edges.push_back({src, tgt, r.instance, r.scalar * c * t.scalar});
        }
        for (const auto& nb : e_neighbors(rs, d)) {
            Tidy t = tidy(rs, nb.diagram);
            auto it = ids.find(t.diagram);
            if (it == ids.end() || it->second == src) continue;
            sys.e_edges.push_back({src, it->second, nb.move.kind, nb.move.scalar * t.scalar});
        }
    }
    return sys;
}

}  // namespace lgr
