// Signature lookups and the gl2-foam signature builder.
#include "lgr/signature.hpp"

#include <cstdlib>

#include "lgr/errors.hpp"

namespace lgr {

int Signature::find_object(const std::string& name) const {
    auto it = object_index_.find(name);
    return it == object_index_.end() ? -1 : it->second;
}

int Signature::find_letter(const std::string& name) const {
    auto it = letter_index_.find(name);
    return it == letter_index_.end() ? -1 : it->second;
}

int Signature::find_gen(const std::string& name) const {
    auto it = gen_index_.find(name);
    return it == gen_index_.end() ? -1 : it->second;
}

int Signature::object_id(const std::string& name) const {
    int id = find_object(name);
    if (id < 0) throw ParseError("unknown object '" + name + "'");
    return id;
}

int Signature::letter_id(const std::string& name) const {
    int id = find_letter(name);
    if (id < 0) throw ParseError("unknown 1-generator '" + name + "'");
    return id;
}

int Signature::gen_id(const std::string& name) const {
    int id = find_gen(name);
    if (id < 0) throw ParseError("unknown 2-generator '" + name + "'");
    return id;
}

int Signature::left_object(const std::vector<int>& word, int right_obj) const {
    int obj = right_obj;
    for (auto it = word.rbegin(); it != word.rend() && obj >= 0; ++it) obj = act(*it, obj);
    return obj;
}

void Signature::add_object(const std::string& name, unsigned mask) {
    if (object_index_.count(name)) throw ParseError("duplicate object '" + name + "'");
    object_index_[name] = static_cast<int>(objects.size());
    objects.push_back(name);
    masks.push_back(mask);
    for (auto& l : letters) l.act.resize(objects.size(), -1);
    for (auto& g : gens)
        if (!g.allowed.empty()) g.allowed.resize(objects.size(), 0);
}

void Signature::add_letter(LetterType l) {
    if (letter_index_.count(l.name)) throw ParseError("duplicate 1-generator '" + l.name + "'");
    l.act.resize(objects.size(), -1);
    letter_index_[l.name] = static_cast<int>(letters.size());
    letters.push_back(std::move(l));
}

int Signature::add_generator(Generator g) {
    if (gen_index_.count(g.name)) throw ParseError("duplicate 2-generator '" + g.name + "'");
    const int n = g.n_in(), m = g.n_out();
    if (g.links.empty() && !g.passes_all) {
        if (n == 0 && m == 2) {
            g.links = {{0, 1}};
        } else if (n == 2 && m == 0) {
            g.links = {{0, 1}};
        } else if (g.kind == "cross" && n == 2 && m == 2) {
            g.links = {{0, 3}, {1, 2}};
        } else if (n == m) {
            for (int k = 0; k < n; ++k) g.links.push_back({k, n + k});
        } else if (n + m > 0) {
            g.passes_all = true;
        }
    }
    gen_index_[g.name] = static_cast<int>(gens.size());
    gens.push_back(std::move(g));
    return static_cast<int>(gens.size()) - 1;
}

std::string Signature::foam_object_name(unsigned mask, int d) {
    std::string out;
    int i = 1;
    while (i <= d) {
        if (i < d && (mask >> i & 1u)) {
            out += '2';
            i += 2;
        } else {
            out += '1';
            i += 1;
        }
    }
    return out;
}

int Signature::foam_gen(const std::string& kind, int colour) const {
    return find_gen(kind + "_" + std::to_string(colour));
}

namespace {
std::string orient_name(int o) { return o == 0 ? "up" : "down"; }
}  // namespace

int Signature::foam_cross(int colour1, int orient1, int colour2, int orient2) const {
    return find_gen("X_" + orient_name(orient1) + "_" + std::to_string(colour1) + "_" + orient_name(orient2) + "_" +
                    std::to_string(colour2));
}

bool Signature::foam_dot_allowed(int colour, int obj) const {
    unsigned m = masks[obj];
    bool left = colour >= 2 && (m >> (colour - 1) & 1u);
    bool right = colour <= d - 1 && (m >> colour & 1u);
    return !left && !right;
}

Signature build_foam_signature(int d, const FoamDegrees& deg) {
    if (d < 1) throw ParseError("foam parameter d must be positive");
    Signature sig;
    sig.family = "gfoam";
    sig.d = d;
    // Legal bitmasks over bits 1..d-1 with no two adjacent bits set.
    const unsigned limit = 1u << d;
    for (unsigned mask = 0; mask < limit; mask += 2) {
        if (mask & (mask >> 1)) continue;
        sig.add_object(Signature::foam_object_name(mask, d), mask);
    }
    // Letters: up_i has the i-shaded side on its right, down_i on its left.
    for (int i = 1; i <= d - 1; ++i) {
        for (int o = 0; o < 2; ++o) {
            LetterType l;
            l.name = orient_name(o) + "_" + std::to_string(i);
            l.colour = i;
            l.orient = o;
            l.act.assign(sig.objects.size(), -1);
            for (size_t obj = 0; obj < sig.objects.size(); ++obj) {
                unsigned m = sig.masks[obj];
                bool set = m >> i & 1u;
                if ((o == 0) != set) continue;
                unsigned other = m ^ (1u << i);
                if (other & (other >> 1)) continue;
                l.act[obj] = sig.find_object(Signature::foam_object_name(other, d));
            }
            sig.add_letter(std::move(l));
        }
    }
    for (int j = 1; j <= d; ++j) {
        Generator g;
        g.name = "dot_" + std::to_string(j);
        g.kind = "dot";
        g.colour = j;
        g.degree = deg.dot;
        g.glyph = "*";
        g.allowed.assign(sig.objects.size(), 0);
        for (size_t obj = 0; obj < sig.objects.size(); ++obj) g.allowed[obj] = sig.foam_dot_allowed(j, obj);
        sig.add_generator(std::move(g));
    }
    for (int i = 1; i <= d - 1; ++i) {
        const int up = sig.foam_letter(i, 0), down = sig.foam_letter(i, 1);
        auto make = [&](const std::string& kind, std::vector<int> src, std::vector<int> tgt, GradingVector dg,
                        const std::string& glyph) {
            Generator g;
            g.name = kind + "_" + std::to_string(i);
            g.kind = kind;
            g.colour = i;
            g.src = std::move(src);
            g.tgt = std::move(tgt);
            g.degree = dg;
            g.glyph = glyph;
            sig.add_generator(std::move(g));
        };
        make("rcup", {}, {down, up}, deg.rcup, "U");
        make("rcap", {up, down}, {}, deg.rcap, "A");
        make("lcup", {}, {up, down}, deg.lcup, "u");
        make("lcap", {down, up}, {}, deg.lcap, "a");
    }
    for (int a = 1; a <= d - 1; ++a) {
        for (int b = 1; b <= d - 1; ++b) {
            if (std::abs(a - b) <= 1) continue;
            for (int oa = 0; oa < 2; ++oa) {
                for (int ob = 0; ob < 2; ++ob) {
                    Generator g;
                    g.name = "X_" + orient_name(oa) + "_" + std::to_string(a) + "_" + orient_name(ob) + "_" +
                             std::to_string(b);
                    g.kind = "cross";
                    g.colour = a;
                    g.orient = oa;
                    g.colour2 = b;
                    g.orient2 = ob;
                    const int la = sig.foam_letter(a, oa), lb = sig.foam_letter(b, ob);
                    g.src = {la, lb};
                    g.tgt = {lb, la};
                    g.degree = deg.cross;
                    g.glyph = "x";
                    sig.add_generator(std::move(g));
                }
            }
        }
    }
    return sig;
}

}  // namespace lgr
