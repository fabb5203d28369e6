// Branching enumeration, joins with certificates and the critical suites.
#include "lgr/branching.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <set>

#include "lgr/errors.hpp"
#include "lgr/foam.hpp"

namespace lgr {

std::string to_string(BranchingKind k) {
    switch (k) {
        case BranchingKind::Independent: return "independent";
        case BranchingKind::Overlapping: return "overlapping";
        case BranchingKind::ZigzagPair: return "zigzag";
    }
    return "overlapping";
}

std::string to_string(JoinStatus s) {
    switch (s) {
        case JoinStatus::Confluent: return "Confluent";
        case JoinStatus::Tamed: return "Tamed";
        case JoinStatus::Failed: return "Failed";
    }
    return "Failed";
}

namespace {

std::set<int> touched_strands(const StrandGraph& sg, const Diagram& host, const Redex& r) {
    std::set<int> layers;
    for (auto uid : r.uids)
        for (int k = 0; k < static_cast<int>(host.layers.size()); ++k)
            if (host.layers[k].uid == uid) layers.insert(k);
    std::set<int> out;
    for (int s = 0; s < static_cast<int>(sg.strands.size()); ++s) {
        for (int k : sg.strands[s].layers)
            if (layers.count(k)) out.insert(s);
        const std::string name = strand_identity(sg.strands[s]);
        if (std::find(r.strands.begin(), r.strands.end(), name) != r.strands.end()) out.insert(s);
    }
    return out;
}

bool disjoint(const std::vector<std::uint32_t>& a, const std::vector<std::uint32_t>& b) {
    for (auto x : a)
        if (std::find(b.begin(), b.end(), x) != b.end()) return false;
    return true;
}

bool disjoint(const std::set<int>& a, const std::set<int>& b) {
    for (int x : a)
        if (b.count(x)) return false;
    return true;
}

bool dominated_by(const Ruleset& rs, const Diagram& source, const std::vector<RewriteStep>& steps) {
    for (const auto& st : steps)
        for (const auto& t : st.after.terms)
            if (order_compare(rs, source, t.diagram) != OrderResult::Greater) return false;
    return true;
}

std::string redex_label(const Redex& r) {
    return r.instance + "@" + std::to_string(r.host_layer) + ":" + std::to_string(r.host_anchor);
}

struct SideResult {
    bool ok = false;
    std::vector<RewriteStep> steps;
    Vector end;
    std::string message;
};

SideResult run_side(const Ruleset& rs, const Diagram& source, const Redex& r, const JoinOptions& opt) {
    SideResult out;
    try {
        RewriteStep first = apply_step(rs, Vector::monomial(source), 0, r, opt.budget, true);
        NormalizeOptions no;
        no.fuel = opt.fuel;
        no.merge_budget = opt.budget;
        NormalizeResult nr = normalize(rs, first.after, no);
        out.steps.push_back(std::move(first));
        for (auto& s : nr.steps) out.steps.push_back(std::move(s));
        out.end = nr.result;
        out.ok = true;
    } catch (const Error& e) {
        out.message = e.what();
    }
    return out;
}

JoinCertificate join_zigzag(const Ruleset& rs, const Branching& b, const JoinOptions& opt) {
    JoinCertificate c;
    auto side = [&](const ZigzagPair& z, std::vector<EMove>& moves, Unit& scalar, Diagram& end) {
        Diagram d = b.source;
        auto m = straighten_pair(rs, d, z.cup, z.cap);
        if (!m) return false;
        Tidy t = tidy(rs, d);
        moves = *m;
        moves.insert(moves.end(), t.moves.begin(), t.moves.end());
        scalar = path_scalar(moves);
        end = t.diagram;
        return true;
    };
    Diagram le, re;
    if (!side(b.left_zigzag, c.left_moves, c.left_scalar, le) ||
        !side(b.right_zigzag, c.right_moves, c.right_scalar, re)) {
        c.message = "a zigzag could not be straightened";
        return c;
    }
    c.left_end = Vector::monomial(le, RingElement(c.left_scalar));
    c.right_end = Vector::monomial(re, RingElement(c.right_scalar));
    CongruenceResult cr = congruent_modulo(rs, le, re, opt.budget);
    if (cr.verdict != Verdict::Yes) {
        c.message = "the straightened diagrams are not congruent (" + to_string(cr.verdict) + ")";
        return c;
    }
    c.closing = cr.witness;
    if (!(c.left_scalar * cr.scalar == c.right_scalar)) {
        c.message = "scalars differ: " + c.left_scalar.to_string() + " * " + cr.scalar.to_string() + " vs " +
                    c.right_scalar.to_string();
        return c;
    }
    c.status = JoinStatus::Confluent;
    return c;
}

}  // namespace

std::vector<Branching> enumerate_branchings(const Ruleset& rs, const Diagram& d, RedexPolicy policy) {
    std::vector<Redex> rx = find_redexes(rs, d, policy);
    StrandGraph sg = strand_graph(rs.sig, d);
    std::vector<std::set<int>> strands;
    for (const auto& r : rx) strands.push_back(touched_strands(sg, d, r));
    std::vector<Branching> out;
    for (size_t a = 0; a < rx.size(); ++a) {
        for (size_t b = a + 1; b < rx.size(); ++b) {
            Branching br;
            br.id = redex_label(rx[a]) + "/" + redex_label(rx[b]);
            br.source = d;
            br.left = rx[a];
            br.right = rx[b];
            const bool indep = disjoint(rx[a].uids, rx[b].uids) && disjoint(strands[a], strands[b]);
            br.kind = indep ? BranchingKind::Independent : BranchingKind::Overlapping;
            out.push_back(std::move(br));
        }
    }
    return out;
}

std::vector<Branching> zigzag_branchings(const Ruleset& rs, const Diagram& d) {
    std::vector<ZigzagPair> zs = zigzag_pairs(rs.sig, d);
    std::vector<Branching> out;
    for (size_t a = 0; a < zs.size(); ++a) {
        for (size_t b = a + 1; b < zs.size(); ++b) {
            if (zs[a].cup != zs[b].cup && zs[a].cap != zs[b].cap) continue;
            Branching br;
            br.id = "zigzag(" + std::to_string(zs[a].cup) + "," + std::to_string(zs[a].cap) + ")/(" +
                    std::to_string(zs[b].cup) + "," + std::to_string(zs[b].cap) + ")";
            br.source = d;
            br.kind = BranchingKind::ZigzagPair;
            br.left_zigzag = zs[a];
            br.right_zigzag = zs[b];
            out.push_back(std::move(br));
        }
    }
    return out;
}

JoinCertificate join(const Ruleset& rs, const Branching& b, const JoinOptions& opt) {
    if (b.kind == BranchingKind::ZigzagPair) return join_zigzag(rs, b, opt);
    JoinCertificate c;
    SideResult l = run_side(rs, b.source, b.left, opt);
    SideResult r = run_side(rs, b.source, b.right, opt);
    if (!l.ok || !r.ok) {
        c.message = "normalization failed: " + (l.ok ? r.message : l.message);
        return c;
    }
    c.left = std::move(l.steps);
    c.right = std::move(r.steps);
    c.left_end = l.end;
    c.right_end = r.end;
    c.dominated = dominated_by(rs, b.source, c.left) && dominated_by(rs, b.source, c.right);
    const Verdict v = vectors_congruent(rs, l.end, r.end, opt.budget);
    if (v != Verdict::Yes) {
        c.message = "normal forms differ (" + to_string(v) + "): " + l.end.to_string(rs.sig) + " vs " +
                    r.end.to_string(rs.sig);
        return c;
    }
    const bool short_enough =
        static_cast<int>(c.left.size()) <= opt.depth && static_cast<int>(c.right.size()) <= opt.depth;
    if (short_enough) {
        c.status = JoinStatus::Confluent;
    } else if (c.dominated) {
        c.status = JoinStatus::Tamed;
    } else {
        c.message = "joined beyond the depth bound through monomials not below the source";
    }
    return c;
}

bool replay_certificate(const Ruleset& rs, const Branching& b, const JoinCertificate& c, long budget) {
    if (c.status == JoinStatus::Failed) return false;
    try {
        if (b.kind == BranchingKind::ZigzagPair) {
            Unit ls, rs_, cs;
            Diagram le = replay(rs, b.source, c.left_moves, &ls);
            Diagram re = replay(rs, b.source, c.right_moves, &rs_);
            Diagram ce = replay(rs, c.closing.source, c.closing.moves, &cs);
            if (!(ls == c.left_scalar) || !(rs_ == c.right_scalar)) return false;
            if (!(c.closing.source == le) || !(ce == re)) return false;
            return ls * cs == rs_;
        }
        auto check_side = [&](const Redex& first, const std::vector<RewriteStep>& steps, const Vector& end) {
            if (steps.empty() || steps[0].redex.instance != first.instance) return false;
            Vector cur = Vector::monomial(b.source);
            for (size_t k = 0; k < steps.size(); ++k) {
                const RewriteStep& st = steps[k];
                if (k > 0 && vectors_congruent(rs, cur, st.before, budget) != Verdict::Yes) return false;
                RewriteStep again = apply_step(rs, st.before, st.index, st.redex, budget, true);
                if (vectors_congruent(rs, again.after, st.after, budget) != Verdict::Yes) return false;
                cur = again.after;
            }
            return vectors_congruent(rs, cur, end, budget) == Verdict::Yes;
        };
        if (!check_side(b.left, c.left, c.left_end) || !check_side(b.right, c.right, c.right_end)) return false;
        return vectors_congruent(rs, c.left_end, c.right_end, budget) == Verdict::Yes;
    } catch (const Error&) {
        return false;
    }
}

bool SuiteReport::all_passed() const {
    if (entries.empty()) return false;
    for (const auto& e : entries)
        if (!e.passed()) return false;
    return true;
}

Diagram legal_diagram(const Signature& sig, const std::string& word, const std::string& layers) {
    for (const auto& o : sig.objects) {
        try {
            Diagram d = parse_diagram_text(sig, o + " " + word + " | " + layers);
            if (is_legal(sig, d)) return d;
        } catch (const Error&) {
        }
    }
    throw IllegalDiagram("no object makes '" + word + " | " + layers + "' legal");
}

namespace {

std::string canonical_id(const std::string& id) {
    if (id == "foam" || id == "gfoam") return "foam";
    if (id == "foam'" || id == "foam_prime" || id == "foam-prime" || id == "gfoam-prime" || id == "gfoam'")
        return "foam'";
    if (id == "miniP" || id == "minip") return "miniP";
    if (id == "s3" || id == "S3" || id == "coxeter_s3") return "s3";
    throw UnknownRuleset("unknown ruleset id '" + id + "' (foam, foam', miniP, s3)");
}

struct Source {
    std::string name;
    std::string word;
    std::string layers;
    bool zigzag = false;
    int d = 0;  // foam parameter needed (0: the suite ruleset)
};

std::vector<Source> suite_sources(const std::string& id) {
    if (id == "foam" || id == "foam'") {
        return {
            {"zigzag_rcup", "", "rcup_1@0 ; rcup_1@0 ; rcap_1@1", true},
            {"zigzag_lcup", "", "lcup_1@0 ; lcup_1@0 ; lcap_1@1", true},
            {"zigzag_rcap", "up_1 down_1", "rcup_1@1 ; rcap_1@0 ; rcap_1@0", true},
            {"zigzag_lcap", "down_1 up_1", "lcup_1@1 ; lcap_1@0 ; lcap_1@0", true},
            {"B_nc", "up_1", "lcup_1@0 ; rcap_1@0"},
            {"B_sq_1", "down_1 up_1", "lcup_2@1 ; rcap_2@1"},
            {"B_sq_2", "up_2 down_2 up_1", "lcup_1@0 ; rcap_1@0"},
            {"nc_sq_1", "down_1 up_2 down_2 up_1", "rcap_2@1 ; dot_2@1"},
            {"nc_sq_2", "down_2 up_1 down_1 up_3 down_3 up_2", "rcap_1@1 ; lcup_1@1", false, 4},
        };
    }
    if (id == "miniP") {
        return {
            {"snake_left", "s s", "cup@1 ; cap@0 ; cap@0"},
            {"snake_right", "s s", "cup@1 ; cap@2 ; cap@0"},
        };
    }
    return {
        {"ss_sts", "x", "sigma@0 ; sigma@0 ; tau@0 ; sigma@0"},
        {"sts_ss", "x", "sigma@0 ; tau@0 ; sigma@0 ; sigma@0"},
        {"sts_sts", "x", "sigma@0 ; tau@0 ; sigma@0 ; tau@0 ; sigma@0"},
    };
}

std::string data_file(const std::string& id) {
    if (id == "foam") return "foam_d.json";
    if (id == "foam'") return "foam_d_prime.json";
    if (id == "miniP") return "miniP.json";
    return "coxeter_s3.json";
}

}  // namespace

const Ruleset& suite_ruleset(const std::string& raw, int d) {
    static std::mutex mu;
    static std::map<std::pair<std::string, int>, Ruleset> cache;
    const std::string id = canonical_id(raw);
    const bool foam = id == "foam" || id == "foam'";
    const int key_d = foam ? d : 0;
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find({id, key_d});
    if (it == cache.end())
        it = cache.emplace(std::make_pair(id, key_d), load_ruleset(data_path(data_file(id)), key_d)).first;
    return it->second;
}

SuiteReport critical_suite(const std::string& raw, const JoinOptions& opt) {
    const std::string id = canonical_id(raw);
    return critical_suite(id, suite_ruleset(id, 3), opt);
}

SuiteReport critical_suite(const std::string& raw, const Ruleset& rs, const JoinOptions& opt) {
    const std::string id = canonical_id(raw);
    SuiteReport rep;
    rep.ruleset_id = id;
    for (const auto& src : suite_sources(id)) {
        const Ruleset& use = (src.d > 0 && rs.sig.d < src.d) ? suite_ruleset(id, src.d) : rs;
        std::vector<Branching> bs;
        std::string error;
        try {
            Diagram d = legal_diagram(use.sig, src.word, src.layers);
            if (src.zigzag) {
                bs = zigzag_branchings(use, d);
            } else {
                bs = enumerate_branchings(use, d, RedexPolicy::Admissible);
            }
        } catch (const Error& e) {
            error = e.what();
        }
        if (bs.empty()) {
            SuiteEntry e;
            e.branching_id = src.name;
            e.ruleset = use.id;
            e.rules = &use;
            e.certificate.message = error.empty() ? "no branching found on the source" : error;
            rep.entries.push_back(std::move(e));
            continue;
        }
        for (size_t k = 0; k < bs.size(); ++k) {
            SuiteEntry e;
            e.branching_id = bs.size() == 1 ? src.name : src.name + "#" + std::to_string(k);
            e.ruleset = use.id;
            e.rules = &use;
            e.branching = bs[k];
            e.branching.id = e.branching_id + " " + bs[k].id;
            e.certificate = join(use, e.branching, opt);
            e.replayed = replay_certificate(use, e.branching, e.certificate);
            rep.entries.push_back(std::move(e));
        }
    }
    return rep;
}

}  // namespace lgr
