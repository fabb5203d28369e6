// JSON serialization for witnesses, steps, certificates and suite reports.
#include "lgr/io.hpp"

#include <fstream>
#include <sstream>

#include "lgr/errors.hpp"

namespace lgr {

namespace {

Unit unit_from_text(const std::string& text) {
    Unit u;
    if (!RingElement::parse(text).as_unit(u)) throw ParseError("scalar '" + text + "' is not a unit");
    return u;
}

}  // namespace

Json move_to_json(const EMove& m) {
    Json j{{"kind", m.kind},   {"variant", m.variant}, {"layer", m.layer},
           {"anchor", m.anchor}, {"dir", m.dir},       {"scalar", m.scalar.to_string()}};
    if (!m.rule.empty()) j["rule"] = m.rule;
    return j;
}

EMove move_from_json(const Json& j) {
    EMove m;
    try {
        m.kind = j.at("kind").get<std::string>();
        m.variant = j.value("variant", 0);
        m.layer = j.at("layer").get<int>();
        m.anchor = j.value("anchor", 0);
        m.dir = j.value("dir", 1);
        m.rule = j.value("rule", std::string());
        m.scalar = unit_from_text(j.value("scalar", std::string("1")));
    } catch (const Json::exception& e) {
        throw ParseError(std::string("malformed move: ") + e.what());
    }
    return m;
}

Json moves_to_json(const std::vector<EMove>& moves) {
    Json arr = Json::array();
    for (const auto& m : moves) arr.push_back(move_to_json(m));
    return arr;
}

std::vector<EMove> moves_from_json(const Json& j) {
    if (!j.is_array()) throw ParseError("moves must be a JSON array");
    std::vector<EMove> out;
    for (const auto& m : j) out.push_back(move_from_json(m));
    return out;
}

Json vector_to_json(const Signature& sig, const Vector& v) {
    Json arr = Json::array();
    for (const auto& t : v.terms) arr.push_back({{"coeff", t.coeff.to_string()}, {"diagram", diagram_to_text(sig, t.diagram)}});
    return arr;
}

Json witness_to_json(const Signature& sig, const CongruenceWitness& w) {
    return {{"source", diagram_to_text(sig, w.source)},
            {"target", diagram_to_text(sig, w.target)},
            {"scalar", w.scalar.to_string()},
            {"moves", moves_to_json(w.moves)}};
}

CongruenceWitness witness_from_json(const Signature& sig, const Json& j) {
    CongruenceWitness w;
    try {
        w.source = parse_diagram_text(sig, j.at("source").get<std::string>());
        if (j.contains("target")) w.target = parse_diagram_text(sig, j["target"].get<std::string>());
        w.scalar = unit_from_text(j.value("scalar", std::string("1")));
        w.moves = moves_from_json(j.at("moves"));
    } catch (const Json::exception& e) {
        throw ParseError(std::string("malformed witness: ") + e.what());
    }
    return w;
}

Json redex_to_json(const Signature& sig, const Redex& r) {
    return {{"rule", r.rule_name},
            {"instance", r.instance},
            {"host", diagram_to_text(sig, r.host)},
            {"alignment", moves_to_json(r.alignment)},
            {"alignment_scalar", r.scalar.to_string()},
            {"aligned", diagram_to_text(sig, r.aligned)},
            {"layer", r.layer},
            {"anchor", r.anchor},
            {"admissible", r.admissible}};
}

Json step_to_json(const Signature& sig, const RewriteStep& s) {
    Json j{{"redex", redex_to_json(sig, s.redex)},
           {"index", s.index},
           {"coeff", s.coeff.to_string()},
           {"positive", s.positive},
           {"decreasing", s.decreasing}};
    if (!s.before.terms.empty() || !s.after.terms.empty()) {
        j["before"] = s.before.to_string(sig);
        j["after"] = s.after.to_string(sig);
    }
    return j;
}

Json steps_to_json(const Signature& sig, const std::vector<RewriteStep>& steps) {
    Json arr = Json::array();
    for (const auto& s : steps) arr.push_back(step_to_json(sig, s));
    return arr;
}

Json certificate_to_json(const Signature& sig, const Branching& b, const JoinCertificate& c) {
    Json j{{"kind", to_string(c.status)}, {"branching", to_string(b.kind)}, {"source", diagram_to_text(sig, b.source)}};
    if (b.kind == BranchingKind::ZigzagPair) {
        j["left_moves"] = moves_to_json(c.left_moves);
        j["right_moves"] = moves_to_json(c.right_moves);
        j["left_scalar"] = c.left_scalar.to_string();
        j["right_scalar"] = c.right_scalar.to_string();
        j["closing"] = witness_to_json(sig, c.closing);
    } else {
        j["left"] = steps_to_json(sig, c.left);
        j["right"] = steps_to_json(sig, c.right);
        j["dominated"] = c.dominated;
    }
    j["left_end"] = c.left_end.to_string(sig);
    j["right_end"] = c.right_end.to_string(sig);
    if (!c.message.empty()) j["message"] = c.message;
    return j;
}

Json suite_to_json(const SuiteReport& rep) {
    Json arr = Json::array();
    for (const auto& e : rep.entries) {
        Json j{{"branching_id", e.branching_id},
               {"ruleset", e.ruleset},
               {"status", to_string(e.certificate.status)},
               {"replayed", e.replayed}};
        if (e.rules)
            j["certificate"] = certificate_to_json(e.rules->sig, e.branching, e.certificate);
        else
            j["certificate"] = {{"kind", to_string(e.certificate.status)}, {"message", e.certificate.message}};
        arr.push_back(j);
    }
    return arr;
}

std::string read_text_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open '" + path + "'");
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

Json read_json_file(const std::string& path) {
    try {
        return Json::parse(read_text_file(path));
    } catch (const Json::exception& e) {
        throw ParseError("invalid JSON in '" + path + "': " + e.what());
    }
}

}  // namespace lgr
