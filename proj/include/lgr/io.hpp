// JSON forms of diagrams, vectors, witnesses, rewriting steps and reports.
#pragma once

#include <string>

#include "json.hpp"
#include "lgr/branching.hpp"
#include "lgr/rewrite.hpp"

namespace lgr {

using Json = nlohmann::json;

Json move_to_json(const EMove& m);
EMove move_from_json(const Json& j);
Json moves_to_json(const std::vector<EMove>& moves);
std::vector<EMove> moves_from_json(const Json& j);

Json vector_to_json(const Signature& sig, const Vector& v);

// {"source": text, "target": text, "scalar": "...", "moves": [...]}
Json witness_to_json(const Signature& sig, const CongruenceWitness& w);
CongruenceWitness witness_from_json(const Signature& sig, const Json& j);

Json redex_to_json(const Signature& sig, const Redex& r);
Json step_to_json(const Signature& sig, const RewriteStep& s);
Json steps_to_json(const Signature& sig, const std::vector<RewriteStep>& steps);

Json certificate_to_json(const Signature& sig, const Branching& b, const JoinCertificate& c);
// A list of {branching_id, status, certificate} objects.
Json suite_to_json(const SuiteReport& rep);

Json read_json_file(const std::string& path);  // throws ParseError
std::string read_text_file(const std::string& path);

}  // namespace lgr
