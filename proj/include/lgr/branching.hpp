// Local branchings of a rewriting system modulo E: enumeration on a given
// diagram, joining by normalization with replayable certificates, and the
// suites of critical branchings shipped for each instance.
#pragma once

#include <string>
#include <vector>

#include "lgr/rewrite.hpp"

namespace lgr {

enum class BranchingKind { Independent, Overlapping, ZigzagPair };
std::string to_string(BranchingKind k);

// Two one-step rewrites of the same source.  For R-branchings the redexes
// share their host (the mediating witness is empty); zigzag branchings
// straighten two different zigzags of one strand with E-moves.
struct Branching {
    std::string id;
    Diagram source;
    BranchingKind kind = BranchingKind::Overlapping;
    Redex left;
    Redex right;
    std::vector<EMove> mediating;  // left.host -> right.host
    ZigzagPair left_zigzag;
    ZigzagPair right_zigzag;
};

// All pairs of distinct redexes on `d`.  Two redexes are independent when
// they share no generator and no strand.
std::vector<Branching> enumerate_branchings(const Ruleset& rs, const Diagram& d,
                                            RedexPolicy policy = RedexPolicy::All);

// The zigzag branchings of `d`: pairs of zigzags sharing a cup or a cap.
std::vector<Branching> zigzag_branchings(const Ruleset& rs, const Diagram& d);

enum class JoinStatus { Confluent, Tamed, Failed };
std::string to_string(JoinStatus s);

struct JoinOptions {
    int depth = 12;             // steps per branch for a plain confluence
    long fuel = kDefaultFuel;   // steps per branch for a tamed congruence
    long budget = 50000;        // congruence budget
};

struct JoinCertificate {
    JoinStatus status = JoinStatus::Failed;
    // R-branchings: the first step and its normalizing continuation per side.
    std::vector<RewriteStep> left;
    std::vector<RewriteStep> right;
    Vector left_end;
    Vector right_end;
    // Zigzag branchings: E-paths from the source per side, with scalars.
    std::vector<EMove> left_moves;
    std::vector<EMove> right_moves;
    Unit left_scalar;
    Unit right_scalar;
    CongruenceWitness closing;  // left end -> right end
    bool dominated = true;      // every visited monomial is below the source
    std::string message;
};

JoinCertificate join(const Ruleset& rs, const Branching& b, const JoinOptions& opt = {});

// Re-applies every recorded step and move and checks that both sides close
// with matching scalars.
bool replay_certificate(const Ruleset& rs, const Branching& b, const JoinCertificate& c,
                        long budget = kDefaultMergeBudget);

struct SuiteEntry {
    std::string branching_id;
    std::string ruleset;
    const Ruleset* rules = nullptr;  // the ruleset the entry was joined in
    Branching branching;
    JoinCertificate certificate;
    bool replayed = false;
    bool passed() const { return certificate.status != JoinStatus::Failed && replayed; }
};

struct SuiteReport {
    std::string ruleset_id;
    std::vector<SuiteEntry> entries;
    bool all_passed() const;
};

// Loaded rulesets are cached per process; `id` is one of foam, foam',
// miniP, s3 (throws UnknownRuleset otherwise).
const Ruleset& suite_ruleset(const std::string& id, int d = 3);
SuiteReport critical_suite(const std::string& id, const JoinOptions& opt = {});
// Runs the suite of a caller-supplied ruleset of the given family; the
// entries refer to `rs`, which must outlive the report.
SuiteReport critical_suite(const std::string& id, const Ruleset& rs, const JoinOptions& opt = {});

// Parses "<letters> | <layers>" at the first object where it is legal.
Diagram legal_diagram(const Signature& sig, const std::string& word, const std::string& layers);

}  // namespace lgr
