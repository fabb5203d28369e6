// Linear rewriting modulo E: vectors of diagrams merged up to congruence,
// redexes found up to E with alignment witnesses, positive steps,
// termination counters and normalization strategies.
#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "lgr/modulo.hpp"

namespace lgr {

constexpr long kDefaultFuel = 10000;
constexpr long kDefaultMergeBudget = 20000;

struct Term {
    RingElement coeff;
    Diagram diagram;
};

// A linear combination of diagrams.  Canonical vectors hold tidy diagrams
// with nonzero coefficients, pairwise non-congruent within the merge budget.
struct Vector {
    std::vector<Term> terms;
    long congruence_merges = 0;  // merges that needed a congruence search
    long unknown_pairs = 0;      // pairs left separate on an inconclusive search
    long merge_budget = kDefaultMergeBudget;

    bool is_zero() const { return terms.empty(); }
    static Vector monomial(const Diagram& d, const RingElement& c = RingElement(1));
    std::string to_string(const Signature& sig) const;
};

// Adds c * d to v, tidying d and merging it with a congruent term.
void add_term(const Ruleset& rs, Vector& v, const RingElement& c, const Diagram& d,
              long budget = kDefaultMergeBudget);
Vector canonicalize(const Ruleset& rs, const Vector& v, long budget = kDefaultMergeBudget);

// Stable name of a strand within one diagram: "c<key>" for closed strands,
// "o" followed by its boundary positions otherwise.
std::string strand_identity(const Strand& s);

enum class RedexPolicy { Admissible, All };

// A match of an R-rule inside a host diagram, up to E.
struct Redex {
    int rule = -1;  // index into rules_R
    std::string rule_name;
    std::string instance;
    Diagram host;
    std::vector<EMove> alignment;  // host -> aligned
    Unit scalar;                   // host = scalar * aligned
    Diagram aligned;               // contains the rule source literally
    int layer = 0;                 // window start in `aligned`
    int anchor = 0;                // horizontal shift of the window
    int host_layer = 0;            // location used for ordering
    int host_anchor = 0;
    std::vector<std::string> strands;  // strand identities (neck and squeeze rules)
    std::vector<std::uint32_t> uids;   // host generator uids involved
    bool admissible = true;
};

enum class Strategy { Priority, Position, Reverse, Random };
Strategy strategy_from_string(const std::string& s);
std::string to_string(Strategy s);

// Every redex of `d` (one per combinatorial occurrence), sorted by priority,
// then layer, then anchor.
std::vector<Redex> find_redexes(const Ruleset& rs, const Diagram& d, RedexPolicy policy = RedexPolicy::Admissible);

// The first admissible redex in the order of `strategy`.
std::optional<Redex> choose_redex(const Ruleset& rs, const Diagram& d, Strategy strategy,
                                  std::mt19937_64* rng = nullptr);

// Rewrites the aligned host of a redex by its rule, without the host scalar:
// aligned = sum of the returned coefficient/diagram pairs.
std::vector<Term> rewrite_aligned(const Ruleset& rs, const Redex& r);

struct RewriteStep {
    Redex redex;
    std::size_t index = 0;  // rewritten term of `before`
    RingElement coeff;      // its coefficient
    bool positive = true;
    bool decreasing = true;  // host counters exceed those of every produced monomial
    Vector before;
    Vector after;
};

// Replaces term `index` by its rewrite.  Throws StaleRedex when the redex
// was computed for a different diagram.
RewriteStep apply_step(const Ruleset& rs, const Vector& v, std::size_t index, const Redex& r,
                       long merge_budget = kDefaultMergeBudget, bool merge = true);

struct NormalizeOptions {
    Strategy strategy = Strategy::Priority;
    long fuel = kDefaultFuel;
    std::uint64_t seed = 0;
    long merge_budget = kDefaultMergeBudget;
    bool record_vectors = true;
};

struct NormalizeResult {
    Vector result;
    std::vector<RewriteStep> steps;
    long order_violations = 0;
};

// Throws FuelExhausted when more than `fuel` steps are needed.
NormalizeResult normalize(const Ruleset& rs, const Vector& v, const NormalizeOptions& opt = {});
NormalizeResult normalize(const Ruleset& rs, const Diagram& d, const NormalizeOptions& opt = {});

bool is_normal(const Ruleset& rs, const Diagram& d);

enum class OrderResult { Greater, Less, Equal, Incomparable };
std::string to_string(OrderResult r);
OrderResult order_compare(const Ruleset& rs, const Diagram& a, const Diagram& b);
// Multiset extension on projective supports.
OrderResult order_compare(const Ruleset& rs, const Vector& a, const Vector& b);

// Equality of vectors up to E with exact scalars: Yes, No, or Unknown when a
// congruence search was inconclusive.
Verdict vectors_congruent(const Ruleset& rs, const Vector& a, const Vector& b, long budget = kDefaultMergeBudget);

// Moves a redex to a congruent host: `path` leads from `new_host` to the old host.
Redex transport_redex(const Redex& r, const Diagram& new_host, const std::vector<EMove>& path);

// Factorization of a non-positive step f on term `index` of an unmerged
// vector as h^-1 o g with positive g and h of length at most one.
struct Factorization {
    bool nonpositive = false;
    bool ok = false;
    Verdict verdict = Verdict::Unknown;
    RewriteStep f;
    std::vector<RewriteStep> g;
    std::vector<RewriteStep> h;
    Vector g_end;
    Vector h_end;
};
Factorization factor_step(const Ruleset& rs, const Vector& v, std::size_t index, const Redex& r,
                          long budget = kDefaultMergeBudget);

}  // namespace lgr
