// Command-line front end: normalize, congruent, degree, basis,
// check-branchings, check-ruleset, replay and arsm.
//
// Exit status: 0 when every check passes, 1 on a check failure, 2 on an
// input error.
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "lgr/arsm.hpp"
#include "lgr/branching.hpp"
#include "lgr/errors.hpp"
#include "lgr/foam.hpp"
#include "lgr/io.hpp"

namespace {

using namespace lgr;

struct Flags {
    long budget = kDefaultCongruenceBudget;
    long fuel = kDefaultFuel;
    std::string strategy = "priority";
    std::string variant;
    std::uint64_t seed = 0;
    bool human = false;
    int d = 0;
};

std::string resolve_path(const std::string& arg) {
    if (std::filesystem::exists(arg)) return arg;
    const std::string shipped = data_path(arg);
    if (std::filesystem::exists(shipped)) return shipped;
    throw ParseError("cannot find '" + arg + "'");
}

Ruleset load_rules(const std::string& arg, const Flags& f) {
    if (arg == "foam" || arg == "foam'" || arg == "miniP" || arg == "s3")
        return suite_ruleset(arg, f.d > 0 ? f.d : 3);
    Ruleset rs = load_ruleset(resolve_path(arg), f.d);
    if (!f.variant.empty() && rs.sig.is_foam()) rs = build_instance(rs.sig.d, foam_variant_from_string(f.variant));
    return rs;
}

Diagram load_diagram(const Ruleset& rs, const std::string& arg) {
    const std::string text = arg.find('|') != std::string::npos ? arg : read_text_file(resolve_path(arg));
    Diagram d = parse_diagram_text(rs.sig, text);
    if (!is_legal(rs.sig, d)) throw IllegalDiagram("'" + arg + "' is not a legal diagram");
    return d;
}

void print_json(const Json& j, bool human) { std::cout << (human ? j.dump(2) : j.dump()) << "\n"; }

int cmd_normalize(const Flags& f, const std::string& rules, const std::string& diag, const std::string& cert) {
    Ruleset rs = load_rules(rules, f);
    Diagram d = load_diagram(rs, diag);
    NormalizeOptions opt;
    opt.strategy = strategy_from_string(f.strategy);
    opt.fuel = f.fuel;
    opt.seed = f.seed;
    NormalizeResult nr = normalize(rs, d, opt);
    std::cout << nr.result.to_string(rs.sig) << "\n";
    if (f.human)
        std::cout << "steps=" << nr.steps.size() << " order_violations=" << nr.order_violations
                  << " unknown_pairs=" << nr.result.unknown_pairs << "\n";
    if (!cert.empty()) {
        Json j{{"input", diagram_to_text(rs.sig, d)},
               {"result", vector_to_json(rs.sig, nr.result)},
               {"steps", steps_to_json(rs.sig, nr.steps)}};
        std::ofstream(cert) << j.dump(1) << "\n";
    }
    return nr.order_violations == 0 ? 0 : 1;
}

int cmd_congruent(const Flags& f, const std::string& rules, const std::string& a, const std::string& b,
                  const std::string& witness) {
    Ruleset rs = load_rules(rules, f);
    Diagram d1 = load_diagram(rs, a), d2 = load_diagram(rs, b);
    CongruenceResult cr = congruent_modulo(rs, d1, d2, f.budget);
    if (cr.verdict == Verdict::Yes) {
        std::cout << "YES scalar=" << cr.scalar.to_string() << "\n";
        if (!witness.empty()) std::ofstream(witness) << witness_to_json(rs.sig, cr.witness).dump(1) << "\n";
        return 0;
    }
    std::cout << to_string(cr.verdict);
    if (!cr.reason.empty()) std::cout << " reason=" << cr.reason;
    std::cout << "\n";
    return 1;
}

int cmd_degree(const Flags& f, const std::string& rules, const std::string& diag) {
    Ruleset rs = load_rules(rules, f);
    Diagram d = load_diagram(rs, diag);
    std::cout << degree(rs.sig, d).to_string() << "\n";
    return 0;
}

int cmd_basis(const Flags& f, const std::string& src, const std::string& tgt, const std::string& obj_name) {
    if (f.d < 1) throw ParseError("basis needs --d");
    Ruleset rs = build_instance(f.d, foam_variant_from_string(f.variant.empty() ? "gfoam" : f.variant));
    const Signature& sig = rs.sig;
    std::vector<int> w = parse_word(sig, src), w2 = parse_word(sig, tgt);
    int obj = -1;
    if (!obj_name.empty()) {
        obj = sig.object_id(obj_name);
    } else {
        for (int o = 0; o < static_cast<int>(sig.objects.size()) && obj < 0; ++o) {
            const int l1 = sig.left_object(w, o), l2 = sig.left_object(w2, o);
            if (l1 >= 0 && l1 == l2) obj = o;
        }
        if (obj < 0) throw NotParallel("no right object makes the words parallel");
    }
    std::vector<BasisElement> basis = hom_basis(rs, w, w2, obj);
    const int circles = boundary_circles(sig, w, w2, obj).count;
    bool ok = basis.size() == (std::size_t{1} << circles);
    Json elems = Json::array();
    for (const auto& e : basis) {
        const bool reduced = is_reduced(rs, e.diagram);
        ok = ok && reduced;
        elems.push_back({{"delta", e.delta},
                         {"diagram", diagram_to_text(sig, e.diagram)},
                         {"degree", degree(sig, e.diagram).to_string()},
                         {"reduced", reduced}});
    }
    if (f.human) {
        for (const auto& e : elems)
            std::cout << e["diagram"].get<std::string>() << "  degree=" << e["degree"].get<std::string>()
                      << (e["reduced"].get<bool>() ? "" : "  NOT REDUCED") << "\n";
        std::cout << "dimension " << basis.size() << " (boundary circles " << circles << ")\n";
    } else {
        print_json({{"object", sig.objects[obj]}, {"circles", circles}, {"dimension", basis.size()}, {"basis", elems}},
                   false);
    }
    return ok ? 0 : 1;
}

int cmd_check_branchings(const Flags& f, const std::string& rules) {
    Ruleset rs = load_rules(rules, f);
    JoinOptions opt;
    opt.fuel = f.fuel;
    SuiteReport rep = critical_suite(rs.id, rs, opt);
    if (f.human) {
        for (const auto& e : rep.entries)
            std::cout << (e.passed() ? "PASS " : "FAIL ") << e.branching_id << " " << to_string(e.certificate.status)
                      << (e.certificate.message.empty() ? "" : "  " + e.certificate.message) << "\n";
        std::cout << (rep.all_passed() ? "all branchings certified" : "some branchings failed") << "\n";
    } else {
        print_json(suite_to_json(rep), false);
    }
    return rep.all_passed() ? 0 : 1;
}

int cmd_check_ruleset(const Flags& f, const std::string& rules) {
    Ruleset rs = load_rules(rules, f);
    Json j{{"id", rs.id},
           {"family", rs.sig.family},
           {"rules_R", rs.rules_R.size()},
           {"rules_E", rs.rules_E.size()},
           {"homogeneous", true},
           {"adapted", true},
           {"warnings", rs.warnings}};
    if (rs.sig.is_foam()) j["d"] = rs.sig.d;
    if (f.human) {
        std::cout << rs.id << ": " << rs.rules_R.size() << " R rules, " << rs.rules_E.size()
                  << " E rules, homogeneous and adapted\n";
        for (const auto& w : rs.warnings) std::cout << "warning: " << w << "\n";
    } else {
        print_json(j, false);
    }
    return 0;
}

int cmd_replay(const Flags& f, const std::string& rules, const std::string& file) {
    Ruleset rs = load_rules(rules, f);
    CongruenceWitness w = witness_from_json(rs.sig, read_json_file(resolve_path(file)));
    Unit s;
    Diagram reached;
    try {
        reached = replay(rs, w.source, w.moves, &s);
    } catch (const ReplayError& e) {
        std::cout << "FAIL " << e.what() << "\n";
        return 1;
    }
    const bool target_ok = reached == w.target;
    const bool scalar_ok = s == w.scalar;
    if (target_ok && scalar_ok) {
        std::cout << "OK scalar=" << s.to_string() << " moves=" << w.moves.size() << "\n";
        return 0;
    }
    std::cout << "FAIL" << (target_ok ? "" : " target differs") << (scalar_ok ? "" : " scalar " + s.to_string()) << "\n";
    return 1;
}

int cmd_arsm(const Flags& f, const std::string& action, const std::string& file, const std::string& x,
             const std::string& y) {
    FiniteARSM sys = load_arsm(resolve_path(file));
    if (action == "analyze") {
        ArsmReport rep = analyze(sys);
        const bool ok = rep.terminating && rep.locally_confluent && rep.confluent && rep.scalar_coherent &&
                        rep.order_compatible;
        if (f.human) {
            std::cout << "elements " << sys.elements.size() << ", E-classes " << rep.num_e_classes << "\n"
                      << "terminating " << rep.terminating << ", locally confluent " << rep.locally_confluent
                      << ", confluent " << rep.confluent << ", scalar coherent " << rep.scalar_coherent << "\n"
                      << "normal classes " << rep.num_normal_classes << ", pi0 " << rep.num_components << "\n";
        } else {
            std::cout << Json::parse(report_to_json(sys, rep)).dump() << "\n";
        }
        return ok ? 0 : 1;
    }
    if (action == "church-rosser") {
        auto cr = church_rosser_witness(sys, sys.index(x), sys.index(y));
        if (!cr) {
            std::cout << "no common reduct\n";
            return 1;
        }
        std::cout << "meet " << sys.elements[cr->meet] << " (" << cr->g.size() << " and " << cr->h.size()
                  << " steps)\n";
        return 0;
    }
    throw ParseError("unknown arsm action '" + action + "' (analyze, church-rosser)");
}

int exit_code(const Error& e) {
    static const std::set<std::string> failures = {"FuelExhausted", "HomogeneityError", "AdaptednessError",
                                                   "NotCongruent", "ReplayError"};
    return failures.count(e.kind()) ? 1 : 2;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Linear Gray rewriting modulo: normalization, congruence and certificates"};
    app.require_subcommand(1);
    Flags f;
    auto common = [&](CLI::App* sub) {
        sub->add_option("--budget", f.budget, "congruence search budget (states)");
        sub->add_option("--fuel", f.fuel, "maximum number of rewriting steps");
        sub->add_option("--strategy", f.strategy, "priority, position, reverse or random");
        sub->add_option("--variant", f.variant, "foam variant: gfoam or gfoam-prime");
        sub->add_option("--seed", f.seed, "seed for randomized strategies");
        sub->add_option("--d", f.d, "foam parameter d");
        sub->add_flag("--human", f.human, "human-readable output");
    };
    std::string rules, a, b, out_file, src, tgt, obj, action;

    auto* normalize_cmd = app.add_subcommand("normalize", "normalize a diagram");
    normalize_cmd->add_option("ruleset", rules)->required();
    normalize_cmd->add_option("diagram", a)->required();
    normalize_cmd->add_option("--certificate", out_file, "write the step list as JSON");
    common(normalize_cmd);

    auto* congruent_cmd = app.add_subcommand("congruent", "decide E-congruence of two diagrams");
    congruent_cmd->add_option("ruleset", rules)->required();
    congruent_cmd->add_option("left", a)->required();
    congruent_cmd->add_option("right", b)->required();
    congruent_cmd->add_option("--witness", out_file, "write the witness as JSON");
    common(congruent_cmd);

    auto* degree_cmd = app.add_subcommand("degree", "degree of a diagram");
    degree_cmd->add_option("ruleset", rules)->required();
    degree_cmd->add_option("diagram", a)->required();
    common(degree_cmd);

    auto* basis_cmd = app.add_subcommand("basis", "basis of a foam hom-space");
    basis_cmd->add_option("--src", src, "bottom word, e.g. \"down_1 up_1\"");
    basis_cmd->add_option("--tgt", tgt, "top word");
    basis_cmd->add_option("--obj", obj, "right object (default: first parallel one)");
    common(basis_cmd);

    auto* branchings_cmd = app.add_subcommand("check-branchings", "certify the critical branchings");
    branchings_cmd->add_option("ruleset", rules)->required();
    common(branchings_cmd);

    auto* ruleset_cmd = app.add_subcommand("check-ruleset", "validate a ruleset file");
    ruleset_cmd->add_option("ruleset", rules)->required();
    common(ruleset_cmd);

    auto* replay_cmd = app.add_subcommand("replay", "verify a congruence witness file");
    replay_cmd->add_option("ruleset", rules)->required();
    replay_cmd->add_option("witness", a)->required();
    common(replay_cmd);

    auto* arsm_cmd = app.add_subcommand("arsm", "analyze a finite abstract system");
    arsm_cmd->add_option("action", action, "analyze or church-rosser")->required();
    arsm_cmd->add_option("file", a)->required();
    arsm_cmd->add_option("x", b, "first element (church-rosser)");
    arsm_cmd->add_option("y", src, "second element (church-rosser)");
    common(arsm_cmd);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        if (*normalize_cmd) return cmd_normalize(f, rules, a, out_file);
        if (*congruent_cmd) return cmd_congruent(f, rules, a, b, out_file);
        if (*degree_cmd) return cmd_degree(f, rules, a);
        if (*basis_cmd) return cmd_basis(f, src, tgt, obj);
        if (*branchings_cmd) return cmd_check_branchings(f, rules);
        if (*ruleset_cmd) return cmd_check_ruleset(f, rules);
        if (*replay_cmd) return cmd_replay(f, rules, a);
        if (*arsm_cmd) return cmd_arsm(f, action, a, b, src);
    } catch (const Error& e) {
        std::cerr << e.what() << "\n";
        return exit_code(e);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}
