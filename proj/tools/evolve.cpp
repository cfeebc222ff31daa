// Command-line front end: explore systems, check their properties, build and
// audit evolutions, play the transition game, run rewrite rules, and price
// normalizations. Verdict-style commands exit 0 / 1 / 2 for true / false /
// unknown; usage and input errors exit 3.

#include <algorithm>
#include <chrono>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "evolve/amalgam.hpp"
#include "evolve/base.hpp"
#include "evolve/dpo.hpp"
#include "evolve/equality.hpp"
#include "evolve/evolution.hpp"
#include "evolve/fragment.hpp"
#include "evolve/game.hpp"
#include "evolve/generic.hpp"
#include "evolve/instances.hpp"
#include "evolve/json_io.hpp"
#include "evolve/rewrite.hpp"
#include "evolve/system.hpp"

namespace {

using namespace evolve;

// ---------------------------------------------------------------- reports --

class Timer {
  public:
    Timer() : start_(std::chrono::steady_clock::now()) {}
    std::int64_t ms() const {
        auto d = std::chrono::steady_clock::now() - start_;
        return std::chrono::duration_cast<std::chrono::milliseconds>(d).count();
    }

  private:
    std::chrono::steady_clock::time_point start_;
};

// One uniform report envelope. Everything except timing_ms is a pure
// function of the configuration, so identical invocations print identically
// up to that one field.
struct Report {
    std::string command;
    Json config = Json::object();
    std::optional<Verdict> verdict;
    std::string detail;
    Json witness;  // null when absent
    Json extra = Json::object();

    Json to_json(const Timer& t) const {
        Json j{{"command", command}, {"config", config}, {"detail", detail}};
        if (verdict) j["verdict"] = to_string(*verdict);
        if (!witness.is_null()) j["witness"] = witness;
        for (auto it = extra.begin(); it != extra.end(); ++it) j[it.key()] = it.value();
        j["timing_ms"] = t.ms();
        return j;
    }
};

std::string format_flag;  // "text" | "json" | "dot"

void print_report(const Report& rep, const Timer& t) {
    if (format_flag == "json") {
        std::cout << rep.to_json(t).dump(2) << "\n";
        return;
    }
    std::cout << "command: " << rep.command << "\n";
    if (rep.verdict) std::cout << "verdict: " << to_string(*rep.verdict) << "\n";
    if (!rep.detail.empty()) std::cout << "detail: " << rep.detail << "\n";
    if (!rep.witness.is_null()) std::cout << "witness: " << rep.witness.dump() << "\n";
    for (auto it = rep.extra.begin(); it != rep.extra.end(); ++it) {
        if (it.value().is_string())
            std::cout << it.key() << ": " << it.value().get<std::string>() << "\n";
        else
            std::cout << it.key() << ": " << it.value().dump() << "\n";
    }
}

std::string path_label(const Path& p) {
    if (p.arrows().empty()) return "id";
    std::string out;
    for (auto& a : p.arrows()) {
        if (!out.empty()) out += ";";
        out += a.label;
    }
    return out;
}

Json span_witness(const std::pair<Path, Path>& cex) {
    return Json{{"first", path_to_json(cex.first)},
                {"second", path_to_json(cex.second)},
                {"first_labels", path_label(cex.first)},
                {"second_labels", path_label(cex.second)}};
}

Json span_witness(const std::pair<Arrow, Arrow>& cex) {
    return Json{{"first", arrow_to_json(cex.first)},
                {"second", arrow_to_json(cex.second)},
                {"first_labels", cex.first.label},
                {"second_labels", cex.second.label}};
}

// ------------------------------------------------------------ check family --

struct CheckOpts {
    std::string system;
    int max_size = 3;
    int depth = 3;
    int max_len = 2;
    int horizon = 1;
    int budget = 0;
    int max_objects = 4000;
    int bound = 64;
};

int run_check(const std::string& property, const CheckOpts& o) {
    Timer t;
    auto sys = make_system(o.system);
    int budget = o.budget > 0 ? o.budget : default_budget();

    Report rep;
    rep.command = "check " + property;
    rep.config = Json{{"system", o.system},      {"max_size", o.max_size},
                      {"depth", o.depth},        {"max_len", o.max_len},
                      {"horizon", o.horizon},    {"budget", budget},
                      {"max_objects", o.max_objects}, {"seed", 0}};

    if (property == "tap") {
        TapReport r = check_tap(*sys, o.max_size, budget, o.max_objects);
        rep.verdict = r.verdict;
        rep.detail = r.detail;
        if (r.failed_span) rep.witness = span_witness(*r.failed_span);
        if (r.verdict == Verdict::Unknown) rep.extra["exhausted_budget"] = budget;
        print_report(rep, t);
        return exit_code(r.verdict);
    }

    Fragment frag = explore(*sys, o.max_size, budget, o.max_objects);
    rep.extra["fragment_objects"] = frag.nodes.size();

    PropertyReport r;
    if (property == "local-confluence") {
        r = is_locally_confluent(*sys, frag, o.depth, budget);
    } else if (property == "confluence") {
        r = is_confluent(*sys, frag, o.max_len, o.depth, budget);
    } else if (property == "regular") {
        r = is_regular(*sys, frag, budget);
    } else if (property == "determined") {
        r = is_determined(*sys, frag, budget);
    } else if (property == "eventually-determined") {
        r = eventually_determined(*sys, frag, o.horizon, budget);
    } else if (property == "local-directedness") {
        r = is_locally_directed(*sys, frag, o.depth, budget);
    } else if (property == "directed") {
        r = is_directed(*sys, frag, o.max_len, o.depth, budget);
    } else if (property == "terminating") {
        TerminationReport tr = is_terminating(*sys, frag, o.bound, budget);
        rep.verdict = tr.verdict;
        rep.detail = tr.detail;
        if (tr.witness) rep.witness = path_to_json(*tr.witness);
        if (tr.verdict == Verdict::Unknown) rep.extra["exhausted_budget"] = budget;
        print_report(rep, t);
        return exit_code(tr.verdict);
    } else if (property == "normalized") {
        auto objs = find_normalized(*sys, frag, budget);
        rep.verdict = objs.empty() ? Verdict::False : Verdict::True;
        std::ostringstream os;
        os << objs.size() << " normalized isomorphism class"
           << (objs.size() == 1 ? "" : "es") << " in the fragment";
        rep.detail = os.str();
        Json arr = Json::array();
        for (auto& x : objs) arr.push_back(obj_to_json(x));
        rep.extra["normalized"] = arr;
        print_report(rep, t);
        return exit_code(*rep.verdict);
    } else {
        std::cerr << "unknown property: " << property << "\n";
        return kExitUsage;
    }

    rep.verdict = r.verdict;
    rep.detail = r.detail;
    if (r.counterexample) rep.witness = span_witness(*r.counterexample);
    if (r.verdict == Verdict::Unknown) rep.extra["exhausted_budget"] = budget;
    print_report(rep, t);
    return exit_code(r.verdict);
}

// ---------------------------------------------------------------- newman --

int run_newman(std::uint64_t seed, int count, bool irregular, int objects,
               int depth, int budget, bool directed_variant) {
    Timer t;
    Report rep;
    rep.command = directed_variant ? "newman directed" : "newman";
    rep.config = Json{{"seed", seed},     {"count", count},
                      {"irregular", irregular}, {"objects", objects},
                      {"depth", depth},   {"budget", budget}};

    int confirmed = 0, inapplicable = 0, open = 0, contradictions = 0;
    Json lines = Json::array();
    for (int i = 0; i < count; ++i) {
        std::uint64_t s = seed + static_cast<std::uint64_t>(i);
        FiniteCategorySystem sys(FiniteCategorySystem::random(s, !irregular, objects));
        Fragment frag = explore(sys, depth, budget, 4000);
        Json line{{"seed", s}};
        bool contra = false, conf = false, hyp = false;
        std::string detail;
        if (directed_variant) {
            DirectedNewmanReport r = verify_directed_newman(sys, frag, depth, budget);
            contra = r.contradiction;
            conf = r.confirmed;
            hyp = r.hypotheses_hold;
            detail = r.detail;
        } else {
            NewmanReport r = verify_newman(sys, frag, depth, budget);
            contra = r.contradiction;
            conf = r.confirmed;
            hyp = r.hypotheses_hold;
            detail = r.detail;
        }
        line["detail"] = detail;
        if (contra) {
            ++contradictions;
            line["status"] = "contradiction";
        } else if (conf) {
            ++confirmed;
            line["status"] = "confirmed";
        } else if (hyp) {
            ++open;
            line["status"] = "open";
        } else {
            ++inapplicable;
            line["status"] = "hypotheses-not-met";
        }
        lines.push_back(std::move(line));
        if (format_flag != "json")
            std::cout << "seed " << s << ": " << lines.back()["status"].get<std::string>()
                      << " — " << detail << "\n";
    }

    Verdict v = contradictions > 0 ? Verdict::False
                : open > 0         ? Verdict::Unknown
                                   : Verdict::True;
    rep.verdict = v;
    std::ostringstream os;
    os << confirmed << " confirmed, " << inapplicable << " hypotheses-not-met, " << open
       << " open, " << contradictions << " contradictions over " << count << " systems";
    rep.detail = os.str();
    if (format_flag == "json") rep.extra["systems"] = lines;
    print_report(rep, t);
    return exit_code(v);
}

// ---------------------------------------------------------------- mincost --

int run_mincost(const std::string& dims_text, bool free_merges, int budget) {
    Timer t;
    std::vector<std::int64_t> dims;
    {
        std::stringstream ss(dims_text);
        std::string tok;
        while (std::getline(ss, tok, ','))
            if (!tok.empty()) dims.push_back(std::stoll(tok));
    }
    ChainSystem sys(dims, free_merges);
    Fragment frag = explore(sys, static_cast<int>(dims.size()), budget, 4000);
    CostedNormalization best = min_cost_normalization(sys, frag, budget);

    Report rep;
    rep.command = "mincost";
    rep.config = Json{{"dims", dims_text}, {"free", free_merges}, {"budget", budget},
                      {"seed", 0}};
    rep.detail = "least total merge cost to a fully multiplied chain";
    rep.extra["cost"] = best.cost;
    rep.extra["path"] = path_to_json(best.path);
    rep.extra["path_labels"] = path_label(best.path);
    if (format_flag == "json") {
        print_report(rep, t);
    } else {
        std::cout << best.cost << "\n";
        std::cout << "order: " << path_label(best.path) << "\n";
    }
    return 0;
}

// -------------------------------------------------------------------- dpo --

GraphObj load_graph(const std::string& path) { return graph_from_json(load_json(path)); }

int run_dpo_match(const std::string& rule_path, const std::string& graph_path) {
    Timer t;
    Rule r = rule_from_json(load_json(rule_path));
    GraphObj g = load_graph(graph_path);
    auto ms = find_matches(r, g);

    Report rep;
    rep.command = "dpo match";
    rep.config = Json{{"rule", rule_path}, {"graph", graph_path}, {"seed", 0}};
    std::ostringstream os;
    os << ms.size() << " match" << (ms.size() == 1 ? "" : "es") << " of rule '"
       << r.name << "'";
    rep.detail = os.str();
    Json arr = Json::array();
    for (std::size_t i = 0; i < ms.size(); ++i)
        arr.push_back(Json{{"index", i}, {"map", map_to_json(ms[i].m)}});
    rep.extra["matches"] = arr;
    rep.verdict = ms.empty() ? Verdict::False : Verdict::True;
    print_report(rep, t);
    return ms.empty() ? 1 : 0;
}

int run_dpo_apply(const std::string& rule_path, const std::string& graph_path,
                  int index, const std::string& dot_path) {
    Timer t;
    Rule r = rule_from_json(load_json(rule_path));
    GraphObj g = load_graph(graph_path);
    auto ms = find_matches(r, g);
    if (index < 0 || index >= static_cast<int>(ms.size())) {
        std::cerr << "match index " << index << " out of range (have " << ms.size()
                  << ")\n";
        return kExitUsage;
    }
    RewriteResult rr = apply_rule(r, g, ms[index]);
    if (!dot_path.empty()) {
        std::ofstream out(dot_path);
        if (!out) throw BadInput("cannot write " + dot_path);
        out << graph_to_dot(rr.result, "H");
    }
    if (format_flag == "dot") {
        std::cout << graph_to_dot(rr.result, "H");
        return 0;
    }
    Report rep;
    rep.command = "dpo apply";
    rep.config = Json{{"rule", rule_path}, {"graph", graph_path}, {"match", index},
                      {"seed", 0}};
    rep.detail = "rewrote " + std::to_string(g.vertices.size()) + "-vertex host into " +
                 std::to_string(rr.result.vertices.size()) + "-vertex result via " +
                 rr.step.label;
    rep.extra["result"] = graph_to_json(rr.result);
    rep.extra["step"] = arrow_to_json(rr.step);
    if (format_flag == "json") {
        print_report(rep, t);
    } else {
        std::cout << graph_to_json(rr.result).dump() << "\n";
        std::cout << "step: " << rr.step.label << "\n";
    }
    return 0;
}

int run_dpo_run(const std::string& rules_dir, const std::string& origin_path,
                int steps, std::uint64_t seed, const std::string& out_path,
                const std::string& dot_path, int budget) {
    Timer t;
    std::vector<std::string> files;
    for (auto& e : std::filesystem::directory_iterator(rules_dir))
        if (e.is_regular_file() && e.path().extension() == ".json")
            files.push_back(e.path().string());
    std::sort(files.begin(), files.end());
    if (files.empty()) throw BadInput("no .json rule files in " + rules_dir);
    std::vector<Rule> rules;
    for (auto& f : files) rules.push_back(rule_from_json(load_json(f)));

    DpoSystem sys(std::move(rules), load_graph(origin_path),
                  std::filesystem::path(rules_dir).filename().string());
    Evolution evo(sys.origin());
    std::mt19937_64 rng(seed);
    int made = 0;
    for (; made < steps; ++made) {
        auto ts = sys.transitions(evo.last(), budget);
        std::vector<Arrow> nontrivial;
        for (auto& a : ts)
            if (a.kind == ArrowKind::Transition) nontrivial.push_back(a);
        if (nontrivial.empty()) break;
        std::size_t pick = 0;
        if (seed != 0)
            pick = std::uniform_int_distribution<std::size_t>(
                0, nontrivial.size() - 1)(rng);
        evo.append(nontrivial[pick]);
        evo.audit.push_back("step " + std::to_string(made) + ": " +
                            nontrivial[pick].label);
    }
    if (!out_path.empty()) save_json(evolution_to_json(evo), out_path);
    if (!dot_path.empty()) {
        std::ofstream out(dot_path);
        if (!out) throw BadInput("cannot write " + dot_path);
        out << evolution_to_dot(evo);
    }
    if (format_flag == "dot") {
        std::cout << evolution_to_dot(evo);
        return 0;
    }
    Report rep;
    rep.command = "dpo run";
    rep.config = Json{{"rules", rules_dir}, {"origin", origin_path}, {"steps", steps},
                      {"seed", seed},       {"budget", budget}};
    std::ostringstream os;
    os << "applied " << made << " of " << steps << " requested steps";
    if (made < steps) os << " (no rule matches the final stage)";
    rep.detail = os.str();
    rep.extra["stages"] = evo.stage_count();
    rep.extra["final"] = obj_to_json(evo.last());
    print_report(rep, t);
    return 0;
}

// ------------------------------------------------------------ build / play --

int run_build(const std::string& system, int steps, const std::string& policy_text,
              int budget, const std::string& out_path, const std::string& dot_path) {
    Timer t;
    auto sys = make_system(system);
    Policy policy = parse_policy(policy_text);
    Report rep;
    rep.command = "build";
    rep.config = Json{{"system", system}, {"steps", steps}, {"policy", policy_text},
                      {"budget", budget}, {"seed", 0}};
    try {
        Evolution evo = build_generic(*sys, static_cast<std::size_t>(steps), budget,
                                      policy);
        if (!out_path.empty()) save_json(evolution_to_json(evo), out_path);
        if (!dot_path.empty()) {
            std::ofstream out(dot_path);
            if (!out) throw BadInput("cannot write " + dot_path);
            out << evolution_to_dot(evo);
        }
        if (format_flag == "dot") {
            std::cout << evolution_to_dot(evo);
            return 0;
        }
        rep.verdict = Verdict::True;
        rep.detail = "built " + std::to_string(evo.step_count()) + " steps (" +
                     std::to_string(evo.stage_count()) + " stages)";
        rep.extra["final"] = obj_to_json(evo.last());
        print_report(rep, t);
        return 0;
    } catch (const AmalgamationFailed& e) {
        rep.verdict = Verdict::False;
        rep.detail = e.what();
        rep.witness = span_witness(std::pair<Arrow, Arrow>{e.first, e.second});
        print_report(rep, t);
        return 1;
    } catch (const BudgetExceeded& e) {
        rep.verdict = Verdict::Unknown;
        rep.detail = e.what();
        rep.extra["exhausted_budget"] = budget;
        print_report(rep, t);
        return 2;
    }
}

std::unique_ptr<Strategy> parse_strategy(const std::string& text) {
    if (text == "identity") return identity_strategy();
    if (text == "top") return top_strategy();
    if (text == "bookkeeping") return odd_bookkeeping_strategy();
    if (text.rfind("random:", 0) == 0)
        return random_strategy(std::stoull(text.substr(7)));
    if (text == "random") return random_strategy(0);
    throw BadInput("unknown strategy: " + text +
                   " (expected identity | top | random:SEED | bookkeeping)");
}

int run_play(const std::string& system, const std::string& eve_text,
             const std::string& odd_text, int rounds, int budget,
             const std::string& out_path) {
    Timer t;
    auto sys = make_system(system);
    auto eve = parse_strategy(eve_text);
    auto odd = parse_strategy(odd_text);

    Report rep;
    rep.command = "play";
    std::uint64_t seed = 0;
    if (eve_text.rfind("random:", 0) == 0) seed = std::stoull(eve_text.substr(7));
    rep.config = Json{{"system", system}, {"eve", eve_text}, {"odd", odd_text},
                      {"rounds", rounds}, {"budget", budget}, {"seed", seed}};

    PlayResult res = play(*sys, *eve, *odd, static_cast<std::size_t>(rounds), budget);
    if (!out_path.empty()) save_json(evolution_to_json(res.evo), out_path);

    if (format_flag != "json")
        for (auto& line : res.transcript) std::cout << line << "\n";
    rep.extra["transcript"] = res.transcript;
    rep.extra["stages"] = res.evo.stage_count();
    if (res.forfeit) {
        rep.verdict = Verdict::False;
        std::ostringstream os;
        os << to_string(res.forfeit->player) << " forfeits at round "
           << res.forfeit->round << ": " << res.forfeit->reason;
        rep.detail = os.str();
        print_report(rep, t);
        return 1;
    }
    rep.verdict = Verdict::True;
    rep.detail = "completed " + std::to_string(rounds) + " rounds";
    print_report(rep, t);
    return 0;
}

// ------------------------------------------------------------------ audit --

Evolution load_evolution(const System& sys, const std::string& path) {
    Evolution evo = evolution_from_json(load_json(path));
    if (verify_evolution(sys, evo) != Verdict::True)
        throw BadInput("evolution in " + path + " is not valid for the system");
    return evo;
}

int run_audit(const std::string& which, const std::string& system,
              const std::string& evo_path, const std::string& evo2_path, int upto,
              int max_len, int horizon, int rounds, int budget) {
    Timer t;
    auto sys = make_system(system);
    Evolution evo = load_evolution(*sys, evo_path);

    Report rep;
    rep.command = "audit " + which;
    rep.config = Json{{"system", system},   {"evo", evo_path}, {"evo2", evo2_path},
                      {"upto", upto},       {"max_len", max_len},
                      {"horizon", horizon}, {"rounds", rounds},
                      {"budget", budget},   {"seed", 0}};

    std::size_t last = evo.stage_count() - 1;
    std::size_t h = horizon < 0 ? last : static_cast<std::size_t>(horizon);
    std::size_t u = upto < 0 ? std::min<std::size_t>(3, last) :
                               static_cast<std::size_t>(upto);

    if (which == "absorption" || which == "path-absorption") {
        AbsorptionReport r =
            which == "absorption"
                ? check_absorption(*sys, evo, u, h, budget)
                : check_path_absorption(*sys, evo, u, max_len, h, budget);
        rep.verdict = r.verdict;
        rep.detail = r.detail;
        if (r.witness) rep.witness = path_to_json(*r.witness);
        if (r.verdict == Verdict::Unknown) rep.extra["exhausted_budget"] = budget;
        print_report(rep, t);
        return exit_code(r.verdict);
    }
    if (which == "zigzag") {
        if (evo2_path.empty()) {
            std::cerr << "audit zigzag needs --evo2\n";
            return kExitUsage;
        }
        Evolution evo2 = load_evolution(*sys, evo2_path);
        try {
            ZigZag zz = back_and_forth(*sys, evo, evo2,
                                       static_cast<std::size_t>(rounds), budget);
            Verdict v = verify_zigzag(*sys, evo, evo2, zz);
            rep.verdict = v;
            std::ostringstream os;
            os << zz.rounds << " commuting zig-zag rounds built and re-verified";
            rep.detail = os.str();
            rep.extra["rounds_built"] = zz.rounds;
            print_report(rep, t);
            return exit_code(v);
        } catch (const AbsorptionFailed& e) {
            rep.verdict = Verdict::False;
            rep.detail = "round " + std::to_string(e.round) + ": " + e.what();
            print_report(rep, t);
            return 1;
        }
    }
    std::cerr << "unknown audit: " << which << "\n";
    return kExitUsage;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"evolution systems workbench"};
    app.require_subcommand(1);
    app.add_option("--format", format_flag, "report format")
        ->default_val("text")
        ->check(CLI::IsMember({"text", "json", "dot"}));
    int exit_status = 0;

    // check
    auto* check = app.add_subcommand("check", "decide a property of a system");
    std::string property, check_system;
    CheckOpts copts;
    check->add_option("property", property,
                      "tap | local-confluence | confluence | regular | determined | "
                      "eventually-determined | terminating | directed | "
                      "local-directedness | normalized")
        ->required();
    check->add_option("--system", copts.system, "system selector")->required();
    check->add_option("--max-size", copts.max_size,
                      "exploration depth: nontrivial steps from the origin");
    check->add_option("--depth", copts.depth, "completion search depth");
    check->add_option("--max-len", copts.max_len, "path length for path-based checks");
    check->add_option("--horizon", copts.horizon, "depth threshold (eventual variants)");
    check->add_option("--bound", copts.bound, "termination path-length bound");
    check->add_option("--budget", copts.budget, "enumeration budget per object");
    check->add_option("--max-objects", copts.max_objects, "fragment object cap");
    check->callback([&] { exit_status = run_check(property, copts); });

    // newman
    auto* newman = app.add_subcommand("newman",
                                      "audit the confluence criterion on random systems");
    std::uint64_t n_seed = 1;
    int n_count = 1, n_objects = 8, n_depth = 8, n_budget = 16;
    bool n_irregular = false, n_directed = false;
    newman->add_option("--seed", n_seed, "first seed");
    newman->add_option("--count", n_count, "number of seeds");
    newman->add_option("--objects", n_objects, "max objects per random system");
    newman->add_option("--depth", n_depth, "fragment depth");
    newman->add_option("--budget", n_budget, "enumeration budget");
    newman->add_flag("--irregular", n_irregular,
                     "sample systems without precomposition closure");
    newman->add_flag("--directed-variant", n_directed,
                     "audit the directedness variant instead");
    newman->callback([&] {
        exit_status = run_newman(n_seed, n_count, n_irregular, n_objects, n_depth,
                                 n_budget, n_directed);
    });

    // mincost
    auto* mincost = app.add_subcommand("mincost",
                                       "least-cost normalization of a matrix chain");
    std::string dims;
    bool mc_free = false;
    int mc_budget = 32;
    mincost->add_option("--dims", dims, "comma-separated dimensions, e.g. 10,30,5,60")
        ->required();
    mincost->add_flag("--free", mc_free, "allow non-adjacent shape-compatible merges");
    mincost->add_option("--budget", mc_budget, "enumeration budget");
    mincost->callback([&] { exit_status = run_mincost(dims, mc_free, mc_budget); });

    // dpo
    auto* dpo = app.add_subcommand("dpo", "double-pushout rewriting");
    dpo->require_subcommand(1);
    auto* dmatch = dpo->add_subcommand("match", "list matches of a rule in a graph");
    std::string d_rule, d_graph;
    dmatch->add_option("--rule", d_rule, "rule JSON file")->required();
    dmatch->add_option("--graph", d_graph, "graph JSON file")->required();
    dmatch->callback([&] { exit_status = run_dpo_match(d_rule, d_graph); });

    auto* dapply = dpo->add_subcommand("apply", "apply a rule at one match");
    std::string a_rule, a_graph, a_dot;
    int a_match = 0;
    dapply->add_option("--rule", a_rule, "rule JSON file")->required();
    dapply->add_option("--graph", a_graph, "graph JSON file")->required();
    dapply->add_option("--match", a_match, "match index from `dpo match`");
    dapply->add_option("--dot", a_dot, "write the result as DOT to this file");
    dapply->callback(
        [&] { exit_status = run_dpo_apply(a_rule, a_graph, a_match, a_dot); });

    auto* drun = dpo->add_subcommand("run", "iterate a rule set from an origin graph");
    std::string r_rules, r_origin, r_out, r_dot;
    int r_steps = 5, r_budget = 0;
    std::uint64_t r_seed = 0;
    drun->add_option("--rules", r_rules, "directory of rule JSON files")->required();
    drun->add_option("--origin", r_origin, "origin graph JSON file")->required();
    drun->add_option("--steps", r_steps, "steps to apply");
    drun->add_option("--seed", r_seed, "0 = always first match; else random pick");
    drun->add_option("--out", r_out, "write the evolution JSON here");
    drun->add_option("--dot", r_dot, "write the evolution DOT here");
    drun->add_option("--budget", r_budget, "enumeration budget");
    drun->callback([&] {
        int b = r_budget > 0 ? r_budget : default_budget();
        exit_status = run_dpo_run(r_rules, r_origin, r_steps, r_seed, r_out, r_dot, b);
    });

    // build
    auto* build = app.add_subcommand("build", "build an absorption-driven evolution");
    std::string b_system, b_policy = "fifo", b_out, b_dot;
    int b_steps = 10, b_budget = 0;
    build->add_option("--system", b_system, "system selector")->required();
    build->add_option("--steps", b_steps, "steps to build");
    build->add_option("--policy", b_policy, "obligation scheduling")
        ->check(CLI::IsMember({"fifo", "rr"}));
    build->add_option("--budget", b_budget, "enumeration budget");
    build->add_option("--out", b_out, "write the evolution JSON here");
    build->add_option("--dot", b_dot, "write the evolution DOT here");
    build->callback([&] {
        int b = b_budget > 0 ? b_budget : default_budget();
        exit_status = run_build(b_system, b_steps, b_policy, b, b_out, b_dot);
    });

    // play
    auto* playc = app.add_subcommand("play", "run the alternating transition game");
    std::string p_system, p_eve = "random:1", p_odd = "bookkeeping", p_out;
    int p_rounds = 10, p_budget = 0;
    playc->add_option("--system", p_system, "system selector")->required();
    playc->add_option("--eve", p_eve, "identity | top | random:SEED | bookkeeping");
    playc->add_option("--odd", p_odd, "identity | top | random:SEED | bookkeeping");
    playc->add_option("--rounds", p_rounds, "total turns");
    playc->add_option("--budget", p_budget, "enumeration budget");
    playc->add_option("--out", p_out, "write the played evolution JSON here");
    playc->callback([&] {
        int b = p_budget > 0 ? p_budget : default_budget();
        exit_status = run_play(p_system, p_eve, p_odd, p_rounds, b, p_out);
    });

    // audit
    auto* audit = app.add_subcommand("audit", "audit a stored evolution");
    std::string au_which, au_system, au_evo, au_evo2;
    int au_upto = -1, au_maxlen = 2, au_horizon = -1, au_rounds = 4, au_budget = 0;
    audit->add_option("kind", au_which, "absorption | path-absorption | zigzag")
        ->required();
    audit->add_option("--system", au_system, "system selector")->required();
    audit->add_option("--evo", au_evo, "evolution JSON file")->required();
    audit->add_option("--evo2", au_evo2, "second evolution (zigzag)");
    audit->add_option("--upto", au_upto, "audit stages 0..upto (default min(3, last))");
    audit->add_option("--max-len", au_maxlen, "path length (path-absorption)");
    audit->add_option("--horizon", au_horizon, "absorb into this stage (default last)");
    audit->add_option("--rounds", au_rounds, "zig-zag rounds");
    audit->add_option("--budget", au_budget, "enumeration budget");
    audit->callback([&] {
        int b = au_budget > 0 ? au_budget : default_budget();
        exit_status = run_audit(au_which, au_system, au_evo, au_evo2, au_upto,
                                au_maxlen, au_horizon, au_rounds, b);
    });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? 0 : kExitUsage;
    } catch (const BadInput& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const BudgetExceeded& e) {
        std::cerr << "budget exhausted: " << e.what() << "\n";
        return 2;
    } catch (const AmalgamationFailed& e) {
        std::cerr << "amalgamation failed: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    }
    return exit_status;
}
