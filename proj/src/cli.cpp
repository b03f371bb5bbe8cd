#include <cctype>
#include <set>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "ldlg/cli.hpp"
#include "ldlg/equilibria.hpp"

namespace ldlg {

namespace {

std::vector<std::string> split_names(const std::string& text)
{
    std::vector<std::string> out;
    std::string cur;
    for (char c : text + ",") {
        if (std::isalnum(static_cast<unsigned char>(c)) || c == '_') {
            cur += c;
        } else if (!cur.empty()) {
            out.push_back(cur);
            cur.clear();
        }
    }
    return out;
}

const Formula& body_of(const Goal& g)
{
    return std::holds_alternative<Formula>(g) ? std::get<Formula>(g) : std::get<QFormula>(g).body;
}

void print_witness(std::ostream& out, const Game& g, const NashWitness& w, bool json)
{
    if (json) {
        out << witness_json(g, w) << "\n";
        return;
    }
    auto ids = [](const std::vector<int>& v) {
        std::string s;
        for (std::size_t k = 0; k < v.size(); ++k) s += (k ? ", " : "") + std::to_string(v[k]);
        return "{" + s + "}";
    };
    out << "winners: " << ids(w.winners) << "\n";
    out << "losers: " << ids(w.losers(g)) << "\n";
    out << "play: " << format_lasso(g.vocab, w.lasso) << "\n";
}

struct Options {
    std::string game, profile, formula, trace, lasso;
    std::vector<std::string> x, y;
    bool strong = false, memoryless = false, myopic = false, json = false;
    int bound = 1;
};

int cmd_eval(const Options& o, std::ostream& out)
{
    Goal goal = parse_formula(o.formula);
    if (o.trace.empty() == o.lasso.empty()) throw CLI::ValidationError("eval", "give exactly one of --trace or --lasso");
    std::set<std::string> names;
    for (const auto& a : body_of(goal).atoms()) names.insert(a);
    for (const auto& a : split_names(o.trace + "," + o.lasso)) names.insert(a);
    Vocabulary vocab;
    if (!o.game.empty()) vocab = load_game(o.game).vocab;
    for (const auto& n : names)
        if (!vocab.index(n)) vocab.add(n);
    bool holds;
    if (!o.trace.empty()) {
        if (!std::holds_alternative<Formula>(goal)) throw CLI::ValidationError("eval", "quantified formulas need --lasso");
        holds = eval_trace(std::get<Formula>(goal), vocab, parse_trace(vocab, o.trace));
    } else {
        holds = eval_goal(goal, vocab, parse_lasso(vocab, o.lasso));
    }
    out << (holds ? "true" : "false") << "\n";
    return holds ? kYes : kNo;
}

int cmd_check(const Options& o, std::ostream& out)
{
    Game g = load_game(o.game);
    StrategyProfile p = load_profile(g, o.profile);
    for (std::size_t i = 0; i < p.machines.size(); ++i)
        if (!is_compatible(p.machines[i], g.players[i].module, g.vocab)) {
            out << "incompatible: player " << g.players[i].id << "\n";
            return kIncompatible;
        }
    MembershipResult r = ne_membership(g, p);
    if (o.json) {
        nlohmann::json doc;
        doc["verdict"] = r.verdict == Verdict::Yes ? "yes" : r.verdict == Verdict::No ? "no" : "error";
        doc["play"] = format_lasso(g.vocab, r.play);
        if (r.deviator) doc["deviator"] = *r.deviator;
        if (r.deviation) doc["deviation"] = format_lasso(g.vocab, *r.deviation);
        out << doc.dump(2) << "\n";
    } else {
        out << "play: " << format_lasso(g.vocab, r.play) << "\n";
        if (r.verdict == Verdict::Yes) out << "nash: yes\n";
        if (r.verdict == Verdict::No)
            out << "nash: no\ndeviator: " << *r.deviator << "\ndeviation: " << format_lasso(g.vocab, *r.deviation) << "\n";
        if (r.verdict == Verdict::Error) out << "error: " << r.reason << "\n";
    }
    if (r.verdict == Verdict::Error) return kIncompatible;
    return r.verdict == Verdict::Yes ? kYes : kNo;
}

int cmd_solve(const Options& o, std::ostream& out)
{
    if (o.strong + o.memoryless + o.myopic > 1) throw CLI::ValidationError("solve", "choose at most one of --strong, --memoryless, --myopic");
    Game g = load_game(o.game);
    std::optional<NashWitness> w;
    if (o.myopic) {
        if (o.bound < 1) throw CLI::ValidationError("solve", "--bound must be at least 1");
        w = myopic_ne(g, o.bound).witness;
        if (!w) {
            out << "unknown within bound " << o.bound << "\n";
            return kUnknown;
        }
    } else if (o.memoryless) {
        w = memoryless_ne(g);
    } else if (o.strong) {
        w = sne_nonemptiness(g);
    } else {
        w = ne_nonemptiness(g);
    }
    if (!w) {
        out << "no equilibrium\n";
        return kNo;
    }
    print_witness(out, g, *w, o.json);
    return kYes;
}

int cmd_enash(const Options& o, std::ostream& out, bool universal)
{
    Game g = load_game(o.game);
    Goal phi = parse_formula(o.formula);
    if (!universal) {
        auto w = e_nash(g, phi);
        if (!w) {
            out << "no equilibrium satisfies the formula\n";
            return kNo;
        }
        print_witness(out, g, *w, o.json);
        return kYes;
    }
    auto r = a_nash(g, phi);
    if (r.holds) {
        out << "every equilibrium satisfies the formula\n";
        return kYes;
    }
    out << "counterexample:\n";
    print_witness(out, g, *r.counterexample, o.json);
    return kNo;
}

int cmd_synth(const Options& o, std::ostream& out)
{
    Goal phi = parse_formula(o.formula);
    if (!std::holds_alternative<Formula>(phi)) throw CLI::ValidationError("synth-game", "formula must be unquantified");
    std::vector<std::string> x, y;
    for (const auto& s : o.x)
        for (const auto& n : split_names(s)) x.push_back(n);
    for (const auto& s : o.y)
        for (const auto& n : split_names(s)) y.push_back(n);
    out << format_game(build_synthesis_game(std::get<Formula>(phi), x, y));
    return kYes;
}

} // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err)
{
    CLI::App app{"Equilibrium checking for games with LDLf goals", "ldlg"};
    app.require_subcommand(1);
    Options o;

    auto* eval = app.add_subcommand("eval", "Evaluate a formula on a trace or lasso");
    eval->add_option("--formula", o.formula, "Formula")->required();
    eval->add_option("--trace", o.trace, "Finite trace, e.g. \"u1; ; d1\"");
    eval->add_option("--lasso", o.lasso, "Lasso, e.g. \"p | ; p\"");
    eval->add_option("--game", o.game, "Take the vocabulary from a game");

    auto* check = app.add_subcommand("check", "Is a profile a Nash equilibrium?");
    check->add_option("--game", o.game, "Game file")->required();
    check->add_option("--profile", o.profile, "Profile file")->required();
    check->add_flag("--json", o.json, "JSON output");

    auto* solve = app.add_subcommand("solve", "Find an equilibrium");
    solve->add_option("--game", o.game, "Game file")->required();
    solve->add_flag("--strong", o.strong, "Strong Nash equilibrium");
    solve->add_flag("--memoryless", o.memoryless, "Memoryless strategies only");
    solve->add_flag("--myopic", o.myopic, "Myopic strategies only");
    solve->add_option("--bound", o.bound, "Word length bound for --myopic");
    solve->add_flag("--json", o.json, "JSON output");

    for (const char* name : {"enash", "anash"}) {
        auto* c = app.add_subcommand(name, std::string(name) == "enash" ? "Some equilibrium satisfies a formula?"
                                                                         : "Every equilibrium satisfies a formula?");
        c->add_option("--game", o.game, "Game file")->required();
        c->add_option("--formula", o.formula, "Formula")->required();
        c->add_flag("--json", o.json, "JSON output");
    }

    auto* synth = app.add_subcommand("synth-game", "Print the game encoding a synthesis problem");
    synth->add_option("--formula", o.formula, "Formula")->required();
    synth->add_option("--x", o.x, "System variables")->delimiter(',');
    synth->add_option("--y", o.y, "Environment variables")->delimiter(',');

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
        if (eval->parsed()) return cmd_eval(o, out);
        if (check->parsed()) return cmd_check(o, out);
        if (solve->parsed()) return cmd_solve(o, out);
        if (app.got_subcommand("enash")) return cmd_enash(o, out, false);
        if (app.got_subcommand("anash")) return cmd_enash(o, out, true);
        return cmd_synth(o, out);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kYes;
    } catch (const CLI::ParseError& e) {
        err << "ldlg: " << e.what() << "\n";
        return kUsage;
    } catch (const ParseError& e) {
        err << "ldlg: parse error at line " << e.line() << ": " << e.what() << "\n";
        return kUsage;
    } catch (const std::exception& e) {
        err << "ldlg: " << e.what() << "\n";
        return kUsage;
    }
}

} // namespace ldlg
