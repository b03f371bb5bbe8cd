#include <algorithm>
#include <set>
#include <stdexcept>

#include "json.hpp"

#include "ldlg/equilibria.hpp"

namespace ldlg {

Game build_synthesis_game(const Formula& phi, const std::vector<std::string>& x, const std::vector<std::string>& y)
{
    std::set<std::string> xs(x.begin(), x.end()), ys(y.begin(), y.end());
    for (const auto& v : {"p", "q"})
        if (xs.count(v) || ys.count(v)) throw std::invalid_argument(std::string("variable '") + v + "' is reserved");
    for (const auto& v : xs)
        if (ys.count(v)) throw std::invalid_argument("variable '" + v + "' belongs to both sides");
    for (const auto& a : phi.atoms())
        if (!xs.count(a) && !ys.count(a)) throw std::invalid_argument("variable '" + a + "' is not assigned to a side");

    Game g;
    g.name = "synthesis";
    for (const auto& v : x) g.vocab.add(v);
    for (const auto& v : y) g.vocab.add(v);
    if (g.vocab.size() + 2 > Vocabulary::kMaxVariables) throw std::invalid_argument("too many variables");
    const int p = g.vocab.add("p");
    const int q = g.vocab.add("q");

    auto controls = [&](const std::vector<std::string>& names) { return g.vocab.valuation(names); };
    auto exists = [](Formula f) -> Goal { return QFormula{Quantifier::Exists, std::move(f)}; };
    const Formula fp = Formula::atom("p"), fq = Formula::atom("q");
    auto first_round = [](Formula cond) { return Formula::diamond(PathExpr::prop(std::move(cond)), Formula::tt()); };
    Formula same = Formula::disj(Formula::conj(fp, fq), Formula::conj(Formula::negate(fp), Formula::negate(fq)));
    Formula differ = Formula::disj(Formula::conj(fp, Formula::negate(fq)), Formula::conj(Formula::negate(fp), fq));

    g.players.push_back({1, Module::free_module("system", controls(x), g.vocab), exists(phi)});
    g.players.push_back({2, Module::free_module("environment", controls(y), g.vocab),
                         QFormula{Quantifier::Forall, Formula::negate(phi)}});
    g.players.push_back({3, Module::free_module("matcher", Valuation{}.with(p), g.vocab),
                         exists(Formula::disj(phi, first_round(same)))});
    g.players.push_back({4, Module::free_module("mismatcher", Valuation{}.with(q), g.vocab),
                         exists(Formula::disj(phi, first_round(differ)))});
    return g;
}

std::string witness_json(const Game& g, const NashWitness& w)
{
    using nlohmann::json;
    auto letter = [&](Valuation v) {
        json out = json::array();
        for (int i = 0; i < g.vocab.size(); ++i)
            if (v.contains(i)) out.push_back(g.vocab.name(i));
        std::sort(out.begin(), out.end());
        return out;
    };
    auto trace = [&](const Trace& t) {
        json out = json::array();
        for (Valuation v : t) out.push_back(letter(v));
        return out;
    };

    json doc;
    doc["game"] = g.name;
    doc["winners"] = w.winners;
    doc["losers"] = w.losers(g);
    doc["lasso"] = {{"prefix", trace(w.lasso.prefix)}, {"loop", trace(w.lasso.loop)}};
    json goals = json::object();
    for (const auto& [id, ok] : w.satisfied) goals[std::to_string(id)] = ok;
    doc["goals"] = goals;
    Arena arena = build_arena(g);
    json punish = json::object();
    for (const auto& [id, r] : w.punishments) {
        json rows = json::array();
        for (int x = 0; x < r.num_states(); ++x) {
            if (!r.member[x]) continue;
            int s = r.arena_state[x];
            rows.push_back({{"state", s == Arena::kStart ? json(nullptr) : letter(arena.valuation[s])},
                            {"goal_state", r.goal_state[x]},
                            {"move", letter(r.move[x])}});
        }
        punish[std::to_string(id)] = rows;
    }
    doc["punishment"] = punish;
    return doc.dump(2);
}

} // namespace ldlg
