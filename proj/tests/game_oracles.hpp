// Brute-force references for games and strategy profiles.
#pragma once

#include <map>
#include <set>

#include "ldlg/equilibria.hpp"
#include "oracles.hpp"

namespace oracle {

// Two players, one variable each (x for player 1, y for player 2). Modules are
// free or small random guarded-command modules; goals are plain formulas.
inline Game random_game(unsigned seed, int max_goal_size = 6)
{
    std::mt19937 rng(seed);
    RandomFormulas rf({"x", "y"}, seed * 7919u + 17u);
    auto pick = [&](unsigned n) { return std::uniform_int_distribution<unsigned>(0, n - 1)(rng); };
    auto literal = [&]() {
        switch (pick(5)) {
        case 0: return Formula::atom("x");
        case 1: return Formula::atom("y");
        case 2: return Formula::negate(Formula::atom("x"));
        case 3: return Formula::negate(Formula::atom("y"));
        default: return Formula::tt();
        }
    };
    Game g;
    g.name = "random " + std::to_string(seed);
    g.vocab.add("x");
    g.vocab.add("y");
    for (int id = 1; id <= 2; ++id) {
        const int var = id - 1;
        Module m;
        m.name = "m" + std::to_string(id);
        m.controls = Valuation{}.with(var);
        if (pick(2) == 0) {
            m = Module::free_module(m.name, m.controls, g.vocab);
        } else {
            for (unsigned k = 0, n = 1 + pick(2); k < n; ++k)
                m.init.push_back({Formula::tt(), {{var, pick(2) ? Formula::tt() : Formula::ff()}}});
            for (unsigned k = 0, n = 1 + pick(2); k < n; ++k)
                m.update.push_back({literal(), {{var, literal()}}});
        }
        Formula goal = rf.formula(1 + static_cast<int>(pick(static_cast<unsigned>(max_goal_size))));
        while (goal.size() > max_goal_size) goal = rf.formula(1 + static_cast<int>(pick(static_cast<unsigned>(max_goal_size))));
        g.players.push_back({id, std::move(m), goal});
    }
    return g;
}

// Joint simulation of a profile until the machine state tuple repeats.
inline Lasso simulate(const StrategyProfile& p)
{
    std::vector<int> states;
    for (const auto& m : p.machines) states.push_back(m.initial);
    std::map<std::vector<int>, std::size_t> seen;
    Trace word;
    while (!seen.count(states)) {
        seen[states] = word.size();
        Valuation v;
        for (std::size_t i = 0; i < states.size(); ++i) v = v | p.machines[i].output[states[i]];
        word.push_back(v);
        for (std::size_t i = 0; i < states.size(); ++i) states[i] = p.machines[i].step(states[i], v);
    }
    std::size_t start = seen[states];
    return Lasso{Trace(word.begin(), word.begin() + start), Trace(word.begin() + start, word.end())};
}

// Plain goal on a play: some prefix within the lift bound satisfies it.
inline bool goal_on_play(const Formula& f, const Vocabulary& vocab, const Lasso& w)
{
    std::size_t bound = w.length() + w.loop.size() * compile_dfw(f, vocab).num_states();
    return some_prefix(f, vocab, w, bound);
}

// Can the coalition (positions) reach all their plain goals against the other machines?
inline bool coalition_can_win(const Game& g, const StrategyProfile& p, const std::vector<int>& coalition)
{
    const int n = g.num_players();
    std::vector<char> in(n, 0);
    for (int c : coalition) in[c] = 1;
    std::vector<Dfw> dfws;
    for (int c : coalition) dfws.push_back(compile_dfw(std::get<Formula>(g.players[c].goal), g.vocab));

    // key: others' machine states, last valuation (-1 at the start), coalition dfw states
    using Key = std::vector<int>;
    std::set<Key> seen;
    std::vector<Key> todo;
    Key start;
    for (int i = 0; i < n; ++i)
        if (!in[i]) start.push_back(p.machines[i].initial);
    start.push_back(-1);
    for (const auto& d : dfws) start.push_back(d.initial);
    auto all_final = [&](const Key& k) {
        for (std::size_t c = 0; c < dfws.size(); ++c)
            if (!dfws[c].final[k[k.size() - dfws.size() + c]]) return false;
        return true;
    };
    todo.push_back(start);
    seen.insert(start);
    while (!todo.empty()) {
        Key k = todo.back();
        todo.pop_back();
        if (all_final(k)) return true;
        const int others = n - static_cast<int>(coalition.size());
        const int last = k[others];
        Phase phase = last < 0 ? Phase::Init : Phase::Update;
        Valuation fixed;
        for (int i = 0, o = 0; i < n; ++i)
            if (!in[i]) fixed = fixed | p.machines[i].output[k[o++]];
        std::vector<Valuation> joint{fixed};
        for (int c : coalition) {
            std::vector<Valuation> next;
            for (Valuation partial : joint)
                for (Valuation m : enabled_moves(g.players[c].module, g.vocab, phase, Valuation(last < 0 ? 0u : last)))
                    next.push_back(partial | m);
            joint = std::move(next);
        }
        for (Valuation v : joint) {
            Key nk;
            for (int i = 0, o = 0; i < n; ++i)
                if (!in[i]) nk.push_back(p.machines[i].step(k[o++], v));
            nk.push_back(static_cast<int>(v.bits()));
            for (std::size_t c = 0; c < dfws.size(); ++c) nk.push_back(dfws[c].step(k[others + 1 + c], v));
            if (seen.insert(nk).second) todo.push_back(nk);
        }
    }
    return false;
}

// Nash (or strong Nash) by exhaustive deviation search.
inline bool is_equilibrium(const Game& g, const StrategyProfile& p, bool strong = false)
{
    Lasso play = simulate(p);
    std::vector<int> losers;
    for (int i = 0; i < g.num_players(); ++i)
        if (!goal_on_play(std::get<Formula>(g.players[i].goal), g.vocab, play)) losers.push_back(i);
    if (!strong) {
        for (int j : losers)
            if (coalition_can_win(g, p, {j})) return false;
        return true;
    }
    for (std::uint32_t mask = 1; mask < (1u << losers.size()); ++mask) {
        std::vector<int> c;
        for (std::size_t k = 0; k < losers.size(); ++k)
            if (mask >> k & 1u) c.push_back(losers[k]);
        if (coalition_can_win(g, p, c)) return false;
    }
    return true;
}

// Compatible machines with at most two states, one per behaviour.
inline std::vector<StrategyMachine> machines_for(const Game& g, int pos)
{
    const auto& player = g.players[pos];
    const Valuation own = player.module.controls;
    std::vector<Valuation> outs;
    for (std::uint32_t b = 0; b < g.vocab.alphabet_size(); ++b)
        if (Valuation(b).subset_of(own)) outs.push_back(Valuation(b));
    std::vector<Valuation> other_letters;
    for (std::uint32_t b = 0; b < g.vocab.alphabet_size(); ++b)
        if ((Valuation(b) & own).empty()) other_letters.push_back(Valuation(b));

    std::vector<StrategyMachine> out;
    std::set<std::vector<std::uint32_t>> signatures;
    auto consider = [&](StrategyMachine m) {
        if (!is_compatible(m, player.module, g.vocab)) return;
        std::vector<std::uint32_t> sig;
        std::function<void(int, int)> walk = [&](int s, int depth) {
            sig.push_back(m.output[s].bits());
            if (depth == 3) return;
            for (Valuation o : other_letters) walk(m.step(s, o | m.output[s]), depth + 1);
        };
        walk(m.initial, 0);
        if (signatures.insert(sig).second) out.push_back(std::move(m));
    };
    const std::uint32_t letters = g.vocab.alphabet_size();
    for (Valuation o : outs) {
        StrategyMachine m;
        m.player = player.id;
        m.names = {"a"};
        m.output = {o};
        m.next = {std::vector<int>(letters, 0)};
        consider(m);
    }
    const std::size_t k = other_letters.size();
    for (Valuation o0 : outs)
        for (Valuation o1 : outs)
            for (std::uint32_t t = 0; t < (1u << (2 * k)); ++t) {
                StrategyMachine m;
                m.player = player.id;
                m.names = {"a", "b"};
                m.output = {o0, o1};
                m.next = {std::vector<int>(letters, 0), std::vector<int>(letters, 1)};
                for (int s = 0; s < 2; ++s)
                    for (std::size_t l = 0; l < k; ++l)
                        m.next[s][(other_letters[l] | m.output[s]).bits()] = (t >> (s * k + l)) & 1u;
                consider(m);
            }
    return out;
}

// Every profile built from machines_for.
inline std::vector<StrategyProfile> profile_space(const Game& g)
{
    std::vector<StrategyProfile> out{StrategyProfile{}};
    for (int i = 0; i < g.num_players(); ++i) {
        auto ms = machines_for(g, i);
        std::vector<StrategyProfile> next;
        for (const auto& p : out)
            for (const auto& m : ms) {
                auto q = p;
                q.machines.push_back(m);
                next.push_back(std::move(q));
            }
        out = std::move(next);
    }
    return out;
}

} // namespace oracle
