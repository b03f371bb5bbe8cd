#include <algorithm>
#include <map>
#include <stdexcept>

#include "context.hpp"

namespace ldlg {

namespace {

using detail::Context;

struct Extra {
    GoalAutomaton automaton;
    bool holds;  // demanded outcome on the play
};

std::vector<std::vector<int>> subsets_by_size(int n)
{
    std::vector<std::vector<int>> out;
    for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
        std::vector<int> s;
        for (int i = 0; i < n; ++i)
            if (mask >> i & 1u) s.push_back(i);
        out.push_back(std::move(s));
    }
    std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
        if (a.size() != b.size()) return a.size() > b.size();
        return a < b;
    });
    return out;
}

// Edges of the play graph on which no coalition of losers can profitably leave.
class SecureGraph {
public:
    SecureGraph(Context& ctx, const std::vector<int>& losers, bool strong) : ctx_(ctx)
    {
        if (strong) {
            for (std::uint32_t mask = 1; mask < (1u << losers.size()); ++mask) {
                std::vector<int> c;
                for (std::size_t k = 0; k < losers.size(); ++k)
                    if (mask >> k & 1u) c.push_back(losers[k]);
                coalitions_.push_back(std::move(c));
            }
        } else {
            for (int j : losers) coalitions_.push_back({j});
        }
    }

    bool secure(int s, const std::vector<int>& qs, Valuation v)
    {
        for (std::size_t c = 0; c < coalitions_.size(); ++c)
            if (!holds(c, s, qs, v)) return false;
        return true;
    }

private:
    bool holds(std::size_t c, int s, const std::vector<int>& qs, Valuation v)
    {
        const auto& members = coalitions_[c];
        Valuation mask;
        for (int j : members) mask = mask | ctx_.arena.controls[j];
        std::vector<int> key{static_cast<int>(c), s, static_cast<int>((v - mask).bits()), static_cast<int>((v & mask).bits())};
        for (int j : members) key.push_back(qs[j]);
        if (auto it = cache_.find(key); it != cache_.end()) return it->second;

        const auto& region = ctx_.region(members);
        std::vector<const std::vector<Valuation>*> lists;
        for (int j : members) lists.push_back(&ctx_.arena.moves[s][j]);
        bool ok = true;
        for (Valuation alt : detail::combinations(lists)) {
            if (alt == (v & mask)) continue;
            Valuation w = (v - mask) | alt;
            std::vector<int> gs;
            for (int j : members) gs.push_back(ctx_.goals[j].dfw.step(qs[j], w));
            if (!region.contains(ctx_.arena.state_of(w), gs)) {
                ok = false;
                break;
            }
        }
        cache_.emplace(std::move(key), ok);
        return ok;
    }

    Context& ctx_;
    std::vector<std::vector<int>> coalitions_;
    std::map<std::vector<int>, bool> cache_;
};

std::optional<Lasso> secure_play(Context& ctx, const std::vector<char>& win, bool strong, const Extra* extra)
{
    const int n = ctx.num_players();
    std::vector<int> losers;
    for (int i = 0; i < n; ++i)
        if (!win[i]) losers.push_back(i);
    SecureGraph graph(ctx, losers, strong);

    InfiniteAcceptor acc;
    acc.vocab = ctx.game.vocab;
    acc.flag_bits = n + (extra ? 1 : 0);
    for (int i = 0; i < n; ++i) {
        bool want_flag = ctx.goals[i].holds(true) == static_cast<bool>(win[i]);
        (want_flag ? acc.required : acc.forbidden) |= 1u << i;
    }
    if (extra) {
        bool want_flag = extra->automaton.holds(true) == extra->holds;
        (want_flag ? acc.required : acc.forbidden) |= 1u << n;
    }

    std::map<std::vector<int>, int> index;
    std::vector<std::vector<int>> states;
    auto intern = [&](std::vector<int> key) {
        auto [it, fresh] = index.emplace(key, static_cast<int>(states.size()));
        if (fresh) {
            std::uint32_t flags = 0;
            for (int i = 0; i < n; ++i)
                if (ctx.goals[i].dfw.final[key[1 + i]]) flags |= 1u << i;
            if (extra && extra->automaton.dfw.final[key[1 + n]]) flags |= 1u << n;
            states.push_back(std::move(key));
            acc.flags.push_back(flags);
            acc.edges.emplace_back();
        }
        return it->second;
    };

    std::vector<int> start{Arena::kStart};
    for (const auto& ga : ctx.goals) start.push_back(ga.dfw.initial);
    if (extra) start.push_back(extra->automaton.dfw.initial);
    acc.initial = {intern(start)};
    for (std::size_t x = 0; x < states.size(); ++x) {
        const int s = states[x][0];
        std::vector<int> qs(states[x].begin() + 1, states[x].begin() + 1 + n);
        for (Valuation v : ctx.arena.successors(s)) {
            if (!graph.secure(s, qs, v)) continue;
            std::vector<int> next{ctx.arena.state_of(v)};
            for (int i = 0; i < n; ++i) next.push_back(ctx.goals[i].dfw.step(qs[i], v));
            if (extra) next.push_back(extra->automaton.dfw.step(states[x][1 + n], v));
            int y = intern(std::move(next));
            acc.edges[x].push_back({v, y});
        }
    }
    return find_accepted(acc);
}

NashWitness make_witness(Context& ctx, const std::vector<char>& win, const Lasso& play)
{
    NashWitness w;
    w.lasso = play;
    for (int i = 0; i < ctx.num_players(); ++i) {
        const auto& p = ctx.game.players[i];
        if (win[i]) w.winners.push_back(p.id);
        w.satisfied[p.id] = eval_goal(p.goal, ctx.game.vocab, play);
        if (!win[i]) w.punishments.emplace(p.id, ctx.region({i}));
    }
    return w;
}

std::optional<NashWitness> search(const Game& g, bool strong, const Extra* extra)
{
    Context ctx(g);
    for (const auto& ws : subsets_by_size(g.num_players())) {
        std::vector<char> win(g.num_players(), 0);
        for (int i : ws) win[i] = 1;
        if (auto play = secure_play(ctx, win, strong, extra)) return make_witness(ctx, win, *play);
    }
    return std::nullopt;
}

} // namespace

std::vector<int> NashWitness::losers(const Game& g) const
{
    std::vector<int> out;
    for (const auto& p : g.players)
        if (!std::binary_search(winners.begin(), winners.end(), p.id)) out.push_back(p.id);
    return out;
}

std::optional<NashWitness> ne_nonemptiness(const Game& g) { return search(g, false, nullptr); }

std::optional<NashWitness> sne_nonemptiness(const Game& g) { return search(g, true, nullptr); }

std::optional<NashWitness> e_nash(const Game& g, const Goal& phi)
{
    Extra extra{goal_automaton(phi, g.vocab), true};
    return search(g, false, &extra);
}

ANashResult a_nash(const Game& g, const Goal& phi)
{
    Extra extra{goal_automaton(phi, g.vocab), false};
    ANashResult r;
    r.counterexample = search(g, false, &extra);
    r.holds = !r.counterexample;
    return r;
}

} // namespace ldlg
