#include <algorithm>

#include "context.hpp"

namespace ldlg {

namespace detail {

Context::Context(const Game& g) : game(g), arena(build_arena(g))
{
    for (const auto& p : g.players) goals.push_back(goal_automaton(p.goal, g.vocab));
}

InfiniteAcceptor arena_acceptor(const Arena& a, const Vocabulary& vocab)
{
    InfiniteAcceptor acc;
    acc.vocab = vocab;
    for (int s = 0; s < a.num_states(); ++s) {
        std::vector<Edge> row;
        for (Valuation v : a.successors(s)) row.push_back({v, a.state_of(v)});
        acc.edges.push_back(std::move(row));
        acc.flags.push_back(0);
    }
    acc.initial = {Arena::kStart};
    return acc;
}

std::vector<Valuation> combinations(const std::vector<const std::vector<Valuation>*>& lists)
{
    std::vector<Valuation> out{Valuation{}};
    for (const auto* l : lists) {
        std::vector<Valuation> next;
        next.reserve(out.size() * l->size());
        for (Valuation partial : out)
            for (Valuation m : *l) next.push_back(partial | m);
        out = std::move(next);
    }
    return out;
}

bool goal_holds(const GoalAutomaton& ga, const Lasso& w)
{
    int q = ga.dfw.initial;
    bool reached = ga.dfw.final[q];
    for (Valuation v : w.prefix) {
        q = ga.dfw.step(q, v);
        reached = reached || ga.dfw.final[q];
    }
    std::vector<char> seen(ga.dfw.num_states(), 0);
    while (!w.loop.empty() && !seen[q]) {
        seen[q] = 1;
        for (Valuation v : w.loop) {
            q = ga.dfw.step(q, v);
            reached = reached || ga.dfw.final[q];
        }
    }
    return ga.holds(reached);
}

const PunishmentRegion& Context::region(const std::vector<int>& positions)
{
    auto it = regions.find(positions);
    if (it != regions.end()) return it->second;

    PunishmentRegion r;
    for (int t : positions) r.targets.push_back(game.players[t].id);
    std::vector<char> is_target(num_players(), 0);
    for (int t : positions) is_target[t] = 1;

    struct Option {
        Valuation move;
        std::vector<int> succ;
    };
    std::vector<std::vector<Option>> options;
    std::vector<char> reach_all, avoid_hit;

    auto intern = [&](int s, std::vector<int> qs) {
        std::vector<int> key{s};
        key.insert(key.end(), qs.begin(), qs.end());
        auto [pos, fresh] = r.index.emplace(key, r.num_states());
        if (fresh) {
            bool all = true, hit = false;
            for (std::size_t k = 0; k < positions.size(); ++k) {
                const auto& ga = goals[positions[k]];
                bool flag = ga.dfw.final[qs[k]];
                if (ga.avoid)
                    hit = hit || flag;
                else
                    all = all && flag;
            }
            r.arena_state.push_back(s);
            r.goal_state.push_back(std::move(qs));
            reach_all.push_back(all);
            avoid_hit.push_back(hit);
        }
        return pos->second;
    };

    std::vector<int> q0;
    for (int t : positions) q0.push_back(goals[t].dfw.initial);
    intern(Arena::kStart, q0);
    for (int x = 0; x < r.num_states(); ++x) {
        const int s = r.arena_state[x];
        std::vector<const std::vector<Valuation>*> punishers, targets;
        for (int i = 0; i < num_players(); ++i) (is_target[i] ? targets : punishers).push_back(&arena.moves[s][i]);
        auto target_moves = combinations(targets);
        std::vector<Option> opts;
        for (Valuation c : combinations(punishers)) {
            Option o{c, {}};
            for (Valuation t : target_moves) {
                Valuation v = c | t;
                std::vector<int> qs;
                for (std::size_t k = 0; k < positions.size(); ++k)
                    qs.push_back(goals[positions[k]].dfw.step(r.goal_state[x][k], v));
                o.succ.push_back(intern(arena.state_of(v), std::move(qs)));
            }
            opts.push_back(std::move(o));
        }
        options.push_back(std::move(opts));
    }

    const int n = r.num_states();
    r.member.assign(n, 0);
    r.move.assign(n, Valuation{});

    // Attractor to the states where some avoid-mode target goal has failed.
    std::vector<char> attr(n, 0);
    for (int x = 0; x < n; ++x)
        if (avoid_hit[x]) {
            attr[x] = 1;
            r.move[x] = options[x].front().move;
        }
    for (bool grew = true; grew;) {
        grew = false;
        std::vector<int> added;
        for (int x = 0; x < n; ++x) {
            if (attr[x]) continue;
            for (const auto& o : options[x])
                if (std::all_of(o.succ.begin(), o.succ.end(), [&](int y) { return attr[y]; })) {
                    added.push_back(x);
                    r.move[x] = o.move;
                    break;
                }
        }
        for (int x : added) attr[x] = 1;
        grew = !added.empty();
    }

    // Stay forever where not every reach-mode target goal holds, or fall into the attractor.
    std::vector<char> z(n, 1);
    for (bool shrank = true; shrank;) {
        shrank = false;
        for (int x = 0; x < n; ++x) {
            if (!z[x] || attr[x]) continue;
            bool keep = !reach_all[x] && std::any_of(options[x].begin(), options[x].end(), [&](const Option& o) {
                return std::all_of(o.succ.begin(), o.succ.end(), [&](int y) { return z[y]; });
            });
            if (!keep) {
                z[x] = 0;
                shrank = true;
            }
        }
    }
    for (int x = 0; x < n; ++x) {
        r.member[x] = z[x];
        if (!z[x] || attr[x]) continue;
        for (const auto& o : options[x])
            if (std::all_of(o.succ.begin(), o.succ.end(), [&](int y) { return z[y]; })) {
                r.move[x] = o.move;
                break;
            }
    }
    return regions.emplace(positions, std::move(r)).first->second;
}

} // namespace detail

int PunishmentRegion::find(int arena, const std::vector<int>& goals) const
{
    std::vector<int> key{arena};
    key.insert(key.end(), goals.begin(), goals.end());
    auto it = index.find(key);
    return it == index.end() ? -1 : it->second;
}

bool PunishmentRegion::contains(int arena, const std::vector<int>& goals) const
{
    int x = find(arena, goals);
    return x >= 0 && member[x];
}

PunishmentRegion punishment_region(const Game& g, const std::vector<int>& target_ids)
{
    detail::Context ctx(g);
    std::vector<int> positions;
    for (int id : target_ids) positions.push_back(g.index_of(id));
    std::sort(positions.begin(), positions.end());
    positions.erase(std::unique(positions.begin(), positions.end()), positions.end());
    return ctx.region(positions);
}

} // namespace ldlg
