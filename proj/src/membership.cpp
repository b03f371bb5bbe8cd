#include "context.hpp"

namespace ldlg {

MembershipResult ne_membership(const Game& g, const StrategyProfile& p)
{
    if (p.machines.size() != g.players.size()) throw std::invalid_argument("profile does not match the game's players");
    MembershipResult r;
    r.play = play_of(p);
    Arena arena = build_arena(g);
    if (!arena.legal(r.play)) {
        r.verdict = Verdict::Error;
        r.reason = "play breaks the game rules";
        return r;
    }
    InfiniteAcceptor board = detail::arena_acceptor(arena, g.vocab);
    for (int i = 0; i < g.num_players(); ++i) {
        const Goal& goal = g.players[i].goal;
        if (eval_goal(goal, g.vocab, r.play)) continue;
        InfiniteAcceptor others = board;
        for (int j = 0; j < g.num_players(); ++j)
            if (j != i) others = product(others, strategy_automaton(p.machines[j], arena.controls[j], g.vocab));
        InfiniteAcceptor dev = [&] {
            if (const auto* f = std::get_if<Formula>(&goal)) return product(*f, others);
            const auto& q = std::get<QFormula>(goal);
            if (q.quantifier == Quantifier::Exists) return product(q.body, others);
            return product(goal_acceptor(goal, g.vocab), others);
        }();
        if (auto w = find_accepted(dev)) {
            r.verdict = Verdict::No;
            r.deviator = g.players[i].id;
            r.deviation = *w;
            r.reason = "player " + std::to_string(g.players[i].id) + " can deviate";
            return r;
        }
    }
    return r;
}

} // namespace ldlg
