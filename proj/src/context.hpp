#pragma once

#include <map>
#include <vector>

#include "ldlg/equilibria.hpp"

namespace ldlg::detail {

// Arena plus per-player goal automata, shared by the solvers.
struct Context {
    explicit Context(const Game& g);

    int num_players() const { return game.num_players(); }
    /// Region against the players at the given positions (sorted).
    const PunishmentRegion& region(const std::vector<int>& positions);

    const Game& game;
    Arena arena;
    std::vector<GoalAutomaton> goals;
    std::map<std::vector<int>, PunishmentRegion> regions;
};

InfiniteAcceptor arena_acceptor(const Arena& a, const Vocabulary& vocab);

// Every tuple picking one entry per list, as the union of the picks.
std::vector<Valuation> combinations(const std::vector<const std::vector<Valuation>*>& lists);

} // namespace ldlg::detail

namespace ldlg::detail {

// Goal outcome on a lasso through its absorbing prefix automaton.
bool goal_holds(const GoalAutomaton& ga, const Lasso& w);

} // namespace ldlg::detail
