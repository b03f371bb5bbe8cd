#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "ldlg/automata.hpp"
#include "ldlg/game.hpp"

namespace ldlg {

/// Deterministic finite-state transducer: reads the whole valuation of each
/// round, outputs the player's own variables.
struct StrategyMachine {
    int player = 0;
    std::vector<std::string> names;
    int initial = 0;
    std::vector<Valuation> output;       // per state, over the player's variables
    std::vector<std::vector<int>> next;  // [state][valuation bits]

    int num_states() const { return static_cast<int>(output.size()); }
    int step(int s, Valuation v) const { return next[s][v.bits()]; }
    /// States reachable from the initial state under arbitrary inputs.
    std::vector<int> reachable() const;

    /// Machine with a single state and constant output.
    static StrategyMachine constant(int player, Valuation out, const Vocabulary& vocab);
};

/// One machine per player, in the game's player order.
struct StrategyProfile {
    std::vector<StrategyMachine> machines;

    const StrategyMachine& of(int player_id) const;
};

StrategyProfile parse_profile(const Game& g, std::string_view text);
StrategyProfile load_profile(const Game& g, const std::string& path);
std::string format_profile(const Game& g, const StrategyProfile& p);

enum class Compatibility { Reachable, Strict };

/// Outputs are always producible by enabled commands of the module. Reachable
/// mode only looks at (state, valuation) pairs that can occur in a play.
bool is_compatible(const StrategyMachine& s, const Module& m, const Vocabulary& vocab,
                   Compatibility mode = Compatibility::Reachable);

/// The unique play of a total profile.
Lasso play_of(const StrategyProfile& p);

/// Accepts exactly the plays along which the machine's outputs are respected.
/// Deviations lead to a sink whose flag is forbidden.
InfiniteAcceptor strategy_automaton(const StrategyMachine& s, Valuation controls, const Vocabulary& vocab);

/// Output after a round depends only on that round's valuation.
bool is_memoryless(const StrategyMachine& s);
/// Each valuation of the play has a single successor.
bool is_memoryless_play(const Lasso& w);
/// Transitions ignore the observed valuation.
bool is_myopic(const StrategyMachine& s);

} // namespace ldlg
