#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "ldlg/automata.hpp"
#include "ldlg/game.hpp"
#include "ldlg/strategy.hpp"

namespace ldlg {

enum class Verdict { Yes, No, Error };

struct MembershipResult {
    Verdict verdict = Verdict::Yes;
    Lasso play;
    /// Player with a profitable deviation (No only).
    std::optional<int> deviator;
    std::optional<Lasso> deviation;
    std::string reason;
};

/// Is the profile a Nash equilibrium? Error when its play breaks the game rules.
MembershipResult ne_membership(const Game& g, const StrategyProfile& p);

/// Region of (arena state, target goal states) from which the other players can
/// keep the targets' goals from all holding, against every target behaviour.
struct PunishmentRegion {
    std::vector<int> targets;  // player ids
    std::vector<int> arena_state;
    std::vector<std::vector<int>> goal_state;  // per state, one entry per target
    std::vector<char> member;
    /// Joint move of the punishers (union of their parts) for member states.
    std::vector<Valuation> move;

    int num_states() const { return static_cast<int>(arena_state.size()); }
    /// State index or -1.
    int find(int arena, const std::vector<int>& goals) const;
    bool contains(int arena, const std::vector<int>& goals) const;

    std::map<std::vector<int>, int> index;
};

PunishmentRegion punishment_region(const Game& g, const std::vector<int>& target_ids);

struct NashWitness {
    std::vector<int> winners;  // player ids, ascending
    Lasso lasso;
    /// Goal outcome per player id.
    std::map<int, bool> satisfied;
    /// Punishment tables for the losers, keyed by loser id.
    std::map<int, PunishmentRegion> punishments;
    /// Set by solvers that construct the profile directly.
    std::optional<StrategyProfile> profile;

    std::vector<int> losers(const Game& g) const;
};

std::optional<NashWitness> ne_nonemptiness(const Game& g);
/// Nash equilibrium whose play satisfies phi.
std::optional<NashWitness> e_nash(const Game& g, const Goal& phi);

struct ANashResult {
    bool holds = true;
    /// Nash play violating phi.
    std::optional<NashWitness> counterexample;
};

ANashResult a_nash(const Game& g, const Goal& phi);
std::optional<NashWitness> sne_nonemptiness(const Game& g);

/// Strategy profile following the witness play and punishing unilateral
/// deviations of losers. Throws std::invalid_argument on a malformed witness.
StrategyProfile extract_profile(const Game& g, const NashWitness& w);

/// Equilibrium among strategies that only look at the current valuation.
/// Throws std::length_error when the strategy space is too large to enumerate.
std::optional<NashWitness> memoryless_ne(const Game& g);

struct MyopicResult {
    std::optional<NashWitness> witness;  // empty means unknown within the bound
};

/// Equilibrium among fixed output words with prefix and loop of at most bound letters.
MyopicResult myopic_ne(const Game& g, int bound);

/// Four-player game that has an equilibrium iff phi is realizable by a system
/// controlling x against an environment controlling y.
Game build_synthesis_game(const Formula& phi, const std::vector<std::string>& x, const std::vector<std::string>& y);

/// Stable JSON document (sorted keys).
std::string witness_json(const Game& g, const NashWitness& w);

} // namespace ldlg
