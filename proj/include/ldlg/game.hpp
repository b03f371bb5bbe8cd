#pragma once

#include <map>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "ldlg/ldlf.hpp"

namespace ldlg {

/// guard ~> x1 := psi1; ...; xk := psik
struct GuardedCommand {
    Formula guard = Formula::tt();
    std::vector<std::pair<int, Formula>> assignments;  // (variable index, right-hand side)

    /// ctr(g): the assigned variables.
    Valuation controlled() const;
    bool enabled(const Vocabulary& vocab, Valuation v) const { return eval_prop(guard, vocab, v); }
};

struct Module {
    std::string name;
    Valuation controls;
    std::vector<GuardedCommand> init;
    std::vector<GuardedCommand> update;
    /// Every valuation of the controlled variables is always available.
    bool free = false;

    /// One command per valuation of the controlled variables, in both phases.
    static Module free_module(std::string name, Valuation controls, const Vocabulary& vocab);
};

enum class Phase { Init, Update };

/// The assigned variables whose right-hand side holds under v. Throws
/// std::invalid_argument when the guard does not hold.
Valuation exec_command(const GuardedCommand& g, const Vocabulary& vocab, Valuation v);

/// Controlled part of every possible next valuation, sorted. Update moves keep
/// unassigned controlled variables; with no enabled command the player skips.
std::vector<Valuation> enabled_moves(const Module& m, const Vocabulary& vocab, Phase phase, Valuation v);

/// Synchronous composition: conjoined guards, concatenated assignments.
Module module_product(const Module& a, const Module& b);

struct Player {
    int id;
    Module module;
    Goal goal;
};

struct Game {
    std::string name;
    Vocabulary vocab;
    std::vector<Player> players;  // sorted by id

    int num_players() const { return static_cast<int>(players.size()); }
    /// Position of the player with the given id; throws std::out_of_range.
    int index_of(int id) const;
};

/// Reads the game file format. Throws ParseError (with the line) on bad input.
Game parse_game(std::string_view text);
Game load_game(const std::string& path);
std::string format_game(const Game& g);

/// Reachable game structure. State 0 is the fresh initial state; every other
/// state is a valuation.
struct Arena {
    static constexpr int kStart = 0;

    std::vector<Valuation> controls;   // per player position
    std::vector<Valuation> valuation;  // valuation[0] is unused
    /// moves[s][i]: enabled moves of player i (by position) at state s.
    std::vector<std::vector<std::vector<Valuation>>> moves;
    std::map<std::uint32_t, int> index;

    int num_states() const { return static_cast<int>(moves.size()); }
    /// State holding v, or -1 when v is unreachable.
    int state_of(Valuation v) const;
    /// Some enabled move tuple at s produces next.
    bool legal(int s, Valuation next) const;
    /// Every step of the play, starting from the initial state, is legal.
    bool legal(const Lasso& w) const;
    /// Joint successors of s: every combination of enabled moves, deduplicated and sorted.
    std::vector<Valuation> successors(int s) const;
};

Arena build_arena(const Game& g);

} // namespace ldlg
