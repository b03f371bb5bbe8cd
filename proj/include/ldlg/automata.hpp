#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "ldlg/ldlf.hpp"

namespace ldlg {

/// Positive boolean combination in disjunctive normal form. Each clause is a
/// sorted list of state ids; {} is false and {{}} is true.
using Clause = std::vector<int>;
using Dnf = std::vector<Clause>;

struct Edge {
    Valuation letter;
    int target;

    auto operator<=>(const Edge&) const = default;
};

/// Alternating automaton over finite words. States are closure formulas in
/// negation normal form; delta is tabulated for every letter at construction.
class Afw {
public:
    Afw(const Formula& f, const Vocabulary& vocab);

    const Vocabulary& vocab() const { return vocab_; }
    int initial() const { return 0; }
    int num_states() const { return static_cast<int>(states_.size()); }
    const Formula& state(int q) const { return states_[q]; }

    /// delta(q, letter). With last = true the result is the end-of-trace pass and
    /// is always {} or {{}}.
    const Dnf& delta(int q, Valuation letter, bool last) const;
    /// Acceptance of the empty trace.
    bool accepts_empty() const { return accepts_empty_; }
    bool accepts(const Trace& trace) const;

private:
    std::size_t letter_index(Valuation v) const;

    Vocabulary vocab_;
    std::vector<int> relevant_;  // vocabulary indices mentioned by the formula
    std::vector<Formula> states_;
    std::vector<std::vector<Dnf>> table_;  // [state][2 * letter_index + last]
    bool accepts_empty_ = false;
};

Afw compile_afw(const Formula& f, const Vocabulary& vocab);

/// Nondeterministic finite-word automaton with edges sorted by (letter, target).
struct Nfw {
    Vocabulary vocab;
    std::vector<std::vector<Edge>> edges;
    std::vector<char> final;
    std::vector<int> initial;

    int num_states() const { return static_cast<int>(edges.size()); }
    bool accepts(const Trace& trace) const;
};

/// Dealternation. State 0 is a fresh start state; the accepting sink has no
/// outgoing transitions.
Nfw afw_to_nfw(const Afw& a);

/// Total deterministic finite-word automaton.
struct Dfw {
    Vocabulary vocab;
    int initial = 0;
    std::vector<std::vector<int>> next;  // [state][letter bits]
    std::vector<char> final;

    int num_states() const { return static_cast<int>(next.size()); }
    int step(int q, Valuation v) const { return next[q][v.bits()]; }
    bool accepts(const Trace& trace) const;
    /// Every final state only loops to itself.
    bool absorbing() const;
};

/// Reachable subset construction with an explicit empty-subset sink.
Dfw determinize(const Nfw& n);
/// Final states become sinks with self-loops.
Dfw absorb(const Dfw& d);
/// nnf, power expansion, AFW, NFW, DFW.
Dfw compile_dfw(const Formula& f, const Vocabulary& vocab);

/// Infinite-word acceptor with monotone state flags. A run is accepting when
/// it visits a state holding every required flag and never visits a state
/// holding a forbidden flag.
struct InfiniteAcceptor {
    Vocabulary vocab;
    std::vector<std::vector<Edge>> edges;
    std::vector<std::uint32_t> flags;
    std::vector<int> initial;
    int flag_bits = 0;
    std::uint32_t required = 0;
    std::uint32_t forbidden = 0;

    int num_states() const { return static_cast<int>(edges.size()); }
    bool deterministic() const;
    bool accepts(const Lasso& w) const;
};

/// Infinite-word lift: finals get flag 0 and only self-loops.
InfiniteAcceptor lift_infinite(const Nfw& n);
InfiniteAcceptor lift_infinite(const Dfw& d);
/// Accepts every lasso.
InfiniteAcceptor universal_acceptor(const Vocabulary& vocab);
/// Swaps required and forbidden on a deterministic total single-flag acceptor.
InfiniteAcceptor complement(const InfiniteAcceptor& a);
/// Language intersection; throws std::invalid_argument on alphabet mismatch.
InfiniteAcceptor product(const InfiniteAcceptor& a, const InfiniteAcceptor& b);
Nfw product(const Nfw& a, const Nfw& b);
/// On-the-fly intersection of the lifted formula automaton with b, exploring
/// (obligation set, partner state) pairs in insertion order.
InfiniteAcceptor product(const Formula& f, const InfiniteAcceptor& b);

/// Accepting lasso, or nullopt when the language is empty. The witness reaches
/// the required flags breadth-first and closes the shortest cycle after them.
std::optional<Lasso> find_accepted(const InfiniteAcceptor& a);
inline bool is_empty(const InfiniteAcceptor& a) { return !find_accepted(a); }

InfiniteAcceptor qpldl_acceptor(const QFormula& qf, const Vocabulary& vocab);
InfiniteAcceptor goal_acceptor(const Goal& g, const Vocabulary& vocab);

/// Prefix acceptor of a goal used by the game solvers. In avoid mode (A goals)
/// the goal holds iff the final flag is never reached.
struct GoalAutomaton {
    Dfw dfw;  // absorbing
    bool avoid = false;

    bool holds(bool flag_reached) const { return flag_reached != avoid; }
};

GoalAutomaton goal_automaton(const Goal& g, const Vocabulary& vocab);

std::string dump(const Nfw& n);
std::string dump(const Dfw& d);
std::string dump(const InfiniteAcceptor& a);

} // namespace ldlg
