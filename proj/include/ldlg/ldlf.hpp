#pragma once

#include <memory>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include "ldlg/valuation.hpp"

namespace ldlg {

class PathExpr;

enum class FormulaKind { True, False, Atom, Not, And, Or, Diamond, Box };
enum class PathKind { Prop, Test, Choice, Seq, Star, Power };

/// Immutable LDLf formula. Copies share structure.
class Formula {
public:
    static Formula tt();
    static Formula ff();
    static Formula atom(std::string name);
    static Formula negate(Formula f);
    static Formula conj(Formula a, Formula b);
    static Formula disj(Formula a, Formula b);
    static Formula diamond(PathExpr path, Formula f);
    static Formula box(PathExpr path, Formula f);

    FormulaKind kind() const;
    const std::string& name() const;
    /// Operand of Not, left operand of And/Or, body of Diamond/Box.
    const Formula& lhs() const;
    const Formula& rhs() const;
    const PathExpr& path() const;

    /// Number of AST nodes (formula and path nodes; Prop wraps its payload for free).
    int size() const;
    bool is_propositional() const;
    /// Atom names occurring anywhere in the formula.
    std::set<std::string> atoms() const;

    /// Stable identity of the underlying node, for memo tables.
    const void* id() const { return node_.get(); }

    struct Node;

private:
    explicit Formula(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
    std::shared_ptr<const Node> node_;
};

/// Immutable regular path expression over propositional formulas and tests.
class PathExpr {
public:
    static PathExpr prop(Formula psi);
    static PathExpr test(Formula f);
    static PathExpr choice(PathExpr a, PathExpr b);
    static PathExpr seq(PathExpr a, PathExpr b);
    static PathExpr star(PathExpr a);
    /// rho^n; kept as a node, see expand_powers.
    static PathExpr power(PathExpr a, unsigned n);

    PathKind kind() const;
    /// Payload of Prop and Test.
    const Formula& formula() const;
    /// Operand of Star/Power, left operand of Choice/Seq.
    const PathExpr& lhs() const;
    const PathExpr& rhs() const;
    unsigned exponent() const;

    int size() const;
    const void* id() const { return node_.get(); }

    struct Node;

private:
    explicit PathExpr(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
    std::shared_ptr<const Node> node_;
};

enum class Quantifier { Exists, Forall };

/// Quantified-prefix formula: E psi (some prefix) or A psi (every prefix).
struct QFormula {
    Quantifier quantifier;
    Formula body;
};

/// A player goal or query: plain LDLf (prefix-existential on plays) or QPLDLf.
using Goal = std::variant<Formula, QFormula>;

class ParseError : public std::runtime_error {
public:
    ParseError(const std::string& what, int line, int column);
    int line() const { return line_; }
    int column() const { return column_; }

private:
    int line_;
    int column_;
};

/// Parses the concrete syntax (optional leading E / A quantifier).
Goal parse_formula(std::string_view text);
/// Parses an unquantified formula; rejects a quantifier.
Formula parse_ldlf(std::string_view text);
/// Parses a propositional formula (no modalities).
Formula parse_prop(std::string_view text);

/// Fully parenthesized rendering that parse_formula reads back to the same AST.
std::string to_string(const Formula& f);
std::string to_string(const PathExpr& p);
std::string to_string(const Goal& g);

bool structurally_equal(const Formula& a, const Formula& b);
bool structurally_equal(const PathExpr& a, const PathExpr& b);

/// Replaces every rho^n by its n-fold sequence; rho^0 becomes the test {tt}?.
Formula expand_powers(const Formula& f);
/// Negation normal form: negations only on atoms.
Formula nnf(const Formula& f);

/// Truth of a propositional formula under a valuation. Unknown atoms are false.
bool eval_prop(const Formula& psi, const Vocabulary& vocab, Valuation v);

/// Evaluates one formula on many traces without re-resolving atoms each time.
class TraceEvaluator {
public:
    TraceEvaluator(const Formula& f, const Vocabulary& vocab);
    ~TraceEvaluator();
    TraceEvaluator(TraceEvaluator&&) noexcept;
    TraceEvaluator& operator=(TraceEvaluator&&) noexcept;

    /// pi, i |= f. An empty trace is accepted only with i = 0 (Diamond false, Box true,
    /// atoms false). Throws std::out_of_range for other out-of-range indices.
    bool eval(const Trace& trace, std::size_t i = 0) const;

private:
    struct Impl;
    std::unique_ptr<Impl> impl_;

    friend std::set<std::pair<std::size_t, std::size_t>> path_relation(const PathExpr&, const Vocabulary&,
                                                                        const Trace&);
};

bool eval_trace(const Formula& f, const Vocabulary& vocab, const Trace& trace, std::size_t i = 0);

/// R(rho, pi): all (i, j) pairs with 0 <= i <= j <= t+1.
std::set<std::pair<std::size_t, std::size_t>> path_relation(const PathExpr& rho, const Vocabulary& vocab,
                                                             const Trace& trace);

/// Some finite prefix of the lasso satisfies f.
bool eval_lasso(const Formula& f, const Vocabulary& vocab, const Lasso& w);
bool eval_qpldl(const QFormula& qf, const Vocabulary& vocab, const Lasso& w);
/// Plain formulas are read as E f.
bool eval_goal(const Goal& g, const Vocabulary& vocab, const Lasso& w);

} // namespace ldlg
