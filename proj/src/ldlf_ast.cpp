#include <optional>

#include "ldlg/ldlf.hpp"

namespace ldlg {

struct Formula::Node {
    FormulaKind kind;
    std::string name;
    std::optional<Formula> a;
    std::optional<Formula> b;
    std::optional<PathExpr> path;
};

struct PathExpr::Node {
    PathKind kind;
    std::optional<Formula> f;
    std::optional<PathExpr> a;
    std::optional<PathExpr> b;
    unsigned n = 0;
};

namespace {

const Formula& shared_tt()
{
    static const Formula t = Formula::tt();
    return t;
}

} // namespace

Formula Formula::tt() { return Formula(std::make_shared<const Node>(Node{FormulaKind::True, {}, {}, {}, {}})); }
Formula Formula::ff() { return Formula(std::make_shared<const Node>(Node{FormulaKind::False, {}, {}, {}, {}})); }

Formula Formula::atom(std::string name)
{
    if (name.empty()) throw std::invalid_argument("empty atom name");
    return Formula(std::make_shared<const Node>(Node{FormulaKind::Atom, std::move(name), {}, {}, {}}));
}

Formula Formula::negate(Formula f)
{
    return Formula(std::make_shared<const Node>(Node{FormulaKind::Not, {}, std::move(f), {}, {}}));
}

Formula Formula::conj(Formula a, Formula b)
{
    return Formula(std::make_shared<const Node>(Node{FormulaKind::And, {}, std::move(a), std::move(b), {}}));
}

Formula Formula::disj(Formula a, Formula b)
{
    return Formula(std::make_shared<const Node>(Node{FormulaKind::Or, {}, std::move(a), std::move(b), {}}));
}

Formula Formula::diamond(PathExpr path, Formula f)
{
    return Formula(std::make_shared<const Node>(Node{FormulaKind::Diamond, {}, std::move(f), {}, std::move(path)}));
}

Formula Formula::box(PathExpr path, Formula f)
{
    return Formula(std::make_shared<const Node>(Node{FormulaKind::Box, {}, std::move(f), {}, std::move(path)}));
}

FormulaKind Formula::kind() const { return node_->kind; }
const std::string& Formula::name() const { return node_->name; }
const Formula& Formula::lhs() const { return *node_->a; }
const Formula& Formula::rhs() const { return *node_->b; }
const PathExpr& Formula::path() const { return *node_->path; }

int Formula::size() const
{
    switch (kind()) {
    case FormulaKind::True:
    case FormulaKind::False:
    case FormulaKind::Atom: return 1;
    case FormulaKind::Not: return 1 + lhs().size();
    case FormulaKind::And:
    case FormulaKind::Or: return 1 + lhs().size() + rhs().size();
    case FormulaKind::Diamond:
    case FormulaKind::Box: return 1 + path().size() + lhs().size();
    }
    return 0;
}

bool Formula::is_propositional() const
{
    switch (kind()) {
    case FormulaKind::True:
    case FormulaKind::False:
    case FormulaKind::Atom: return true;
    case FormulaKind::Not: return lhs().is_propositional();
    case FormulaKind::And:
    case FormulaKind::Or: return lhs().is_propositional() && rhs().is_propositional();
    default: return false;
    }
}

namespace {

void collect_atoms(const Formula& f, std::set<std::string>& out);

void collect_atoms(const PathExpr& p, std::set<std::string>& out)
{
    switch (p.kind()) {
    case PathKind::Prop:
    case PathKind::Test: collect_atoms(p.formula(), out); break;
    case PathKind::Choice:
    case PathKind::Seq:
        collect_atoms(p.lhs(), out);
        collect_atoms(p.rhs(), out);
        break;
    case PathKind::Star:
    case PathKind::Power: collect_atoms(p.lhs(), out); break;
    }
}

void collect_atoms(const Formula& f, std::set<std::string>& out)
{
    switch (f.kind()) {
    case FormulaKind::Atom: out.insert(f.name()); break;
    case FormulaKind::Not: collect_atoms(f.lhs(), out); break;
    case FormulaKind::And:
    case FormulaKind::Or:
        collect_atoms(f.lhs(), out);
        collect_atoms(f.rhs(), out);
        break;
    case FormulaKind::Diamond:
    case FormulaKind::Box:
        collect_atoms(f.path(), out);
        collect_atoms(f.lhs(), out);
        break;
    default: break;
    }
}

} // namespace

std::set<std::string> Formula::atoms() const
{
    std::set<std::string> out;
    collect_atoms(*this, out);
    return out;
}

PathExpr PathExpr::prop(Formula psi)
{
    if (!psi.is_propositional()) throw std::invalid_argument("path step must be propositional");
    return PathExpr(std::make_shared<const Node>(Node{PathKind::Prop, std::move(psi), {}, {}, 0}));
}

PathExpr PathExpr::test(Formula f)
{
    return PathExpr(std::make_shared<const Node>(Node{PathKind::Test, std::move(f), {}, {}, 0}));
}

PathExpr PathExpr::choice(PathExpr a, PathExpr b)
{
    return PathExpr(std::make_shared<const Node>(Node{PathKind::Choice, {}, std::move(a), std::move(b), 0}));
}

PathExpr PathExpr::seq(PathExpr a, PathExpr b)
{
    return PathExpr(std::make_shared<const Node>(Node{PathKind::Seq, {}, std::move(a), std::move(b), 0}));
}

PathExpr PathExpr::star(PathExpr a)
{
    return PathExpr(std::make_shared<const Node>(Node{PathKind::Star, {}, std::move(a), {}, 0}));
}

PathExpr PathExpr::power(PathExpr a, unsigned n)
{
    return PathExpr(std::make_shared<const Node>(Node{PathKind::Power, {}, std::move(a), {}, n}));
}

PathKind PathExpr::kind() const { return node_->kind; }
const Formula& PathExpr::formula() const { return *node_->f; }
const PathExpr& PathExpr::lhs() const { return *node_->a; }
const PathExpr& PathExpr::rhs() const { return *node_->b; }
unsigned PathExpr::exponent() const { return node_->n; }

int PathExpr::size() const
{
    switch (kind()) {
    case PathKind::Prop: return formula().size();
    case PathKind::Test: return 1 + formula().size();
    case PathKind::Choice:
    case PathKind::Seq: return 1 + lhs().size() + rhs().size();
    case PathKind::Star:
    case PathKind::Power: return 1 + lhs().size();
    }
    return 0;
}

bool structurally_equal(const Formula& a, const Formula& b)
{
    if (a.id() == b.id()) return true;
    if (a.kind() != b.kind()) return false;
    switch (a.kind()) {
    case FormulaKind::True:
    case FormulaKind::False: return true;
    case FormulaKind::Atom: return a.name() == b.name();
    case FormulaKind::Not: return structurally_equal(a.lhs(), b.lhs());
    case FormulaKind::And:
    case FormulaKind::Or: return structurally_equal(a.lhs(), b.lhs()) && structurally_equal(a.rhs(), b.rhs());
    case FormulaKind::Diamond:
    case FormulaKind::Box: return structurally_equal(a.path(), b.path()) && structurally_equal(a.lhs(), b.lhs());
    }
    return false;
}

bool structurally_equal(const PathExpr& a, const PathExpr& b)
{
    if (a.id() == b.id()) return true;
    if (a.kind() != b.kind()) return false;
    switch (a.kind()) {
    case PathKind::Prop:
    case PathKind::Test: return structurally_equal(a.formula(), b.formula());
    case PathKind::Choice:
    case PathKind::Seq: return structurally_equal(a.lhs(), b.lhs()) && structurally_equal(a.rhs(), b.rhs());
    case PathKind::Star: return structurally_equal(a.lhs(), b.lhs());
    case PathKind::Power: return a.exponent() == b.exponent() && structurally_equal(a.lhs(), b.lhs());
    }
    return false;
}

std::string to_string(const PathExpr& p);

std::string to_string(const Formula& f)
{
    switch (f.kind()) {
    case FormulaKind::True: return "tt";
    case FormulaKind::False: return "ff";
    case FormulaKind::Atom: return f.name();
    case FormulaKind::Not: return "!" + to_string(f.lhs());
    case FormulaKind::And: return "(" + to_string(f.lhs()) + " && " + to_string(f.rhs()) + ")";
    case FormulaKind::Or: return "(" + to_string(f.lhs()) + " || " + to_string(f.rhs()) + ")";
    case FormulaKind::Diamond: return "<" + to_string(f.path()) + ">" + to_string(f.lhs());
    case FormulaKind::Box: return "[" + to_string(f.path()) + "]" + to_string(f.lhs());
    }
    return {};
}

std::string to_string(const PathExpr& p)
{
    switch (p.kind()) {
    case PathKind::Prop: return to_string(p.formula());
    case PathKind::Test: return "{" + to_string(p.formula()) + "}?";
    case PathKind::Choice: return "(" + to_string(p.lhs()) + " + " + to_string(p.rhs()) + ")";
    case PathKind::Seq: return "(" + to_string(p.lhs()) + " ; " + to_string(p.rhs()) + ")";
    case PathKind::Star: return "(" + to_string(p.lhs()) + ")*";
    case PathKind::Power: return "(" + to_string(p.lhs()) + ")^" + std::to_string(p.exponent());
    }
    return {};
}

std::string to_string(const Goal& g)
{
    if (auto* f = std::get_if<Formula>(&g)) return to_string(*f);
    const auto& q = std::get<QFormula>(g);
    return std::string(q.quantifier == Quantifier::Exists ? "E " : "A ") + to_string(q.body);
}

PathExpr expand_powers(const PathExpr& p);

Formula expand_powers(const Formula& f)
{
    switch (f.kind()) {
    case FormulaKind::Not: return Formula::negate(expand_powers(f.lhs()));
    case FormulaKind::And: return Formula::conj(expand_powers(f.lhs()), expand_powers(f.rhs()));
    case FormulaKind::Or: return Formula::disj(expand_powers(f.lhs()), expand_powers(f.rhs()));
    case FormulaKind::Diamond: return Formula::diamond(expand_powers(f.path()), expand_powers(f.lhs()));
    case FormulaKind::Box: return Formula::box(expand_powers(f.path()), expand_powers(f.lhs()));
    default: return f;
    }
}

PathExpr expand_powers(const PathExpr& p)
{
    switch (p.kind()) {
    case PathKind::Prop: return p;
    case PathKind::Test: return PathExpr::test(expand_powers(p.formula()));
    case PathKind::Choice: return PathExpr::choice(expand_powers(p.lhs()), expand_powers(p.rhs()));
    case PathKind::Seq: return PathExpr::seq(expand_powers(p.lhs()), expand_powers(p.rhs()));
    case PathKind::Star: return PathExpr::star(expand_powers(p.lhs()));
    case PathKind::Power: {
        if (p.exponent() == 0) return PathExpr::test(shared_tt());
        PathExpr base = expand_powers(p.lhs());
        PathExpr out = base;
        for (unsigned k = 1; k < p.exponent(); ++k) out = PathExpr::seq(out, base);
        return out;
    }
    }
    return p;
}

namespace {

Formula nnf_pos(const Formula& f);
Formula nnf_neg(const Formula& f);

PathExpr nnf_path(const PathExpr& p)
{
    switch (p.kind()) {
    case PathKind::Prop: return p;  // payload is evaluated directly on letters
    case PathKind::Test: return PathExpr::test(nnf_pos(p.formula()));
    case PathKind::Choice: return PathExpr::choice(nnf_path(p.lhs()), nnf_path(p.rhs()));
    case PathKind::Seq: return PathExpr::seq(nnf_path(p.lhs()), nnf_path(p.rhs()));
    case PathKind::Star: return PathExpr::star(nnf_path(p.lhs()));
    case PathKind::Power: return PathExpr::power(nnf_path(p.lhs()), p.exponent());
    }
    return p;
}

Formula nnf_pos(const Formula& f)
{
    switch (f.kind()) {
    case FormulaKind::True:
    case FormulaKind::False:
    case FormulaKind::Atom: return f;
    case FormulaKind::Not: return nnf_neg(f.lhs());
    case FormulaKind::And: return Formula::conj(nnf_pos(f.lhs()), nnf_pos(f.rhs()));
    case FormulaKind::Or: return Formula::disj(nnf_pos(f.lhs()), nnf_pos(f.rhs()));
    case FormulaKind::Diamond: return Formula::diamond(nnf_path(f.path()), nnf_pos(f.lhs()));
    case FormulaKind::Box: return Formula::box(nnf_path(f.path()), nnf_pos(f.lhs()));
    }
    return f;
}

Formula nnf_neg(const Formula& f)
{
    switch (f.kind()) {
    case FormulaKind::True: return Formula::ff();
    case FormulaKind::False: return Formula::tt();
    case FormulaKind::Atom: return Formula::negate(f);
    case FormulaKind::Not: return nnf_pos(f.lhs());
    case FormulaKind::And: return Formula::disj(nnf_neg(f.lhs()), nnf_neg(f.rhs()));
    case FormulaKind::Or: return Formula::conj(nnf_neg(f.lhs()), nnf_neg(f.rhs()));
    case FormulaKind::Diamond: return Formula::box(nnf_path(f.path()), nnf_neg(f.lhs()));
    case FormulaKind::Box: return Formula::diamond(nnf_path(f.path()), nnf_neg(f.lhs()));
    }
    return f;
}

} // namespace

Formula nnf(const Formula& f) { return nnf_pos(f); }

bool eval_prop(const Formula& psi, const Vocabulary& vocab, Valuation v)
{
    switch (psi.kind()) {
    case FormulaKind::True: return true;
    case FormulaKind::False: return false;
    case FormulaKind::Atom: {
        auto i = vocab.index(psi.name());
        return i && v.contains(*i);
    }
    case FormulaKind::Not: return !eval_prop(psi.lhs(), vocab, v);
    case FormulaKind::And: return eval_prop(psi.lhs(), vocab, v) && eval_prop(psi.rhs(), vocab, v);
    case FormulaKind::Or: return eval_prop(psi.lhs(), vocab, v) || eval_prop(psi.rhs(), vocab, v);
    default: throw std::invalid_argument("eval_prop on a modal formula");
    }
}

} // namespace ldlg
