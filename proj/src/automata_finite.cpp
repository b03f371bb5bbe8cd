#include <algorithm>
#include <map>
#include <set>
#include <stdexcept>

#include "ldlg/automata.hpp"
#include "dnf.hpp"

namespace ldlg {

namespace {

class AfwBuilder {
public:
    AfwBuilder(const Vocabulary& vocab, std::vector<Formula>& states) : vocab_(vocab), states_(states) {}

    int intern(const Formula& f)
    {
        auto key = to_string(f);
        auto [it, fresh] = ids_.emplace(key, static_cast<int>(states_.size()));
        if (fresh) states_.push_back(f);
        return it->second;
    }

    Dnf delta(const Formula& f, Valuation letter, bool last)
    {
        switch (f.kind()) {
        case FormulaKind::True: return dnf::truth();
        case FormulaKind::False: return dnf::falsity();
        case FormulaKind::Atom: return dnf::constant(holds(f.name(), letter));
        case FormulaKind::Not:
            if (f.lhs().kind() != FormulaKind::Atom) throw std::logic_error("formula not in negation normal form");
            return dnf::constant(!holds(f.lhs().name(), letter));
        case FormulaKind::And: return dnf::conj(delta(f.lhs(), letter, last), delta(f.rhs(), letter, last));
        case FormulaKind::Or: return dnf::disj(delta(f.lhs(), letter, last), delta(f.rhs(), letter, last));
        case FormulaKind::Diamond: return diamond(f.path(), f.lhs(), letter, last);
        case FormulaKind::Box: return box(f.path(), f.lhs(), letter, last);
        }
        return dnf::falsity();
    }

private:
    bool holds(const std::string& name, Valuation letter) const
    {
        auto i = vocab_.index(name);
        return i && letter.contains(*i);
    }

    Dnf diamond(const PathExpr& p, const Formula& cont, Valuation letter, bool last)
    {
        switch (p.kind()) {
        case PathKind::Prop:
            if (!last && eval_prop(p.formula(), vocab_, letter)) return {{intern(cont)}};
            return dnf::falsity();
        case PathKind::Test: return dnf::conj(delta(p.formula(), letter, last), delta(cont, letter, last));
        case PathKind::Choice:
            return dnf::disj(diamond(p.lhs(), cont, letter, last), diamond(p.rhs(), cont, letter, last));
        case PathKind::Seq: return diamond(p.lhs(), Formula::diamond(p.rhs(), cont), letter, last);
        case PathKind::Star: {
            auto key = "<" + to_string(p) + ">" + to_string(cont);
            if (std::find(stack_.begin(), stack_.end(), key) != stack_.end()) return dnf::falsity();
            stack_.push_back(key);
            Dnf out = dnf::disj(delta(cont, letter, last),
                                diamond(p.lhs(), Formula::diamond(p, cont), letter, last));
            stack_.pop_back();
            return out;
        }
        case PathKind::Power: break;
        }
        throw std::logic_error("power not expanded");
    }

    Dnf box(const PathExpr& p, const Formula& cont, Valuation letter, bool last)
    {
        switch (p.kind()) {
        case PathKind::Prop:
            if (last || !eval_prop(p.formula(), vocab_, letter)) return dnf::truth();
            return {{intern(cont)}};
        case PathKind::Test:
            return dnf::disj(delta(nnf(Formula::negate(p.formula())), letter, last), delta(cont, letter, last));
        case PathKind::Choice: return dnf::conj(box(p.lhs(), cont, letter, last), box(p.rhs(), cont, letter, last));
        case PathKind::Seq: return box(p.lhs(), Formula::box(p.rhs(), cont), letter, last);
        case PathKind::Star: {
            auto key = "[" + to_string(p) + "]" + to_string(cont);
            if (std::find(stack_.begin(), stack_.end(), key) != stack_.end()) return dnf::truth();
            stack_.push_back(key);
            Dnf out = dnf::conj(delta(cont, letter, last), box(p.lhs(), Formula::box(p, cont), letter, last));
            stack_.pop_back();
            return out;
        }
        case PathKind::Power: break;
        }
        throw std::logic_error("power not expanded");
    }

    const Vocabulary& vocab_;
    std::vector<Formula>& states_;
    std::map<std::string, int> ids_;
    std::vector<std::string> stack_;
};

Valuation spread(std::size_t index, const std::vector<int>& relevant)
{
    Valuation v;
    for (std::size_t k = 0; k < relevant.size(); ++k)
        if ((index >> k) & 1u) v = v.with(relevant[k]);
    return v;
}

std::vector<Valuation> all_letters(const Vocabulary& vocab)
{
    std::vector<Valuation> out;
    for (std::uint32_t b = 0; b < vocab.alphabet_size(); ++b) out.emplace_back(b);
    return out;
}

// Drops unreachable states and renumbers in breadth-first order.
Dfw prune(const Dfw& d)
{
    std::vector<int> id(d.num_states(), -1);
    std::vector<int> order{d.initial};
    id[d.initial] = 0;
    for (std::size_t k = 0; k < order.size(); ++k)
        for (int t : d.next[order[k]])
            if (id[t] < 0) {
                id[t] = static_cast<int>(order.size());
                order.push_back(t);
            }
    Dfw out;
    out.vocab = d.vocab;
    out.initial = 0;
    for (int q : order) {
        std::vector<int> row;
        row.reserve(d.next[q].size());
        for (int t : d.next[q]) row.push_back(id[t]);
        out.next.push_back(std::move(row));
        out.final.push_back(d.final[q]);
    }
    return out;
}

} // namespace

Afw::Afw(const Formula& f, const Vocabulary& vocab) : vocab_(vocab)
{
    Formula g = nnf(expand_powers(f));
    for (const auto& name : g.atoms())
        if (auto i = vocab.index(name)) relevant_.push_back(*i);
    std::sort(relevant_.begin(), relevant_.end());
    accepts_empty_ = eval_trace(g, vocab, {});

    AfwBuilder builder(vocab_, states_);
    builder.intern(g);
    const std::size_t letters = std::size_t{1} << relevant_.size();
    for (std::size_t q = 0; q < states_.size(); ++q) {
        std::vector<Dnf> row(2 * letters);
        for (std::size_t l = 0; l < letters; ++l) {
            Formula s = states_[q];
            row[2 * l] = builder.delta(s, spread(l, relevant_), false);
            row[2 * l + 1] = builder.delta(s, spread(l, relevant_), true);
        }
        table_.push_back(std::move(row));
    }
}

std::size_t Afw::letter_index(Valuation v) const
{
    std::size_t idx = 0;
    for (std::size_t k = 0; k < relevant_.size(); ++k)
        if (v.contains(relevant_[k])) idx |= std::size_t{1} << k;
    return idx;
}

const Dnf& Afw::delta(int q, Valuation letter, bool last) const
{
    return table_[q][2 * letter_index(letter) + (last ? 1 : 0)];
}

bool Afw::accepts(const Trace& trace) const
{
    if (trace.empty()) return accepts_empty_;
    // Sets of obligations still to discharge, kept as a DNF over states.
    Dnf current{{initial()}};
    for (std::size_t i = 0; i < trace.size(); ++i) {
        const bool last = i + 1 == trace.size();
        Dnf next;
        for (const auto& clause : current) {
            Dnf c = dnf::truth();
            for (int q : clause) c = dnf::conj(c, delta(q, trace[i], last));
            next = dnf::disj(next, c);
        }
        current = std::move(next);
    }
    return dnf::is_true(current);
}

Afw compile_afw(const Formula& f, const Vocabulary& vocab) { return Afw(f, vocab); }

Nfw afw_to_nfw(const Afw& a)
{
    Nfw n;
    n.vocab = a.vocab();
    std::map<Clause, int> ids;
    std::vector<Clause> labels;
    int sink = -1;

    auto add_state = [&](bool final) {
        n.edges.emplace_back();
        n.final.push_back(final);
        return n.num_states() - 1;
    };
    auto intern = [&](const Clause& c) {
        auto it = ids.find(c);
        if (it != ids.end()) return it->second;
        int id = add_state(false);
        ids.emplace(c, id);
        labels.resize(n.num_states());
        labels[id] = c;
        return id;
    };

    // Start state: same moves as {initial}, final only for the empty trace.
    add_state(a.accepts_empty());
    labels.push_back({a.initial()});
    n.initial = {0};

    const auto letters = all_letters(a.vocab());
    for (int s = 0; s < n.num_states(); ++s) {
        if (s == sink) continue;
        const Clause label = labels[s];
        std::vector<Edge> out;
        for (Valuation letter : letters) {
            Dnf step = dnf::truth();
            bool ends = true;
            for (int q : label) {
                step = dnf::conj(step, a.delta(q, letter, false));
                ends = ends && dnf::is_true(a.delta(q, letter, true));
            }
            for (const auto& c : step) out.push_back({letter, intern(c)});
            if (ends) {
                if (sink < 0) {
                    sink = add_state(true);
                    labels.resize(n.num_states());
                }
                out.push_back({letter, sink});
            }
        }
        std::sort(out.begin(), out.end());
        out.erase(std::unique(out.begin(), out.end()), out.end());
        n.edges[s] = std::move(out);
    }
    return n;
}

bool Nfw::accepts(const Trace& trace) const
{
    std::set<int> current(initial.begin(), initial.end());
    for (Valuation letter : trace) {
        std::set<int> next;
        for (int q : current)
            for (const auto& e : edges[q])
                if (e.letter == letter) next.insert(e.target);
        current = std::move(next);
    }
    return std::any_of(current.begin(), current.end(), [&](int q) { return final[q]; });
}

Dfw determinize(const Nfw& n)
{
    Dfw d;
    d.vocab = n.vocab;
    std::map<std::vector<int>, int> ids;
    std::vector<std::vector<int>> subsets;
    auto intern = [&](std::vector<int> s) {
        std::sort(s.begin(), s.end());
        s.erase(std::unique(s.begin(), s.end()), s.end());
        auto [it, fresh] = ids.emplace(s, static_cast<int>(subsets.size()));
        if (fresh) subsets.push_back(std::move(s));
        return it->second;
    };
    d.initial = intern(n.initial);
    const std::uint32_t letters = n.vocab.alphabet_size();
    for (std::size_t k = 0; k < subsets.size(); ++k) {
        std::vector<int> row(letters);
        for (std::uint32_t l = 0; l < letters; ++l) {
            std::vector<int> target;
            for (int q : subsets[k])
                for (const auto& e : n.edges[q])
                    if (e.letter.bits() == l) target.push_back(e.target);
            row[l] = intern(std::move(target));
        }
        d.next.push_back(std::move(row));
    }
    for (const auto& s : subsets)
        d.final.push_back(std::any_of(s.begin(), s.end(), [&](int q) { return n.final[q]; }));
    return d;
}

bool Dfw::accepts(const Trace& trace) const
{
    int q = initial;
    for (Valuation v : trace) q = step(q, v);
    return final[q];
}

bool Dfw::absorbing() const
{
    for (int q = 0; q < num_states(); ++q)
        if (final[q] && std::any_of(next[q].begin(), next[q].end(), [&](int t) { return t != q; })) return false;
    return true;
}

Dfw absorb(const Dfw& d)
{
    Dfw out = d;
    for (int q = 0; q < out.num_states(); ++q)
        if (out.final[q]) std::fill(out.next[q].begin(), out.next[q].end(), q);
    return prune(out);
}

Dfw compile_dfw(const Formula& f, const Vocabulary& vocab) { return determinize(afw_to_nfw(Afw(f, vocab))); }

bool eval_lasso(const Formula& f, const Vocabulary& vocab, const Lasso& w)
{
    if (w.loop.empty()) throw std::invalid_argument("lasso loop must be nonempty");
    Dfw d = absorb(compile_dfw(f, vocab));
    int q = d.initial;
    if (d.final[q]) return true;
    for (Valuation v : w.prefix) {
        q = d.step(q, v);
        if (d.final[q]) return true;
    }
    std::set<std::pair<int, std::size_t>> seen;
    for (std::size_t k = 0; seen.emplace(q, k).second; k = (k + 1) % w.loop.size()) {
        q = d.step(q, w.loop[k]);
        if (d.final[q]) return true;
    }
    return false;
}

bool eval_qpldl(const QFormula& qf, const Vocabulary& vocab, const Lasso& w)
{
    if (qf.quantifier == Quantifier::Exists) return eval_lasso(qf.body, vocab, w);
    return !eval_lasso(Formula::negate(qf.body), vocab, w);
}

bool eval_goal(const Goal& g, const Vocabulary& vocab, const Lasso& w)
{
    if (auto* f = std::get_if<Formula>(&g)) return eval_lasso(*f, vocab, w);
    return eval_qpldl(std::get<QFormula>(g), vocab, w);
}

GoalAutomaton goal_automaton(const Goal& g, const Vocabulary& vocab)
{
    if (auto* f = std::get_if<Formula>(&g)) return {absorb(compile_dfw(*f, vocab)), false};
    const auto& q = std::get<QFormula>(g);
    if (q.quantifier == Quantifier::Exists) return {absorb(compile_dfw(q.body, vocab)), false};
    return {absorb(compile_dfw(Formula::negate(q.body), vocab)), true};
}

} // namespace ldlg
