#include <cstdint>

#include "ldlg/ldlf.hpp"

namespace ldlg {

namespace {

// Square boolean matrix over positions [0, m).
class Relation {
public:
    explicit Relation(std::size_t m = 0) : m_(m), words_((m + 63) / 64), bits_(m * words_, 0) {}

    std::size_t dim() const { return m_; }
    bool get(std::size_t i, std::size_t j) const { return (row(i)[j / 64] >> (j % 64)) & 1u; }
    void set(std::size_t i, std::size_t j) { row(i)[j / 64] |= std::uint64_t{1} << (j % 64); }

    void or_row(std::size_t dst, const Relation& src, std::size_t src_row)
    {
        auto* d = row(dst);
        const auto* s = src.row(src_row);
        for (std::size_t w = 0; w < words_; ++w) d[w] |= s[w];
    }

    static Relation identity(std::size_t m)
    {
        Relation r(m);
        for (std::size_t i = 0; i < m; ++i) r.set(i, i);
        return r;
    }

    Relation compose(const Relation& b) const
    {
        Relation out(m_);
        for (std::size_t i = 0; i < m_; ++i)
            for (std::size_t k = i; k < m_; ++k)
                if (get(i, k)) out.or_row(i, b, k);
        return out;
    }

    Relation unite(const Relation& b) const
    {
        Relation out = *this;
        for (std::size_t i = 0; i < bits_.size(); ++i) out.bits_[i] |= b.bits_[i];
        return out;
    }

    // Reflexive-transitive closure; every relation here only holds pairs with i <= j.
    Relation closure() const
    {
        Relation out = identity(m_);
        for (std::size_t i = m_; i-- > 0;)
            for (std::size_t k = i + 1; k < m_; ++k)
                if (get(i, k)) out.or_row(i, out, k);
        return out;
    }

private:
    std::uint64_t* row(std::size_t i) { return bits_.data() + i * words_; }
    const std::uint64_t* row(std::size_t i) const { return bits_.data() + i * words_; }

    std::size_t m_;
    std::size_t words_;
    std::vector<std::uint64_t> bits_;
};

enum class Op { True, False, Atom, Not, And, Or, Diamond, Box, Prop, Test, Choice, Seq, Star, Power };

struct BNode {
    Op op;
    int var = -1;  // Atom: vocabulary index, -1 if the atom is not in the vocabulary
    int a = -1;
    int b = -1;
    unsigned n = 0;
    Formula prop = Formula::tt();  // Prop payload
};

} // namespace

struct TraceEvaluator::Impl {
    std::vector<BNode> nodes;
    int root = -1;
    Vocabulary vocab;

    int bind(const Formula& f)
    {
        BNode n{};
        switch (f.kind()) {
        case FormulaKind::True: n.op = Op::True; break;
        case FormulaKind::False: n.op = Op::False; break;
        case FormulaKind::Atom:
            n.op = Op::Atom;
            n.var = vocab.index(f.name()).value_or(-1);
            break;
        case FormulaKind::Not: n.op = Op::Not; n.a = bind(f.lhs()); break;
        case FormulaKind::And: n.op = Op::And; n.a = bind(f.lhs()); n.b = bind(f.rhs()); break;
        case FormulaKind::Or: n.op = Op::Or; n.a = bind(f.lhs()); n.b = bind(f.rhs()); break;
        case FormulaKind::Diamond: n.op = Op::Diamond; n.a = bind(f.path()); n.b = bind(f.lhs()); break;
        case FormulaKind::Box: n.op = Op::Box; n.a = bind(f.path()); n.b = bind(f.lhs()); break;
        }
        nodes.push_back(n);
        return static_cast<int>(nodes.size()) - 1;
    }

    int bind(const PathExpr& p)
    {
        BNode n{};
        switch (p.kind()) {
        case PathKind::Prop: n.op = Op::Prop; n.prop = p.formula(); break;
        case PathKind::Test: n.op = Op::Test; n.a = bind(p.formula()); break;
        case PathKind::Choice: n.op = Op::Choice; n.a = bind(p.lhs()); n.b = bind(p.rhs()); break;
        case PathKind::Seq: n.op = Op::Seq; n.a = bind(p.lhs()); n.b = bind(p.rhs()); break;
        case PathKind::Star: n.op = Op::Star; n.a = bind(p.lhs()); break;
        case PathKind::Power: n.op = Op::Power; n.a = bind(p.lhs()); n.n = p.exponent(); break;
        }
        nodes.push_back(n);
        return static_cast<int>(nodes.size()) - 1;
    }

    static bool is_path(Op op) { return op >= Op::Prop; }

    // Empty trace: Diamond false, Box true, atoms false.
    bool eval_empty(int id) const
    {
        const BNode& n = nodes[id];
        switch (n.op) {
        case Op::True: return true;
        case Op::False: return false;
        case Op::Atom: return false;
        case Op::Not: return !eval_empty(n.a);
        case Op::And: return eval_empty(n.a) && eval_empty(n.b);
        case Op::Or: return eval_empty(n.a) || eval_empty(n.b);
        case Op::Diamond: return false;
        case Op::Box: return true;
        default: return false;
        }
    }

    // Computes satisfaction vectors and path relations for every node, children first.
    void evaluate(const Trace& trace, std::vector<std::vector<char>>& sat, std::vector<Relation>& rel) const
    {
        const std::size_t len = trace.size();
        const std::size_t m = len + 1;  // positions 0..t+1
        sat.assign(nodes.size(), {});
        rel.assign(nodes.size(), Relation());
        for (std::size_t id = 0; id < nodes.size(); ++id) {
            const BNode& n = nodes[id];
            if (!is_path(n.op)) {
                auto& s = sat[id];
                s.assign(len, 0);
                for (std::size_t i = 0; i < len; ++i) {
                    switch (n.op) {
                    case Op::True: s[i] = 1; break;
                    case Op::False: s[i] = 0; break;
                    case Op::Atom: s[i] = n.var >= 0 && trace[i].contains(n.var); break;
                    case Op::Not: s[i] = !sat[n.a][i]; break;
                    case Op::And: s[i] = sat[n.a][i] && sat[n.b][i]; break;
                    case Op::Or: s[i] = sat[n.a][i] || sat[n.b][i]; break;
                    case Op::Diamond: {
                        const auto& r = rel[n.a];
                        bool any = false;
                        for (std::size_t j = i; j < len && !any; ++j) any = r.get(i, j) && sat[n.b][j];
                        s[i] = any;
                        break;
                    }
                    case Op::Box: {
                        const auto& r = rel[n.a];
                        bool all = true;
                        for (std::size_t j = i; j < len && all; ++j) all = !r.get(i, j) || sat[n.b][j];
                        s[i] = all;
                        break;
                    }
                    default: break;
                    }
                }
                continue;
            }
            Relation r(m);
            switch (n.op) {
            case Op::Prop:
                for (std::size_t i = 0; i < len; ++i)
                    if (eval_prop(n.prop, vocab, trace[i])) r.set(i, i + 1);
                break;
            case Op::Test:
                for (std::size_t i = 0; i < len; ++i)
                    if (sat[n.a][i]) r.set(i, i);
                break;
            case Op::Choice: r = rel[n.a].unite(rel[n.b]); break;
            case Op::Seq: r = rel[n.a].compose(rel[n.b]); break;
            case Op::Star: r = rel[n.a].closure(); break;
            case Op::Power: {
                if (n.n == 0) {
                    // rho^0 is the test {tt}?
                    for (std::size_t i = 0; i < len; ++i) r.set(i, i);
                    break;
                }
                r = rel[n.a];
                for (unsigned k = 1; k < n.n; ++k) r = r.compose(rel[n.a]);
                break;
            }
            default: break;
            }
            rel[id] = std::move(r);
        }
    }
};

TraceEvaluator::TraceEvaluator(const Formula& f, const Vocabulary& vocab) : impl_(std::make_unique<Impl>())
{
    impl_->vocab = vocab;
    impl_->root = impl_->bind(f);
}

TraceEvaluator::~TraceEvaluator() = default;
TraceEvaluator::TraceEvaluator(TraceEvaluator&&) noexcept = default;
TraceEvaluator& TraceEvaluator::operator=(TraceEvaluator&&) noexcept = default;

bool TraceEvaluator::eval(const Trace& trace, std::size_t i) const
{
    if (trace.empty() && i == 0) return impl_->eval_empty(impl_->root);
    if (i >= trace.size()) throw std::out_of_range("trace index out of range");
    std::vector<std::vector<char>> sat;
    std::vector<Relation> rel;
    impl_->evaluate(trace, sat, rel);
    return sat[impl_->root][i];
}

bool eval_trace(const Formula& f, const Vocabulary& vocab, const Trace& trace, std::size_t i)
{
    return TraceEvaluator(f, vocab).eval(trace, i);
}

std::set<std::pair<std::size_t, std::size_t>> path_relation(const PathExpr& rho, const Vocabulary& vocab,
                                                             const Trace& trace)
{
    TraceEvaluator::Impl impl;
    impl.vocab = vocab;
    int root = impl.bind(rho);
    std::vector<std::vector<char>> sat;
    std::vector<Relation> rel;
    impl.evaluate(trace, sat, rel);
    std::set<std::pair<std::size_t, std::size_t>> out;
    const auto& r = rel[root];
    for (std::size_t i = 0; i < r.dim(); ++i)
        for (std::size_t j = i; j < r.dim(); ++j)
            if (r.get(i, j)) out.emplace(i, j);
    return out;
}

} // namespace ldlg
