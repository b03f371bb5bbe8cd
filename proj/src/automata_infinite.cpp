#include <algorithm>
#include <deque>
#include <map>
#include <sstream>
#include <stdexcept>

#include "dnf.hpp"
#include "ldlg/automata.hpp"

namespace ldlg {

namespace {

std::vector<Edge> self_loops(const Vocabulary& vocab, int q)
{
    std::vector<Edge> out;
    for (std::uint32_t b = 0; b < vocab.alphabet_size(); ++b) out.push_back({Valuation(b), q});
    return out;
}

void check_alphabet(const Vocabulary& a, const Vocabulary& b)
{
    if (!(a == b)) throw std::invalid_argument("automata over different alphabets");
}

InfiniteAcceptor lasso_acceptor(const Vocabulary& vocab, const Lasso& w)
{
    if (w.loop.empty()) throw std::invalid_argument("lasso loop must be nonempty");
    InfiniteAcceptor a;
    a.vocab = vocab;
    const std::size_t len = w.length();
    for (std::size_t k = 0; k < len; ++k) {
        int next = static_cast<int>(k + 1 < len ? k + 1 : w.prefix.size());
        a.edges.push_back({{w.at(k), next}});
        a.flags.push_back(0);
    }
    a.initial = {0};
    return a;
}

// Strongly connected components (iterative Tarjan) restricted to alive states.
std::vector<int> components(const InfiniteAcceptor& a, const std::vector<char>& alive)
{
    const int n = a.num_states();
    std::vector<int> comp(n, -1), index(n, -1), low(n, 0);
    std::vector<char> on_stack(n, 0);
    std::vector<int> stack;
    int counter = 0, ncomp = 0;
    std::vector<std::pair<int, std::size_t>> call;
    for (int root = 0; root < n; ++root) {
        if (!alive[root] || index[root] >= 0) continue;
        call.push_back({root, 0});
        index[root] = low[root] = counter++;
        stack.push_back(root);
        on_stack[root] = 1;
        while (!call.empty()) {
            auto& [v, i] = call.back();
            if (i < a.edges[v].size()) {
                int w = a.edges[v][i++].target;
                if (!alive[w]) continue;
                if (index[w] < 0) {
                    index[w] = low[w] = counter++;
                    stack.push_back(w);
                    on_stack[w] = 1;
                    call.push_back({w, 0});
                } else if (on_stack[w]) {
                    low[v] = std::min(low[v], index[w]);
                }
                continue;
            }
            if (low[v] == index[v]) {
                int w;
                do {
                    w = stack.back();
                    stack.pop_back();
                    on_stack[w] = 0;
                    comp[w] = ncomp;
                } while (w != v);
                ++ncomp;
            }
            int done = v;
            call.pop_back();
            if (!call.empty()) low[call.back().first] = std::min(low[call.back().first], low[done]);
        }
    }
    return comp;
}

struct Step {
    int prev = -1;
    Valuation letter;
};

// Breadth-first search over alive states; stops at the first state satisfying goal.
template <typename Goal>
int bfs(const InfiniteAcceptor& a, const std::vector<char>& alive, const std::vector<int>& sources,
        std::vector<Step>& parent, Goal goal)
{
    std::vector<char> seen(a.num_states(), 0);
    std::deque<int> queue;
    for (int s : sources)
        if (alive[s] && !seen[s]) {
            seen[s] = 1;
            parent[s] = {};
            if (goal(s)) return s;
            queue.push_back(s);
        }
    while (!queue.empty()) {
        int v = queue.front();
        queue.pop_front();
        for (const auto& e : a.edges[v]) {
            if (!alive[e.target] || seen[e.target]) continue;
            seen[e.target] = 1;
            parent[e.target] = {v, e.letter};
            if (goal(e.target)) return e.target;
            queue.push_back(e.target);
        }
    }
    return -1;
}

Trace path_to(const std::vector<Step>& parent, int target, int stop)
{
    Trace out;
    for (int v = target; v != stop && parent[v].prev >= 0; v = parent[v].prev) out.push_back(parent[v].letter);
    std::reverse(out.begin(), out.end());
    return out;
}

std::string format_letter(const Vocabulary& vocab, Valuation v) { return "{" + vocab.format(v) + "}"; }

std::string alphabet_line(const Vocabulary& vocab)
{
    auto names = vocab.names();
    std::sort(names.begin(), names.end());
    std::string out = "alphabet:";
    for (std::size_t i = 0; i < names.size(); ++i) out += (i ? "," : " ") + names[i];
    return out + "\n";
}

} // namespace

bool InfiniteAcceptor::deterministic() const
{
    if (initial.size() > 1) return false;
    for (const auto& row : edges)
        for (std::size_t k = 1; k < row.size(); ++k)
            if (row[k].letter == row[k - 1].letter) return false;
    return true;
}

bool InfiniteAcceptor::accepts(const Lasso& w) const
{
    return find_accepted(product(*this, lasso_acceptor(vocab, w))).has_value();
}

InfiniteAcceptor lift_infinite(const Nfw& n)
{
    InfiniteAcceptor a;
    a.vocab = n.vocab;
    a.flag_bits = 1;
    a.required = 1;
    a.initial = n.initial;
    for (int q = 0; q < n.num_states(); ++q) {
        a.flags.push_back(n.final[q] ? 1u : 0u);
        a.edges.push_back(n.final[q] ? self_loops(n.vocab, q) : n.edges[q]);
    }
    return a;
}

InfiniteAcceptor lift_infinite(const Dfw& d)
{
    InfiniteAcceptor a;
    a.vocab = d.vocab;
    a.flag_bits = 1;
    a.required = 1;
    a.initial = {d.initial};
    for (int q = 0; q < d.num_states(); ++q) {
        a.flags.push_back(d.final[q] ? 1u : 0u);
        if (d.final[q]) {
            a.edges.push_back(self_loops(d.vocab, q));
            continue;
        }
        std::vector<Edge> row;
        for (std::uint32_t b = 0; b < d.vocab.alphabet_size(); ++b) row.push_back({Valuation(b), d.next[q][b]});
        a.edges.push_back(std::move(row));
    }
    return a;
}

InfiniteAcceptor universal_acceptor(const Vocabulary& vocab)
{
    InfiniteAcceptor a;
    a.vocab = vocab;
    a.edges.push_back(self_loops(vocab, 0));
    a.flags.push_back(0);
    a.initial = {0};
    return a;
}

InfiniteAcceptor complement(const InfiniteAcceptor& a)
{
    if (!a.deterministic() || a.initial.size() != 1) throw std::invalid_argument("complement needs a deterministic acceptor");
    for (const auto& row : a.edges)
        if (row.size() != a.vocab.alphabet_size()) throw std::invalid_argument("complement needs a total acceptor");
    if (a.flag_bits != 1 || (a.required | a.forbidden) != 1u)
        throw std::invalid_argument("complement needs a single-flag acceptor");
    InfiniteAcceptor out = a;
    std::swap(out.required, out.forbidden);
    return out;
}

InfiniteAcceptor product(const InfiniteAcceptor& a, const InfiniteAcceptor& b)
{
    check_alphabet(a.vocab, b.vocab);
    if (a.flag_bits + b.flag_bits > 32) throw std::length_error("too many acceptance flags");
    InfiniteAcceptor out;
    out.vocab = a.vocab;
    out.flag_bits = a.flag_bits + b.flag_bits;
    out.required = a.required | (b.required << a.flag_bits);
    out.forbidden = a.forbidden | (b.forbidden << a.flag_bits);

    std::map<std::pair<int, int>, int> ids;
    std::vector<std::pair<int, int>> pairs;
    auto intern = [&](int x, int y) {
        auto [it, fresh] = ids.emplace(std::pair{x, y}, static_cast<int>(pairs.size()));
        if (fresh) {
            pairs.push_back({x, y});
            out.flags.push_back(a.flags[x] | (b.flags[y] << a.flag_bits));
        }
        return it->second;
    };
    for (int x : a.initial)
        for (int y : b.initial) out.initial.push_back(intern(x, y));
    for (std::size_t k = 0; k < pairs.size(); ++k) {
        auto [x, y] = pairs[k];
        const auto& ea = a.edges[x];
        const auto& eb = b.edges[y];
        std::vector<Edge> row;
        std::size_t i = 0, j = 0;
        while (i < ea.size() && j < eb.size()) {
            if (ea[i].letter < eb[j].letter) { ++i; continue; }
            if (eb[j].letter < ea[i].letter) { ++j; continue; }
            Valuation l = ea[i].letter;
            std::size_t j0 = j;
            for (; i < ea.size() && ea[i].letter == l; ++i)
                for (j = j0; j < eb.size() && eb[j].letter == l; ++j) row.push_back({l, intern(ea[i].target, eb[j].target)});
        }
        std::sort(row.begin(), row.end());
        out.edges.push_back(std::move(row));
    }
    return out;
}

Nfw product(const Nfw& a, const Nfw& b)
{
    check_alphabet(a.vocab, b.vocab);
    Nfw out;
    out.vocab = a.vocab;
    std::map<std::pair<int, int>, int> ids;
    std::vector<std::pair<int, int>> pairs;
    auto intern = [&](int x, int y) {
        auto [it, fresh] = ids.emplace(std::pair{x, y}, static_cast<int>(pairs.size()));
        if (fresh) {
            pairs.push_back({x, y});
            out.final.push_back(a.final[x] && b.final[y]);
        }
        return it->second;
    };
    for (int x : a.initial)
        for (int y : b.initial) out.initial.push_back(intern(x, y));
    for (std::size_t k = 0; k < pairs.size(); ++k) {
        auto [x, y] = pairs[k];
        std::vector<Edge> row;
        for (const auto& e : a.edges[x])
            for (const auto& f : b.edges[y])
                if (e.letter == f.letter) row.push_back({e.letter, intern(e.target, f.target)});
        std::sort(row.begin(), row.end());
        out.edges.push_back(std::move(row));
    }
    return out;
}

InfiniteAcceptor product(const Formula& f, const InfiniteAcceptor& b)
{
    if (b.flag_bits + 1 > 32) throw std::length_error("too many acceptance flags");
    Afw afw(f, b.vocab);

    // Formula-side nodes: 0 = start, 1 = accepting sink, then obligation sets.
    constexpr int kStart = 0, kSink = 1;
    std::map<Clause, int> node_ids;
    std::vector<Clause> labels{{afw.initial()}, {}};
    auto node = [&](const Clause& c) {
        auto [it, fresh] = node_ids.emplace(c, static_cast<int>(labels.size()));
        if (fresh) labels.push_back(c);
        return it->second;
    };
    auto node_final = [&](int n) { return n == kSink || (n == kStart && afw.accepts_empty()); };
    std::map<std::pair<int, std::uint32_t>, std::vector<int>> moves;
    auto successors = [&](int n, Valuation letter) -> const std::vector<int>& {
        auto key = std::pair{n, letter.bits()};
        auto it = moves.find(key);
        if (it != moves.end()) return it->second;
        Dnf step = dnf::truth();
        bool ends = true;
        for (int q : labels[n]) {
            step = dnf::conj(step, afw.delta(q, letter, false));
            ends = ends && dnf::is_true(afw.delta(q, letter, true));
        }
        std::vector<int> out;
        for (const auto& c : step) out.push_back(node(c));
        if (ends) out.push_back(kSink);
        return moves.emplace(key, std::move(out)).first->second;
    };

    InfiniteAcceptor out;
    out.vocab = b.vocab;
    out.flag_bits = 1 + b.flag_bits;
    out.required = 1u | (b.required << 1);
    out.forbidden = b.forbidden << 1;
    std::map<std::pair<int, int>, int> ids;
    std::vector<std::pair<int, int>> pairs;
    auto intern = [&](int n, int y) {
        auto [it, fresh] = ids.emplace(std::pair{n, y}, static_cast<int>(pairs.size()));
        if (fresh) {
            pairs.push_back({n, y});
            out.flags.push_back((node_final(n) ? 1u : 0u) | (b.flags[y] << 1));
        }
        return it->second;
    };
    for (int y : b.initial) out.initial.push_back(intern(kStart, y));
    for (std::size_t k = 0; k < pairs.size(); ++k) {
        auto [n, y] = pairs[k];
        std::vector<Edge> row;
        for (const auto& e : b.edges[y]) {
            if (node_final(n)) {
                row.push_back({e.letter, intern(n, e.target)});
                continue;
            }
            for (int m : successors(n, e.letter)) row.push_back({e.letter, intern(m, e.target)});
        }
        std::sort(row.begin(), row.end());
        row.erase(std::unique(row.begin(), row.end()), row.end());
        out.edges.push_back(std::move(row));
    }
    return out;
}

std::optional<Lasso> find_accepted(const InfiniteAcceptor& a)
{
    const int n = a.num_states();
    std::vector<char> alive(n);
    for (int s = 0; s < n; ++s) alive[s] = (a.flags[s] & a.forbidden) == 0;

    // Keep only states with an infinite continuation inside the allowed set.
    std::vector<std::vector<int>> preds(n);
    std::vector<int> out_degree(n, 0);
    for (int s = 0; s < n; ++s)
        for (const auto& e : a.edges[s])
            if (alive[s] && alive[e.target]) {
                preds[e.target].push_back(s);
                ++out_degree[s];
            }
    std::vector<int> dead;
    for (int s = 0; s < n; ++s)
        if (alive[s] && out_degree[s] == 0) dead.push_back(s);
    while (!dead.empty()) {
        int s = dead.back();
        dead.pop_back();
        if (!alive[s]) continue;
        alive[s] = 0;
        for (int p : preds[s])
            if (alive[p] && --out_degree[p] == 0) dead.push_back(p);
    }

    std::vector<Step> parent(n);
    int hit = bfs(a, alive, a.initial, parent, [&](int s) { return (a.flags[s] & a.required) == a.required; });
    if (hit < 0) return std::nullopt;
    Trace prefix = path_to(parent, hit, -1);

    auto comp = components(a, alive);
    std::vector<int> comp_size(n, 0);
    for (int s = 0; s < n; ++s)
        if (alive[s]) ++comp_size[comp[s]];
    auto on_cycle = [&](int s) {
        if (comp_size[comp[s]] > 1) return true;
        return std::any_of(a.edges[s].begin(), a.edges[s].end(), [&](const Edge& e) { return e.target == s; });
    };
    std::vector<Step> to_cycle(n);
    int entry = bfs(a, alive, {hit}, to_cycle, on_cycle);
    Trace bridge = path_to(to_cycle, entry, hit);
    prefix.insert(prefix.end(), bridge.begin(), bridge.end());

    // Shortest cycle through entry.
    Lasso w{prefix, {}};
    for (const auto& e : a.edges[entry])
        if (e.target == entry) {
            w.loop = {e.letter};
            return w;
        }
    std::vector<Step> back(n);
    std::vector<int> starts;
    std::vector<Valuation> first_letter(n);
    std::vector<char> is_start(n, 0);
    for (const auto& e : a.edges[entry])
        if (alive[e.target] && comp[e.target] == comp[entry] && !is_start[e.target]) {
            is_start[e.target] = 1;
            first_letter[e.target] = e.letter;
            starts.push_back(e.target);
        }
    int closing = -1;
    Valuation closing_letter;
    bfs(a, alive, starts, back, [&](int s) {
        for (const auto& e : a.edges[s])
            if (e.target == entry) {
                closing = s;
                closing_letter = e.letter;
                return true;
            }
        return false;
    });
    Trace middle;
    int v = closing;
    for (; back[v].prev >= 0; v = back[v].prev) middle.push_back(back[v].letter);
    std::reverse(middle.begin(), middle.end());
    w.loop.push_back(first_letter[v]);
    w.loop.insert(w.loop.end(), middle.begin(), middle.end());
    w.loop.push_back(closing_letter);
    return w;
}

InfiniteAcceptor qpldl_acceptor(const QFormula& qf, const Vocabulary& vocab)
{
    if (qf.quantifier == Quantifier::Exists) return lift_infinite(absorb(compile_dfw(qf.body, vocab)));
    return complement(lift_infinite(absorb(compile_dfw(Formula::negate(qf.body), vocab))));
}

InfiniteAcceptor goal_acceptor(const Goal& g, const Vocabulary& vocab)
{
    if (auto* f = std::get_if<Formula>(&g)) return lift_infinite(absorb(compile_dfw(*f, vocab)));
    return qpldl_acceptor(std::get<QFormula>(g), vocab);
}

std::string dump(const Nfw& n)
{
    std::ostringstream os;
    os << alphabet_line(n.vocab);
    for (int q = 0; q < n.num_states(); ++q) {
        os << "state " << q;
        if (std::find(n.initial.begin(), n.initial.end(), q) != n.initial.end()) os << " initial";
        if (n.final[q]) os << " final";
        os << "\n";
    }
    for (int q = 0; q < n.num_states(); ++q)
        for (const auto& e : n.edges[q]) os << "trans " << q << " " << format_letter(n.vocab, e.letter) << " " << e.target << "\n";
    return os.str();
}

std::string dump(const Dfw& d)
{
    std::ostringstream os;
    os << alphabet_line(d.vocab);
    for (int q = 0; q < d.num_states(); ++q) {
        os << "state " << q;
        if (q == d.initial) os << " initial";
        if (d.final[q]) os << " final";
        os << "\n";
    }
    for (int q = 0; q < d.num_states(); ++q)
        for (std::uint32_t b = 0; b < d.vocab.alphabet_size(); ++b)
            os << "trans " << q << " " << format_letter(d.vocab, Valuation(b)) << " " << d.next[q][b] << "\n";
    return os.str();
}

std::string dump(const InfiniteAcceptor& a)
{
    std::ostringstream os;
    os << alphabet_line(a.vocab);
    os << "accept required " << a.required << " forbidden " << a.forbidden << "\n";
    for (int q = 0; q < a.num_states(); ++q) {
        os << "state " << q;
        if (std::find(a.initial.begin(), a.initial.end(), q) != a.initial.end()) os << " initial";
        if (a.required && (a.flags[q] & a.required) == a.required) os << " final";
        if (a.flags[q]) os << " flags " << a.flags[q];
        os << "\n";
    }
    for (int q = 0; q < a.num_states(); ++q)
        for (const auto& e : a.edges[q]) os << "trans " << q << " " << format_letter(a.vocab, e.letter) << " " << e.target << "\n";
    return os.str();
}

} // namespace ldlg
