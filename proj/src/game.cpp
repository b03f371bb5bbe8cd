#include <algorithm>
#include <stdexcept>

#include "ldlg/game.hpp"

namespace ldlg {

namespace {

bool satisfiable(const Formula& psi)
{
    auto atoms = psi.atoms();
    Vocabulary local(std::vector<std::string>(atoms.begin(), atoms.end()));
    for (std::uint32_t b = 0; b < local.alphabet_size(); ++b)
        if (eval_prop(psi, local, Valuation(b))) return true;
    return false;
}

} // namespace

Valuation GuardedCommand::controlled() const
{
    Valuation c;
    for (const auto& [x, rhs] : assignments) c = c.with(x);
    return c;
}

Module Module::free_module(std::string name, Valuation controls, const Vocabulary& vocab)
{
    Module m;
    m.name = std::move(name);
    m.controls = controls;
    m.free = true;
    std::vector<int> vars;
    for (int i = 0; i < vocab.size(); ++i)
        if (controls.contains(i)) vars.push_back(i);
    for (std::uint32_t bits = 0; bits < (1u << vars.size()); ++bits) {
        GuardedCommand g;
        for (std::size_t k = 0; k < vars.size(); ++k)
            g.assignments.emplace_back(vars[k], (bits >> k) & 1u ? Formula::tt() : Formula::ff());
        m.init.push_back(g);
        m.update.push_back(g);
    }
    return m;
}

Valuation exec_command(const GuardedCommand& g, const Vocabulary& vocab, Valuation v)
{
    if (!g.enabled(vocab, v)) throw std::invalid_argument("command not enabled");
    Valuation out;
    for (const auto& [x, rhs] : g.assignments)
        if (eval_prop(rhs, vocab, v)) out = out.with(x);
    return out;
}

std::vector<Valuation> enabled_moves(const Module& m, const Vocabulary& vocab, Phase phase, Valuation v)
{
    const auto& commands = phase == Phase::Init ? m.init : m.update;
    if (phase == Phase::Init) v = Valuation{};
    std::vector<Valuation> out;
    for (const auto& g : commands) {
        if (!g.enabled(vocab, v)) continue;
        Valuation keep = phase == Phase::Init ? Valuation{} : (v & m.controls) - g.controlled();
        out.push_back(keep | exec_command(g, vocab, v));
    }
    if (out.empty()) out.push_back(phase == Phase::Init ? Valuation{} : v & m.controls);
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

Module module_product(const Module& a, const Module& b)
{
    if (!(a.controls & b.controls).empty()) throw std::invalid_argument("modules control a common variable");
    Module m;
    m.name = a.name + "*" + b.name;
    m.controls = a.controls | b.controls;
    m.free = a.free && b.free;
    auto combine = [](const std::vector<GuardedCommand>& x, const std::vector<GuardedCommand>& y) {
        std::vector<GuardedCommand> out;
        for (const auto& g : x)
            for (const auto& h : y) {
                GuardedCommand c;
                c.guard = Formula::conj(g.guard, h.guard);
                c.assignments = g.assignments;
                c.assignments.insert(c.assignments.end(), h.assignments.begin(), h.assignments.end());
                out.push_back(std::move(c));
            }
        // One side runs alone where the other side has nothing enabled (and skips).
        auto alone = [&](const std::vector<GuardedCommand>& run, const std::vector<GuardedCommand>& idle) {
            Formula none = Formula::tt();
            for (const auto& h : idle) none = Formula::conj(none, Formula::negate(h.guard));
            for (const auto& g : run) {
                Formula guard = idle.empty() ? g.guard : Formula::conj(g.guard, none);
                if (satisfiable(guard)) out.push_back({guard, g.assignments});
            }
        };
        alone(x, y);
        alone(y, x);
        return out;
    };
    m.init = combine(a.init, b.init);
    m.update = combine(a.update, b.update);
    return m;
}

int Game::index_of(int id) const
{
    for (int i = 0; i < num_players(); ++i)
        if (players[i].id == id) return i;
    throw std::out_of_range("no player " + std::to_string(id));
}

int Arena::state_of(Valuation v) const
{
    auto it = index.find(v.bits());
    return it == index.end() ? -1 : it->second;
}

bool Arena::legal(int s, Valuation next) const
{
    if (s < 0 || s >= num_states()) return false;
    for (std::size_t i = 0; i < controls.size(); ++i) {
        const auto& ms = moves[s][i];
        if (!std::binary_search(ms.begin(), ms.end(), next & controls[i])) return false;
    }
    return true;
}

bool Arena::legal(const Lasso& w) const
{
    int s = kStart;
    // Steps past the first loop pass repeat earlier (state, letter) pairs.
    for (std::size_t k = 0; k <= w.length(); ++k) {
        Valuation v = w.at(k);
        if (!legal(s, v)) return false;
        s = state_of(v);
    }
    return true;
}

std::vector<Valuation> Arena::successors(int s) const
{
    std::vector<Valuation> out{Valuation{}};
    for (const auto& ms : moves[s]) {
        std::vector<Valuation> next;
        for (Valuation partial : out)
            for (Valuation m : ms) next.push_back(partial | m);
        out = std::move(next);
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

Arena build_arena(const Game& g)
{
    Arena a;
    for (const auto& p : g.players) a.controls.push_back(p.module.controls);
    auto add = [&](Valuation v, Phase phase) {
        std::vector<std::vector<Valuation>> ms;
        for (const auto& p : g.players) ms.push_back(enabled_moves(p.module, g.vocab, phase, v));
        a.valuation.push_back(v);
        a.moves.push_back(std::move(ms));
        return a.num_states() - 1;
    };
    add(Valuation{}, Phase::Init);
    for (int s = 0; s < a.num_states(); ++s)
        for (Valuation v : a.successors(s))
            if (!a.index.count(v.bits())) a.index.emplace(v.bits(), add(v, Phase::Update));
    return a;
}

} // namespace ldlg
