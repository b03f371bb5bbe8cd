#include <algorithm>
#include <cctype>
#include <fstream>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>

#include "ldlg/strategy.hpp"

namespace ldlg {

namespace {

std::string_view trim(std::string_view s)
{
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    return s;
}

[[noreturn]] void fail(int line, const std::string& what) { throw ParseError(what, line, 1); }

// Outputs allowed after reading v when the machine currently outputs own.
std::vector<Valuation> allowed_updates(const Module& m, const Vocabulary& vocab, Valuation own, Valuation v)
{
    std::vector<Valuation> out;
    for (const auto& g : m.update)
        if (g.enabled(vocab, v)) out.push_back((own - g.controlled()) | exec_command(g, vocab, v));
    if (out.empty()) out.push_back(own);
    return out;
}

struct RawMachine {
    int player;
    int line;
    std::vector<std::string> states;
    std::string initial;
    std::map<std::string, std::string> outputs;
    std::vector<std::tuple<std::string, std::string, std::string, int>> on;  // state, valuation, target, line
    std::map<std::string, std::string> defaults;
};

} // namespace

std::vector<int> StrategyMachine::reachable() const
{
    std::vector<char> seen(num_states(), 0);
    std::vector<int> order{initial};
    seen[initial] = 1;
    for (std::size_t k = 0; k < order.size(); ++k)
        for (int t : next[order[k]])
            if (!seen[t]) {
                seen[t] = 1;
                order.push_back(t);
            }
    std::sort(order.begin(), order.end());
    return order;
}

StrategyMachine StrategyMachine::constant(int player, Valuation out, const Vocabulary& vocab)
{
    StrategyMachine m;
    m.player = player;
    m.names = {"s0"};
    m.output = {out};
    m.next = {std::vector<int>(vocab.alphabet_size(), 0)};
    return m;
}

const StrategyMachine& StrategyProfile::of(int player_id) const
{
    for (const auto& m : machines)
        if (m.player == player_id) return m;
    throw std::out_of_range("no machine for player " + std::to_string(player_id));
}

StrategyProfile parse_profile(const Game& g, std::string_view text)
{
    std::vector<RawMachine> raws;
    std::istringstream in{std::string(text)};
    std::string buffer;
    int line = 0;
    auto current = [&]() -> RawMachine& {
        if (raws.empty()) fail(line, "expected 'player' first");
        return raws.back();
    };
    auto split_names = [](std::string_view s) {
        std::vector<std::string> out;
        std::size_t start = 0;
        while (start <= s.size()) {
            auto comma = s.find(',', start);
            auto name = trim(s.substr(start, comma == std::string_view::npos ? std::string_view::npos : comma - start));
            start = comma == std::string_view::npos ? s.size() + 1 : comma + 1;
            if (!name.empty()) out.emplace_back(name);
        }
        return out;
    };
    while (std::getline(in, buffer)) {
        ++line;
        std::string_view s = buffer;
        if (auto hash = s.find('#'); hash != std::string_view::npos) s = s.substr(0, hash);
        s = trim(s);
        if (s.empty()) continue;
        if (s.rfind("player", 0) == 0) {
            RawMachine m;
            m.line = line;
            try {
                m.player = std::stoi(std::string(trim(s.substr(6))));
            } catch (const std::exception&) {
                fail(line, "expected a player number");
            }
            raws.push_back(std::move(m));
        } else if (s.rfind("states:", 0) == 0) {
            current().states = split_names(s.substr(7));
        } else if (s.rfind("initial:", 0) == 0) {
            current().initial = std::string(trim(s.substr(8)));
        } else if (s.rfind("output", 0) == 0) {
            auto colon = s.find(':');
            if (colon == std::string_view::npos) fail(line, "expected 'output <state>: <vars>'");
            current().outputs[std::string(trim(s.substr(6, colon - 6)))] = std::string(trim(s.substr(colon + 1)));
        } else if (s.rfind("on ", 0) == 0) {
            auto open = s.find('{');
            auto close = s.find('}');
            auto arrow = s.find("->");
            if (open == std::string_view::npos || close == std::string_view::npos || arrow == std::string_view::npos || arrow < close)
                fail(line, "expected 'on <state> {<vars>} -> <state>'");
            current().on.emplace_back(std::string(trim(s.substr(3, open - 3))), std::string(s.substr(open + 1, close - open - 1)),
                                      std::string(trim(s.substr(arrow + 2))), line);
        } else if (s.rfind("default", 0) == 0) {
            auto arrow = s.find("->");
            if (arrow == std::string_view::npos) fail(line, "expected 'default <state> -> <state>'");
            current().defaults[std::string(trim(s.substr(7, arrow - 7)))] = std::string(trim(s.substr(arrow + 2)));
        } else {
            fail(line, "unrecognized line");
        }
    }

    StrategyProfile profile;
    std::set<int> seen;
    for (const auto& raw : raws) {
        int pos;
        try {
            pos = g.index_of(raw.player);
        } catch (const std::out_of_range&) {
            fail(raw.line, "unknown player " + std::to_string(raw.player));
        }
        if (!seen.insert(raw.player).second) fail(raw.line, "second machine for player " + std::to_string(raw.player));
        if (raw.states.empty()) fail(raw.line, "machine without states");
        std::map<std::string, int> ids;
        for (const auto& n : raw.states)
            if (!ids.emplace(n, static_cast<int>(ids.size())).second) fail(raw.line, "duplicate state '" + n + "'");
        auto lookup = [&](const std::string& n, int at) {
            auto it = ids.find(n);
            if (it == ids.end()) fail(at, "unknown state '" + n + "'");
            return it->second;
        };
        StrategyMachine m;
        m.player = raw.player;
        m.names = raw.states;
        m.initial = raw.initial.empty() ? 0 : lookup(raw.initial, raw.line);
        const Valuation controls = g.players[pos].module.controls;
        for (const auto& n : raw.states) {
            Valuation out;
            if (auto it = raw.outputs.find(n); it != raw.outputs.end()) {
                try {
                    out = g.vocab.parse(it->second);
                } catch (const std::invalid_argument& e) {
                    fail(raw.line, e.what());
                }
            }
            if (!out.subset_of(controls)) fail(raw.line, "output of '" + n + "' sets variables of another player");
            m.output.push_back(out);
        }
        for (const auto& [n, target] : raw.outputs) lookup(n, raw.line);
        for (int s = 0; s < m.num_states(); ++s) {
            int fallback = s;
            if (auto it = raw.defaults.find(raw.states[s]); it != raw.defaults.end()) fallback = lookup(it->second, raw.line);
            m.next.emplace_back(g.vocab.alphabet_size(), fallback);
        }
        for (const auto& [n, target] : raw.defaults) lookup(n, raw.line);
        for (const auto& [from, val, to, at] : raw.on) {
            Valuation v;
            try {
                v = g.vocab.parse(val);
            } catch (const std::invalid_argument& e) {
                fail(at, e.what());
            }
            m.next[lookup(from, at)][v.bits()] = lookup(to, at);
        }
        profile.machines.push_back(std::move(m));
    }
    for (const auto& p : g.players)
        if (!seen.count(p.id)) fail(line, "no machine for player " + std::to_string(p.id));
    std::sort(profile.machines.begin(), profile.machines.end(),
              [&](const StrategyMachine& a, const StrategyMachine& b) { return g.index_of(a.player) < g.index_of(b.player); });
    return profile;
}

StrategyProfile load_profile(const Game& g, const std::string& path)
{
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_profile(g, ss.str());
}

std::string format_profile(const Game& g, const StrategyProfile& p)
{
    std::ostringstream os;
    for (const auto& m : p.machines) {
        auto name = [&](int s) { return s < static_cast<int>(m.names.size()) ? m.names[s] : "s" + std::to_string(s); };
        os << "player " << m.player << "\nstates: ";
        for (int s = 0; s < m.num_states(); ++s) os << (s ? ", " : "") << name(s);
        os << "\ninitial: " << name(m.initial) << "\n";
        for (int s = 0; s < m.num_states(); ++s) os << "output " << name(s) << ": " << g.vocab.format(m.output[s]) << "\n";
        for (int s = 0; s < m.num_states(); ++s) {
            std::map<int, int> counts;
            for (int t : m.next[s]) ++counts[t];
            int fallback = std::max_element(counts.begin(), counts.end(), [](auto& a, auto& b) { return a.second < b.second; })->first;
            os << "default " << name(s) << " -> " << name(fallback) << "\n";
            for (std::uint32_t b = 0; b < m.next[s].size(); ++b)
                if (m.next[s][b] != fallback)
                    os << "on " << name(s) << " {" << g.vocab.format(Valuation(b)) << "} -> " << name(m.next[s][b]) << "\n";
        }
        os << "\n";
    }
    return os.str();
}

bool is_compatible(const StrategyMachine& s, const Module& m, const Vocabulary& vocab, Compatibility mode)
{
    auto init = enabled_moves(m, vocab, Phase::Init, Valuation{});
    if (!std::binary_search(init.begin(), init.end(), s.output[s.initial])) return false;

    std::vector<int> states;
    if (mode == Compatibility::Strict) {
        for (int q = 0; q < s.num_states(); ++q) states.push_back(q);
    } else {
        // Only valuations agreeing with the machine's own output can be observed.
        std::vector<char> seen(s.num_states(), 0);
        states.push_back(s.initial);
        seen[s.initial] = 1;
        for (std::size_t k = 0; k < states.size(); ++k) {
            int q = states[k];
            for (std::uint32_t b = 0; b < vocab.alphabet_size(); ++b) {
                Valuation v(b);
                if ((v & m.controls) != s.output[q]) continue;
                int t = s.step(q, v);
                if (!seen[t]) {
                    seen[t] = 1;
                    states.push_back(t);
                }
            }
        }
    }
    for (int q : states)
        for (std::uint32_t b = 0; b < vocab.alphabet_size(); ++b) {
            Valuation v(b);
            if (mode == Compatibility::Reachable && (v & m.controls) != s.output[q]) continue;
            auto allowed = allowed_updates(m, vocab, s.output[q], v);
            if (std::find(allowed.begin(), allowed.end(), s.output[s.step(q, v)]) == allowed.end()) return false;
        }
    return true;
}

Lasso play_of(const StrategyProfile& p)
{
    std::vector<int> joint;
    for (const auto& m : p.machines) joint.push_back(m.initial);
    std::map<std::vector<int>, std::size_t> seen;
    Trace rounds;
    while (true) {
        auto [it, fresh] = seen.emplace(joint, rounds.size());
        if (!fresh) {
            const std::size_t start = it->second;
            return Lasso{Trace(rounds.begin(), rounds.begin() + start), Trace(rounds.begin() + start, rounds.end())};
        }
        Valuation v;
        for (std::size_t i = 0; i < joint.size(); ++i) v = v | p.machines[i].output[joint[i]];
        rounds.push_back(v);
        for (std::size_t i = 0; i < joint.size(); ++i) joint[i] = p.machines[i].step(joint[i], v);
    }
}

InfiniteAcceptor strategy_automaton(const StrategyMachine& s, Valuation controls, const Vocabulary& vocab)
{
    InfiniteAcceptor a;
    a.vocab = vocab;
    a.flag_bits = 1;
    a.forbidden = 1;
    const int sink = s.num_states();
    for (int q = 0; q < s.num_states(); ++q) {
        std::vector<Edge> row;
        for (std::uint32_t b = 0; b < vocab.alphabet_size(); ++b) {
            Valuation v(b);
            row.push_back({v, (v & controls) == s.output[q] ? s.step(q, v) : sink});
        }
        a.edges.push_back(std::move(row));
        a.flags.push_back(0);
    }
    std::vector<Edge> loops;
    for (std::uint32_t b = 0; b < vocab.alphabet_size(); ++b) loops.push_back({Valuation(b), sink});
    a.edges.push_back(std::move(loops));
    a.flags.push_back(1);
    a.initial = {s.initial};
    return a;
}

bool is_memoryless(const StrategyMachine& s)
{
    auto states = s.reachable();
    const std::size_t letters = s.next.empty() ? 0 : s.next[0].size();
    for (std::size_t b = 0; b < letters; ++b) {
        std::set<std::uint32_t> outs;
        for (int q : states) outs.insert(s.output[s.next[q][b]].bits());
        if (outs.size() > 1) return false;
    }
    return true;
}

bool is_memoryless_play(const Lasso& w)
{
    std::map<std::uint32_t, std::uint32_t> succ;
    for (std::size_t k = 0; k < w.length(); ++k) {
        auto [it, fresh] = succ.emplace(w.at(k).bits(), w.at(k + 1).bits());
        if (!fresh && it->second != w.at(k + 1).bits()) return false;
    }
    return true;
}

bool is_myopic(const StrategyMachine& s)
{
    for (int q : s.reachable())
        if (std::adjacent_find(s.next[q].begin(), s.next[q].end(), std::not_equal_to<>()) != s.next[q].end()) return false;
    return true;
}

} // namespace ldlg
