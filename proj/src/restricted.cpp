#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "context.hpp"

namespace ldlg {

namespace {

using detail::Context;

constexpr double kMaxProfiles = 1 << 22;

// Earlier in the search order: more winners, then lexicographically smaller.
bool better(const std::vector<int>& a, const std::vector<int>& b)
{
    if (a.size() != b.size()) return a.size() > b.size();
    return a < b;
}

std::vector<int> winners_on(const Context& ctx, const Lasso& play, std::vector<char>& win)
{
    std::vector<int> ids;
    win.assign(ctx.num_players(), 0);
    for (int i = 0; i < ctx.num_players(); ++i)
        if (detail::goal_holds(ctx.goals[i], play)) {
            win[i] = 1;
            ids.push_back(ctx.game.players[i].id);
        }
    return ids;
}

NashWitness restricted_witness(const Context& ctx, const Lasso& play, std::vector<int> winners, StrategyProfile profile)
{
    NashWitness w;
    w.winners = std::move(winners);
    w.lasso = play;
    for (int i = 0; i < ctx.num_players(); ++i)
        w.satisfied[ctx.game.players[i].id] = detail::goal_holds(ctx.goals[i], play);
    w.profile = std::move(profile);
    return w;
}

// Profitable memoryless deviation of player j against the others' valuation-keyed moves.
class MemorylessDeviation {
public:
    MemorylessDeviation(const Context& ctx, const std::vector<Valuation>& joint, int j)
        : ctx_(ctx), joint_(joint), j_(j), ga_(ctx.goals[j]), choice_(ctx.arena.num_states(), -1)
    {
    }

    bool exists() { return search(Arena::kStart, ga_.dfw.initial); }

private:
    Valuation move(int s, Valuation own) const { return (joint_[s] - ctx_.arena.controls[j_]) | own; }

    bool search(int s, int q)
    {
        const auto& options = ctx_.arena.moves[s][j_];
        for (int c = 0; c < static_cast<int>(options.size()); ++c) {
            choice_[s] = c;
            Valuation v = move(s, options[c]);
            int nq = ga_.dfw.step(q, v);
            int ns = ctx_.arena.state_of(v);
            bool won = false;
            if (ga_.dfw.final[nq])
                won = !ga_.avoid;
            else if (choice_[ns] >= 0)
                won = settle(ns, nq);
            else
                won = search(ns, nq);
            if (won) {
                choice_[s] = -1;
                return true;
            }
        }
        choice_[s] = -1;
        return false;
    }

    // The rest of the play is fixed by the choices made so far.
    bool settle(int s, int q) const
    {
        std::vector<std::pair<int, int>> seen;
        while (std::find(seen.begin(), seen.end(), std::make_pair(s, q)) == seen.end()) {
            seen.emplace_back(s, q);
            Valuation v = move(s, ctx_.arena.moves[s][j_][choice_[s]]);
            q = ga_.dfw.step(q, v);
            if (ga_.dfw.final[q]) return !ga_.avoid;
            s = ctx_.arena.state_of(v);
            if (choice_[s] < 0) return false;
        }
        return ga_.avoid;
    }

    const Context& ctx_;
    const std::vector<Valuation>& joint_;
    int j_;
    const GoalAutomaton& ga_;
    std::vector<int> choice_;
};

Lasso memoryless_play(const Context& ctx, const std::vector<Valuation>& joint)
{
    std::vector<int> order;
    std::vector<int> pos(ctx.arena.num_states(), -1);
    int s = Arena::kStart;
    while (pos[s] < 0) {
        pos[s] = static_cast<int>(order.size());
        order.push_back(s);
        s = ctx.arena.state_of(joint[s]);
    }
    Lasso w;
    for (int k = 0; k < static_cast<int>(order.size()); ++k)
        (k < pos[s] ? w.prefix : w.loop).push_back(joint[order[k]]);
    return w;
}

StrategyProfile memoryless_profile(const Context& ctx, const std::vector<Valuation>& joint)
{
    const auto& g = ctx.game;
    const std::uint32_t letters = g.vocab.alphabet_size();
    StrategyProfile p;
    for (int i = 0; i < ctx.num_players(); ++i) {
        StrategyMachine m;
        m.player = g.players[i].id;
        m.names.push_back("start");
        m.output.push_back(joint[Arena::kStart] & ctx.arena.controls[i]);
        for (std::uint32_t b = 0; b < letters; ++b) {
            Valuation v(b);
            int s = ctx.arena.state_of(v);
            m.names.push_back("v" + std::to_string(b));
            m.output.push_back(s >= 0 ? joint[s] & ctx.arena.controls[i]
                                      : enabled_moves(g.players[i].module, g.vocab, Phase::Update, v).front());
        }
        std::vector<int> row(letters);
        std::iota(row.begin(), row.end(), 1);
        m.next.assign(letters + 1, row);
        p.machines.push_back(std::move(m));
    }
    return p;
}

} // namespace

std::optional<NashWitness> memoryless_ne(const Game& g)
{
    Context ctx(g);
    const int n = ctx.num_players();
    const int states = ctx.arena.num_states();
    std::vector<const std::vector<Valuation>*> slots;
    double total = 1;
    for (int s = 0; s < states; ++s)
        for (int i = 0; i < n; ++i) {
            slots.push_back(&ctx.arena.moves[s][i]);
            total *= static_cast<double>(ctx.arena.moves[s][i].size());
        }
    if (total > kMaxProfiles) throw std::length_error("too many memoryless profiles to enumerate");

    std::optional<NashWitness> best;
    std::vector<std::size_t> idx(slots.size(), 0);
    std::vector<Valuation> joint(states);
    std::vector<char> win;
    for (;;) {
        for (int s = 0; s < states; ++s) {
            Valuation v;
            for (int i = 0; i < n; ++i) v = v | (*slots[s * n + i])[idx[s * n + i]];
            joint[s] = v;
        }
        Lasso play = memoryless_play(ctx, joint);
        auto ids = winners_on(ctx, play, win);
        if (!best || better(ids, best->winners)) {
            bool stable = true;
            for (int j = 0; j < n && stable; ++j)
                if (!win[j]) stable = !MemorylessDeviation(ctx, joint, j).exists();
            if (stable) {
                best = restricted_witness(ctx, play, ids, memoryless_profile(ctx, joint));
                if (static_cast<int>(ids.size()) == n) break;
            }
        }
        std::size_t k = 0;
        while (k < idx.size() && ++idx[k] == slots[k]->size()) idx[k++] = 0;
        if (k == idx.size()) break;
    }
    return best;
}

namespace {

struct Word {
    Trace prefix, loop;

    Valuation at(std::size_t k) const { return k < prefix.size() ? prefix[k] : loop[(k - prefix.size()) % loop.size()]; }
};

std::vector<Word> words_over(Valuation controls, int bound)
{
    std::vector<Valuation> letters;
    for (std::uint32_t b = controls.bits();; b = (b - 1) & controls.bits()) {
        letters.push_back(Valuation(b));
        if (b == 0) break;
    }
    std::sort(letters.begin(), letters.end());
    std::vector<Word> out;
    for (int len = 1; len <= 2 * bound; ++len) {
        std::vector<std::size_t> idx(len, 0);
        for (;;) {
            Trace t;
            for (auto k : idx) t.push_back(letters[k]);
            for (int p = std::max(0, len - bound); p <= std::min(bound, len - 1); ++p)
                out.push_back({Trace(t.begin(), t.begin() + p), Trace(t.begin() + p, t.end())});
            int k = 0;
            while (k < len && ++idx[k] == letters.size()) idx[k++] = 0;
            if (k == len) break;
        }
    }
    return out;
}

// Can player j reach its goal with any sequence of its own moves against the fixed play of the others?
bool word_deviation(const Context& ctx, const Lasso& play, int j)
{
    const auto& ga = ctx.goals[j];
    const Valuation own = ctx.arena.controls[j];
    const std::size_t period = play.length();
    InfiniteAcceptor acc;
    acc.vocab = ctx.game.vocab;
    acc.flag_bits = 1;
    (ga.avoid ? acc.forbidden : acc.required) = 1;
    std::map<std::vector<int>, int> index;
    std::vector<std::vector<int>> states;
    auto intern = [&](std::vector<int> key) {
        auto [it, fresh] = index.emplace(key, static_cast<int>(states.size()));
        if (fresh) {
            acc.flags.push_back(ga.dfw.final[key[2]] ? 1u : 0u);
            acc.edges.emplace_back();
            states.push_back(std::move(key));
        }
        return it->second;
    };
    acc.initial = {intern({Arena::kStart, 0, ga.dfw.initial})};
    for (std::size_t x = 0; x < states.size(); ++x) {
        auto [s, k, q] = std::tuple(states[x][0], states[x][1], states[x][2]);
        int nk = static_cast<std::size_t>(k + 1) < period ? k + 1 : static_cast<int>(play.prefix.size());
        for (Valuation m : ctx.arena.moves[s][j]) {
            Valuation v = (play.at(k) - own) | m;
            if (!ctx.arena.legal(s, v)) continue;
            int y = intern({ctx.arena.state_of(v), nk, ga.dfw.step(q, v)});
            acc.edges[x].push_back({v, y});
        }
        std::sort(acc.edges[x].begin(), acc.edges[x].end());
    }
    return find_accepted(acc).has_value();
}

} // namespace

MyopicResult myopic_ne(const Game& g, int bound)
{
    if (bound < 1) throw std::invalid_argument("bound must be positive");
    Context ctx(g);
    const int n = ctx.num_players();
    std::vector<std::vector<Word>> words;
    double total = 1;
    for (int i = 0; i < n; ++i) {
        words.push_back(words_over(ctx.arena.controls[i], bound));
        total *= static_cast<double>(words.back().size());
    }
    if (total > kMaxProfiles) throw std::length_error("too many word profiles to enumerate");

    MyopicResult result;
    std::vector<std::size_t> idx(n, 0);
    std::vector<char> win;
    for (;;) {
        std::size_t prefix = 0, loop = 1;
        for (int i = 0; i < n; ++i) {
            const Word& w = words[i][idx[i]];
            prefix = std::max(prefix, w.prefix.size());
            loop = std::lcm(loop, w.loop.size());
        }
        Lasso play;
        for (std::size_t k = 0; k < prefix + loop; ++k) {
            Valuation v;
            for (int i = 0; i < n; ++i) v = v | words[i][idx[i]].at(k);
            (k < prefix ? play.prefix : play.loop).push_back(v);
        }
        if (ctx.arena.legal(play)) {
            auto ids = winners_on(ctx, play, win);
            if (!result.witness || better(ids, result.witness->winners)) {
                bool stable = true;
                for (int j = 0; j < n && stable; ++j)
                    if (!win[j]) stable = !word_deviation(ctx, play, j);
                if (stable) {
                    StrategyProfile profile;
                    for (int i = 0; i < n; ++i) {
                        const Word& w = words[i][idx[i]];
                        StrategyMachine m;
                        m.player = g.players[i].id;
                        const int len = static_cast<int>(w.prefix.size() + w.loop.size());
                        for (int k = 0; k < len; ++k) {
                            m.names.push_back("w" + std::to_string(k));
                            m.output.push_back(w.at(k));
                            int nk = k + 1 < len ? k + 1 : static_cast<int>(w.prefix.size());
                            m.next.emplace_back(g.vocab.alphabet_size(), nk);
                        }
                        profile.machines.push_back(std::move(m));
                    }
                    result.witness = restricted_witness(ctx, play, ids, std::move(profile));
                    if (static_cast<int>(ids.size()) == n) break;
                }
            }
        }
        int k = 0;
        while (k < n && ++idx[k] == words[k].size()) idx[k++] = 0;
        if (k == n) break;
    }
    return result;
}

} // namespace ldlg
