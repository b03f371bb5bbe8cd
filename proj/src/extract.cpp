#include <map>
#include <stdexcept>

#include "context.hpp"

namespace ldlg {

StrategyProfile extract_profile(const Game& g, const NashWitness& w)
{
    detail::Context ctx(g);
    const int n = g.num_players();
    const Lasso& play = w.lasso;
    if (play.loop.empty()) throw std::invalid_argument("witness play has an empty loop");
    if (!ctx.arena.legal(play)) throw std::invalid_argument("witness play breaks the game rules");

    std::vector<char> loser(n, 0);
    for (int id : w.losers(g)) loser[g.index_of(id)] = 1;

    // Unroll the loop until the (arena state, goal states) pair at its start repeats.
    struct Position {
        int arena;
        std::vector<int> goals;
        Valuation move;
    };
    std::vector<Position> path;
    int s = Arena::kStart;
    std::vector<int> qs;
    for (const auto& ga : ctx.goals) qs.push_back(ga.dfw.initial);
    auto advance = [&](Valuation v) {
        path.push_back({s, qs, v});
        s = ctx.arena.state_of(v);
        for (int i = 0; i < n; ++i) qs[i] = ctx.goals[i].dfw.step(qs[i], v);
    };
    for (Valuation v : play.prefix) advance(v);
    std::map<std::pair<int, std::vector<int>>, int> loop_starts;
    int back = 0;
    for (;;) {
        auto [it, fresh] = loop_starts.emplace(std::make_pair(s, qs), static_cast<int>(path.size()));
        if (!fresh) {
            back = it->second;
            break;
        }
        for (Valuation v : play.loop) advance(v);
    }
    const int positions = static_cast<int>(path.size());

    // Controller states: path positions, punishment states per loser, then free states.
    std::vector<std::pair<int, int>> punish;  // (loser position, region state)
    std::map<std::pair<int, int>, int> punish_id;
    for (int j = 0; j < n; ++j) {
        if (!loser[j]) continue;
        const auto& r = ctx.region({j});
        for (int x = 0; x < r.num_states(); ++x)
            if (r.member[x]) {
                punish_id[{j, x}] = positions + static_cast<int>(punish.size());
                punish.emplace_back(j, x);
            }
    }
    std::map<std::uint32_t, int> free_id;
    std::vector<Valuation> free_state;
    auto free_of = [&](Valuation v) {
        auto [it, fresh] = free_id.emplace(v.bits(), positions + static_cast<int>(punish.size() + free_state.size()));
        if (fresh) free_state.push_back(v);
        return it->second;
    };
    auto punish_or_free = [&](int j, std::vector<int> goals, Valuation v) {
        int a = ctx.arena.state_of(v);
        int x = a < 0 ? -1 : ctx.region({j}).find(a, goals);
        if (x >= 0 && ctx.region({j}).member[x]) return punish_id.at({j, x});
        return free_of(v);
    };

    const std::uint32_t letters = g.vocab.alphabet_size();
    std::vector<std::vector<int>> next;
    for (int k = 0; k < positions; ++k) {
        const auto& pos = path[k];
        std::vector<int> row(letters);
        for (std::uint32_t b = 0; b < letters; ++b) {
            Valuation v(b);
            if (v == pos.move) {
                row[b] = k + 1 < positions ? k + 1 : back;
                continue;
            }
            int deviator = -1, count = 0;
            for (int i = 0; i < n; ++i)
                if ((v & ctx.arena.controls[i]) != (pos.move & ctx.arena.controls[i])) {
                    deviator = i;
                    ++count;
                }
            if (count == 1 && loser[deviator])
                row[b] = punish_or_free(deviator, {ctx.goals[deviator].dfw.step(pos.goals[deviator], v)}, v);
            else
                row[b] = free_of(v);
        }
        next.push_back(std::move(row));
    }
    for (auto [j, x] : punish) {
        const auto& r = ctx.region({j});
        std::vector<int> row(letters);
        for (std::uint32_t b = 0; b < letters; ++b)
            row[b] = punish_or_free(j, {ctx.goals[j].dfw.step(r.goal_state[x][0], Valuation(b))}, Valuation(b));
        next.push_back(std::move(row));
    }
    for (std::uint32_t b = 0; b < letters; ++b) free_of(Valuation(b));
    for (std::size_t f = 0; f < free_state.size(); ++f) {
        std::vector<int> row(letters);
        for (std::uint32_t b = 0; b < letters; ++b) row[b] = free_id.at(b);
        next.push_back(std::move(row));
    }

    StrategyProfile profile;
    for (int i = 0; i < n; ++i) {
        const auto& p = g.players[i];
        StrategyMachine m;
        m.player = p.id;
        m.initial = 0;
        m.next = next;
        const Valuation own = ctx.arena.controls[i];
        for (int k = 0; k < positions; ++k) {
            m.names.push_back("p" + std::to_string(k));
            m.output.push_back(path[k].move & own);
        }
        for (auto [j, x] : punish) {
            const auto& r = ctx.region({j});
            m.names.push_back("x" + std::to_string(g.players[j].id) + "_" + std::to_string(x));
            m.output.push_back(i == j ? ctx.arena.moves[r.arena_state[x]][i].front() : r.move[x] & own);
        }
        for (Valuation v : free_state) {
            m.names.push_back("f" + std::to_string(v.bits()));
            m.output.push_back(enabled_moves(p.module, g.vocab, Phase::Update, v).front());
        }
        profile.machines.push_back(std::move(m));
    }
    return profile;
}

} // namespace ldlg
