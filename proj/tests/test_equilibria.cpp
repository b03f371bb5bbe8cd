#include "doctest.h"
#include "game_oracles.hpp"
#include "json.hpp"

using namespace ldlg;

namespace {

std::string fixture(const std::string& name) { return std::string(FIXTURE_DIR) + "/" + name; }

Formula F(const char* text) { return parse_ldlf(text); }

bool starts_in_region(const Game& g, int id)
{
    PunishmentRegion r = punishment_region(g, {id});
    int q0 = goal_automaton(g.players[g.index_of(id)].goal, g.vocab).dfw.initial;
    return r.contains(Arena::kStart, {q0});
}

void check_witness(const Game& g, const NashWitness& w)
{
    CHECK(build_arena(g).legal(w.lasso));
    for (const auto& p : g.players) {
        CHECK(eval_goal(p.goal, g.vocab, w.lasso) == w.satisfied.at(p.id));
        bool winner = std::find(w.winners.begin(), w.winners.end(), p.id) != w.winners.end();
        CHECK(winner == w.satisfied.at(p.id));
    }
    StrategyProfile prof = w.profile ? *w.profile : extract_profile(g, w);
    for (std::size_t i = 0; i < prof.machines.size(); ++i)
        CHECK(is_compatible(prof.machines[i], g.players[i].module, g.vocab));
    MembershipResult m = ne_membership(g, prof);
    CHECK(m.verdict == Verdict::Yes);
    for (const auto& p : g.players) CHECK(eval_goal(p.goal, g.vocab, m.play) == w.satisfied.at(p.id));
}

} // namespace

TEST_CASE("membership on the file sharing profiles")
{
    Game g = load_game(fixture("example1_n1.game"));
    MembershipResult yes = ne_membership(g, load_profile(g, fixture("example2_n1.profile")));
    CHECK(yes.verdict == Verdict::Yes);
    CHECK_FALSE(yes.deviator);

    MembershipResult no = ne_membership(g, load_profile(g, fixture("example2_n1_lazy.profile")));
    REQUIRE(no.verdict == Verdict::No);
    REQUIRE(no.deviator);
    CHECK(*no.deviator == 0);
    REQUIRE(no.deviation);
    CHECK_FALSE(eval_goal(g.players[0].goal, g.vocab, no.play));
    CHECK(eval_goal(g.players[0].goal, g.vocab, *no.deviation));
    CHECK(build_arena(g).legal(*no.deviation));
}

TEST_CASE("membership rejects malformed input")
{
    Game toggle = load_game(fixture("toggle.game"));
    CHECK(ne_membership(toggle, load_profile(toggle, fixture("toggle_stuck.profile"))).verdict == Verdict::Error);
    CHECK(ne_membership(toggle, load_profile(toggle, fixture("toggle.profile"))).verdict == Verdict::Yes);
    Game pq = load_game(fixture("pq.game"));
    CHECK_THROWS_AS(ne_membership(pq, load_profile(toggle, fixture("toggle.profile"))), std::invalid_argument);
}

TEST_CASE("membership agrees with brute force on small games")
{
    for (unsigned seed = 100; seed < 106; ++seed) {
        Game g = oracle::random_game(seed, 5);
        auto space = oracle::profile_space(g);
        for (std::size_t k = 0; k < space.size(); k += 1 + space.size() / 200) {
            bool yes = ne_membership(g, space[k]).verdict == Verdict::Yes;
            CHECK(yes == oracle::is_equilibrium(g, space[k]));
        }
    }
}

TEST_CASE("punishment regions")
{
    // a deviator already knows the punishers' next move
    CHECK_FALSE(starts_in_region(load_game(fixture("pennies.game")), 1));
    CHECK_FALSE(starts_in_region(load_game(fixture("pennies.game")), 2));
    CHECK(starts_in_region(load_game(fixture("pq.game")), 1));
    CHECK_FALSE(starts_in_region(load_game(fixture("toggle.game")), 1));
    // player 2 can always copy x
    CHECK_FALSE(starts_in_region(load_game(fixture("copycat.game")), 2));

    Game pq = load_game(fixture("pq.game"));
    PunishmentRegion r = punishment_region(pq, {1});
    for (int s = 0; s < r.num_states(); ++s) {
        CHECK(r.find(r.arena_state[s], r.goal_state[s]) == s);
        if (r.member[s]) CHECK_FALSE(r.move[s].contains(*pq.vocab.index("q")));
    }
    CHECK(r.find(12345, {0}) == -1);
}

TEST_CASE("non-emptiness on the fixtures")
{
    CHECK_FALSE(ne_nonemptiness(load_game(fixture("pennies.game"))));
    CHECK_FALSE(sne_nonemptiness(load_game(fixture("pennies.game"))));

    Game copy = load_game(fixture("copycat.game"));
    auto w = ne_nonemptiness(copy);
    REQUIRE(w);
    CHECK(w->winners == std::vector<int>{2});
    CHECK(w->losers(copy) == std::vector<int>{1});
    CHECK(w->punishments.count(1));
    check_witness(copy, *w);

    Game fs = load_game(fixture("example1_n1.game"));
    auto all = ne_nonemptiness(fs);
    REQUIRE(all);
    CHECK(all->winners == std::vector<int>{0, 1, 2});
    check_witness(fs, *all);

    Game pq = load_game(fixture("pq.game"));
    auto strong = sne_nonemptiness(pq);
    REQUIRE(strong);
    CHECK(strong->winners == std::vector<int>{1, 2});
    check_witness(pq, *strong);
    CHECK(oracle::is_equilibrium(pq, extract_profile(pq, *strong), true));
}

TEST_CASE("witnesses from random games are equilibria")
{
    for (unsigned seed = 0; seed < 40; ++seed) {
        Game g = oracle::random_game(seed);
        auto w = ne_nonemptiness(g);
        if (!w) continue;
        check_witness(g, *w);
        auto s = sne_nonemptiness(g);
        if (s) {
            check_witness(g, *s);
            CHECK(oracle::is_equilibrium(g, extract_profile(g, *s), true));
            CHECK(s->winners.size() <= w->winners.size());
        }
    }
}

TEST_CASE("strong equilibria agree with brute force")
{
    for (unsigned seed = 200; seed < 208; ++seed) {
        Game g = oracle::random_game(seed, 4);
        bool found = false;
        for (const auto& p : oracle::profile_space(g))
            if (oracle::is_equilibrium(g, p, true)) {
                found = true;
                break;
            }
        auto s = sne_nonemptiness(g);
        if (found) CHECK(s.has_value());
        if (s) CHECK(oracle::is_equilibrium(g, extract_profile(g, *s), true));
    }
}

TEST_CASE("equilibria satisfying a property")
{
    Game fs = load_game(fixture("example1_n1.game"));
    auto e = e_nash(fs, F("<tt*> d1"));
    REQUIRE(e);
    CHECK(eval_lasso(F("<tt*> d1"), fs.vocab, e->lasso));
    check_witness(fs, *e);
    CHECK(a_nash(fs, F("tt")).holds);

    Game pq = load_game(fixture("pq.game"));
    ANashResult a = a_nash(pq, F("p"));
    CHECK_FALSE(a.holds);
    REQUIRE(a.counterexample);
    CHECK_FALSE(eval_lasso(F("p"), pq.vocab, a.counterexample->lasso));
    CHECK_FALSE(e_nash(pq, F("ff")));
    CHECK_FALSE(e_nash(load_game(fixture("pennies.game")), F("tt")));
    CHECK(a_nash(load_game(fixture("pennies.game")), F("ff")).holds);
}

TEST_CASE("property queries are consistent")
{
    oracle::RandomFormulas rf({"x", "y"}, 99);
    for (unsigned seed = 0; seed < 25; ++seed) {
        Game g = oracle::random_game(seed);
        Formula phi = rf.formula(1 + static_cast<int>(rf.pick(5)));
        bool any = ne_nonemptiness(g).has_value();
        CHECK(e_nash(g, F("tt")).has_value() == any);
        auto e = e_nash(g, phi);
        if (e) {
            CHECK(any);
            CHECK(eval_lasso(phi, g.vocab, e->lasso));
            CHECK(e_nash(g, Formula::disj(phi, Formula::atom("x"))).has_value());
        }
        Goal ephi = QFormula{Quantifier::Exists, phi};
        Goal anot = QFormula{Quantifier::Forall, Formula::negate(phi)};
        CHECK(a_nash(g, ephi).holds == !e_nash(g, anot).has_value());
        ANashResult a = a_nash(g, phi);
        if (!a.holds) {
            REQUIRE(a.counterexample);
            CHECK_FALSE(eval_lasso(phi, g.vocab, a.counterexample->lasso));
        }
    }
}

TEST_CASE("restricted solvers")
{
    Game copy = load_game(fixture("copycat.game"));
    auto m = memoryless_ne(copy);
    REQUIRE(m);
    CHECK(m->winners == std::vector<int>{2});
    REQUIRE(m->profile);
    for (const auto& mach : m->profile->machines) CHECK(is_memoryless(mach));
    check_witness(copy, *m);
    for (int b = 1; b <= 2; ++b) CHECK_FALSE(myopic_ne(copy, b).witness);

    Game toggle = load_game(fixture("toggle.game"));
    auto t = myopic_ne(toggle, 2);
    REQUIRE(t.witness);
    REQUIRE(t.witness->profile);
    CHECK(is_myopic(t.witness->profile->machines[0]));
    check_witness(toggle, *t.witness);
    CHECK_FALSE(memoryless_ne(load_game(fixture("pennies.game"))));
}

TEST_CASE("synthesis game")
{
    Game g = build_synthesis_game(F("<tt*> x"), {"x"}, {"y"});
    CHECK(g.num_players() == 4);
    CHECK(g.vocab.size() == 4);
    CHECK(ne_nonemptiness(g).has_value());
    CHECK_FALSE(ne_nonemptiness(build_synthesis_game(F("<tt*> (x && y)"), {"x"}, {"y"})).has_value());
    CHECK_THROWS_AS(build_synthesis_game(F("x"), {"x"}, {"x"}), std::invalid_argument);
    CHECK_THROWS_AS(build_synthesis_game(F("p"), {"p"}, {"y"}), std::invalid_argument);
    CHECK_THROWS_AS(build_synthesis_game(F("z"), {"x"}, {"y"}), std::invalid_argument);
}

TEST_CASE("witness documents")
{
    Game copy = load_game(fixture("copycat.game"));
    auto w = ne_nonemptiness(copy);
    REQUIRE(w);
    auto doc = nlohmann::json::parse(witness_json(copy, *w));
    CHECK(doc["game"] == "copycat");
    CHECK(doc["winners"] == nlohmann::json::array({2}));
    CHECK(doc["losers"] == nlohmann::json::array({1}));
    CHECK(doc["goals"]["2"] == true);
    CHECK(doc["lasso"]["loop"].size() == w->lasso.loop.size());
    CHECK(doc["punishment"].contains("1"));
    CHECK(witness_json(copy, *w) == witness_json(copy, *w));
}
