#include "doctest.h"
#include "game_oracles.hpp"

using namespace ldlg;

namespace {

std::string fixture(const char* name) { return std::string(FIXTURE_DIR) + "/" + name; }

const char* kShared = R"(game "shared"
player 1 module "a" controls x
  init :: tt ~> x := tt
  update :: x ~> x := ff
player 1 module "b" controls z
  init :: tt ~> z := ff
  update :: !x ~> z := tt
player 2 free controls y
goal 1 : <tt*> z
goal 2 : E <tt*> y
)";

} // namespace

TEST_CASE("parse the toggle game")
{
    Game g = load_game(fixture("toggle.game"));
    CHECK(g.name == "toggle");
    REQUIRE(g.num_players() == 1);
    CHECK(g.players[0].id == 1);
    CHECK(g.players[0].module.init.size() == 2);
    CHECK(g.players[0].module.update.size() == 2);
    CHECK_FALSE(g.players[0].module.free);
    CHECK(to_string(g.players[0].goal) == to_string(parse_formula("<tt*> !p")));
}

TEST_CASE("command execution")
{
    Vocabulary vocab({"x", "y", "z"});
    GuardedCommand c{parse_prop("x"), {{1, parse_prop("!z")}, {2, parse_prop("x && z")}}};
    CHECK(c.controlled() == vocab.parse("y, z"));
    CHECK(exec_command(c, vocab, vocab.parse("x")) == vocab.parse("y"));
    CHECK(exec_command(c, vocab, vocab.parse("x, z")) == vocab.parse("z"));
    CHECK_THROWS_AS(exec_command(c, vocab, vocab.parse("z")), std::invalid_argument);
}

TEST_CASE("enabled moves keep unassigned variables and skip")
{
    Vocabulary vocab({"x", "y"});
    Module m;
    m.controls = vocab.parse("x, y");
    m.init.push_back({Formula::tt(), {{0, Formula::tt()}}});
    m.update.push_back({parse_prop("x"), {{0, Formula::ff()}}});
    CHECK(enabled_moves(m, vocab, Phase::Init, vocab.parse("y")) == std::vector<Valuation>{vocab.parse("x")});
    CHECK(enabled_moves(m, vocab, Phase::Update, vocab.parse("x, y")) == std::vector<Valuation>{vocab.parse("y")});
    // nothing enabled: skip keeps the controlled part
    CHECK(enabled_moves(m, vocab, Phase::Update, vocab.parse("y")) == std::vector<Valuation>{vocab.parse("y")});
    Module none;
    none.controls = vocab.parse("y");
    CHECK(enabled_moves(none, vocab, Phase::Init, Valuation{}) == std::vector<Valuation>{Valuation{}});

    Module f = Module::free_module("f", vocab.parse("x, y"), vocab);
    CHECK(f.free);
    CHECK(enabled_moves(f, vocab, Phase::Update, Valuation{}).size() == 4);
}

TEST_CASE("game parse errors")
{
    CHECK_THROWS_AS(parse_game(""), ParseError);
    CHECK_THROWS_AS(parse_game("player 1 free controls x\n"), ParseError);  // no goal
    CHECK_THROWS_AS(parse_game("player 1 free controls x\ngoal 1 : y\n"), ParseError);
    CHECK_THROWS_AS(parse_game("player 1 free controls x\nplayer 2 free controls x\ngoal 1 : x\ngoal 2 : x\n"), ParseError);
    CHECK_THROWS_AS(parse_game("player 1 module \"m\" controls x\n  update :: tt ~> y := tt\nplayer 2 free controls y\ngoal 1 : x\ngoal 2 : y\n"),
                    ParseError);
    CHECK_THROWS_AS(parse_game("player 1 free controls x\ngoal 1 : x\ngoal 1 : x\n"), ParseError);
    CHECK_THROWS_AS(parse_game("player 1 free controls x\ngoal 1 : <x\n"), ParseError);
    CHECK_THROWS_AS(parse_game("player 1 free controls x\ngoal 1 : x\nbogus\n"), ParseError);
    try {
        parse_game("player 1 free controls x\n\nupdate tt ~> x := tt\ngoal 1 : x\n");
        FAIL("expected a parse error");
    } catch (const ParseError& e) {
        CHECK(e.line() == 3);
    }
}

TEST_CASE("modules of one player are composed")
{
    Game g = parse_game(kShared);
    REQUIRE(g.num_players() == 2);
    const Module& m = g.players[0].module;
    CHECK(m.controls == g.vocab.parse("x, z"));
    auto init = enabled_moves(m, g.vocab, Phase::Init, Valuation{});
    CHECK(init == std::vector<Valuation>{g.vocab.parse("x")});
    // a's command alone where b has nothing enabled
    CHECK(enabled_moves(m, g.vocab, Phase::Update, g.vocab.parse("x")) == std::vector<Valuation>{Valuation{}});
    CHECK(enabled_moves(m, g.vocab, Phase::Update, Valuation{}) == std::vector<Valuation>{g.vocab.parse("z")});
    CHECK_THROWS_AS(module_product(m, m), std::invalid_argument);
}

TEST_CASE("product agrees with running both modules")
{
    Vocabulary vocab({"x", "y"});
    for (unsigned seed = 0; seed < 30; ++seed) {
        Game g = oracle::random_game(seed);
        const Module& a = g.players[0].module;
        const Module& b = g.players[1].module;
        Module ab = module_product(a, b);
        for (std::uint32_t bits = 0; bits < 4; ++bits) {
            Valuation v(bits);
            for (Phase ph : {Phase::Init, Phase::Update}) {
                std::vector<Valuation> expected;
                for (Valuation m1 : enabled_moves(a, vocab, ph, v))
                    for (Valuation m2 : enabled_moves(b, vocab, ph, v)) expected.push_back(m1 | m2);
                std::sort(expected.begin(), expected.end());
                CHECK(enabled_moves(ab, vocab, ph, v) == expected);
            }
        }
    }
}

TEST_CASE("toggle arena")
{
    Game g = load_game(fixture("toggle.game"));
    Arena a = build_arena(g);
    CHECK(a.num_states() == 3);
    int on = a.state_of(g.vocab.parse("p"));
    int off = a.state_of(Valuation{});
    REQUIRE(on > 0);
    REQUIRE(off > 0);
    CHECK(a.successors(Arena::kStart) == std::vector<Valuation>{g.vocab.parse("p")});
    CHECK(a.successors(on) == std::vector<Valuation>{Valuation{}});
    CHECK(a.successors(off) == std::vector<Valuation>{g.vocab.parse("p")});
    CHECK(a.legal(parse_lasso(g.vocab, "| p; ")));
    CHECK_FALSE(a.legal(parse_lasso(g.vocab, "| p; p")));
    CHECK_FALSE(a.legal(parse_lasso(g.vocab, "| ")));
}

TEST_CASE("formatted games read back")
{
    for (const char* name : {"toggle.game", "pq.game", "copycat.game", "pennies.game", "example1_n1.game"}) {
        Game g = load_game(fixture(name));
        Game h = parse_game(format_game(g));
        CHECK(format_game(h) == format_game(g));
        CHECK(h.vocab == g.vocab);
    }
    Game shared = parse_game(kShared);
    Game again = parse_game(format_game(shared));
    Arena a = build_arena(shared), b = build_arena(again);
    CHECK(a.valuation == b.valuation);
    CHECK(a.moves == b.moves);
}

TEST_CASE("missing files")
{
    CHECK_THROWS(load_game(fixture("nope.game")));
}
