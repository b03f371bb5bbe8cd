#include <sstream>

#include "doctest.h"
#include "json.hpp"
#include "ldlg/cli.hpp"
#include "ldlg/game.hpp"

using namespace ldlg;

namespace {

std::string fixture(const std::string& name) { return std::string(FIXTURE_DIR) + "/" + name; }

struct Run {
    int code;
    std::string out;
    std::string err;
};

Run run(std::vector<std::string> args)
{
    std::ostringstream out, err;
    int code = run_cli(args, out, err);
    return {code, out.str(), err.str()};
}

} // namespace

TEST_CASE("eval")
{
    CHECK(run({"eval", "--formula", "<(u1 ; tt)*> d1", "--trace", "u1; ; d1"}).code == kYes);
    CHECK(run({"eval", "--formula", "<tt*> d1", "--trace", "u1; u1"}).code == kNo);
    CHECK(run({"eval", "--formula", "E <tt*> p", "--lasso", "| ; p"}).code == kYes);
    CHECK(run({"eval", "--formula", "A <tt*> p", "--lasso", "| ; p"}).code == kNo);
    CHECK(run({"eval", "--formula", "<tt*> d1", "--trace", "u1", "--game", fixture("example1_n1.game")}).code == kNo);
    CHECK(run({"eval", "--formula", "<tt", "--trace", "p"}).code == kUsage);
    CHECK(run({"eval", "--formula", "p"}).code == kUsage);
}

TEST_CASE("check")
{
    CHECK(run({"check", "--game", fixture("example1_n1.game"), "--profile", fixture("example2_n1.profile")}).code == kYes);
    Run lazy = run({"check", "--game", fixture("example1_n1.game"), "--profile", fixture("example2_n1_lazy.profile"), "--json"});
    CHECK(lazy.code == kNo);
    CHECK(nlohmann::json::parse(lazy.out).is_object());
    CHECK(run({"check", "--game", fixture("toggle.game"), "--profile", fixture("toggle_stuck.profile")}).code == kIncompatible);
    CHECK(run({"check", "--game", fixture("toggle.game"), "--profile", fixture("toggle.profile")}).code == kYes);
    CHECK(run({"check", "--game", fixture("missing.game"), "--profile", fixture("toggle.profile")}).code == kUsage);
}

TEST_CASE("solve")
{
    Run copy = run({"solve", "--game", fixture("copycat.game")});
    CHECK(copy.code == kYes);
    CHECK(copy.out.find("winners: {2}") != std::string::npos);
    CHECK(run({"solve", "--game", fixture("pennies.game")}).code == kNo);
    CHECK(run({"solve", "--game", fixture("pq.game"), "--strong"}).code == kYes);
    CHECK(run({"solve", "--game", fixture("copycat.game"), "--memoryless"}).code == kYes);
    CHECK(run({"solve", "--game", fixture("copycat.game"), "--myopic", "--bound", "1"}).code == kUnknown);
    Run json = run({"solve", "--game", fixture("copycat.game"), "--json"});
    CHECK(json.code == kYes);
    CHECK(nlohmann::json::parse(json.out)["winners"] == nlohmann::json::array({2}));
    CHECK(run({"solve"}).code == kUsage);
    CHECK(run({"bogus"}).code == kUsage);
}

TEST_CASE("property queries")
{
    CHECK(run({"enash", "--game", fixture("example1_n1.game"), "--formula", "<tt*> d1"}).code == kYes);
    CHECK(run({"enash", "--game", fixture("pennies.game"), "--formula", "tt"}).code == kNo);
    CHECK(run({"anash", "--game", fixture("pq.game"), "--formula", "p"}).code == kNo);
    CHECK(run({"anash", "--game", fixture("pq.game"), "--formula", "tt"}).code == kYes);
}

TEST_CASE("synth-game prints a game")
{
    Run r = run({"synth-game", "--formula", "<tt*> x", "--x", "x", "--y", "y"});
    REQUIRE(r.code == kYes);
    Game g = parse_game(r.out);
    CHECK(g.num_players() == 4);
    CHECK(run({"synth-game", "--formula", "x", "--x", "x", "--y", "x"}).code == kUsage);
}
