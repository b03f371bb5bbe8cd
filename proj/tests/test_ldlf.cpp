#include "doctest.h"
#include "oracles.hpp"

using namespace ldlg;

namespace {

Formula F(const char* text) { return parse_ldlf(text); }

PathExpr path_of(const char* text) { return parse_ldlf(text).path(); }

using Pairs = std::set<std::pair<std::size_t, std::size_t>>;

} // namespace

TEST_CASE("parser builds the expected trees")
{
    Formula f = F("<true*> p");
    CHECK(f.kind() == FormulaKind::Diamond);
    CHECK(f.path().kind() == PathKind::Star);
    CHECK(f.path().lhs().kind() == PathKind::Prop);
    CHECK(f.path().lhs().formula().kind() == FormulaKind::True);
    CHECK(f.lhs().name() == "p");

    Formula g = F("[((!u1)* ; u1)^1] d1");
    REQUIRE(g.kind() == FormulaKind::Box);
    CHECK(g.path().kind() == PathKind::Power);
    CHECK(g.path().exponent() == 1);
    CHECK(g.path().lhs().kind() == PathKind::Seq);
    CHECK(g.path().lhs().lhs().kind() == PathKind::Star);
    CHECK(g.path().lhs().lhs().lhs().formula().kind() == FormulaKind::Not);

    Goal q = parse_formula("E <true*> p");
    REQUIRE(std::holds_alternative<QFormula>(q));
    CHECK(std::get<QFormula>(q).quantifier == Quantifier::Exists);
    CHECK(structurally_equal(std::get<QFormula>(q).body, f));

}

TEST_CASE("parser reports errors with positions")
{
    CHECK_THROWS_AS(parse_formula("p &&"), ParseError);
    CHECK_THROWS_AS(parse_formula("<p"), ParseError);
    CHECK_THROWS_AS(parse_formula("<<tt>p> q"), ParseError);
    CHECK_THROWS_AS(parse_ldlf("A p"), ParseError);
    CHECK_THROWS_AS(parse_prop("<tt> p"), ParseError);
    try {
        parse_formula("p ||\n  )");
        FAIL("expected a parse error");
    } catch (const ParseError& e) {
        CHECK(e.line() == 2);
    }
}

TEST_CASE("rendering reads back to the same tree")
{
    oracle::RandomFormulas rf({"p", "q", "r"}, 5);
    for (int k = 0; k < 300; ++k) {
        Formula f = rf.formula(1 + static_cast<int>(rf.pick(12)));
        CHECK(structurally_equal(parse_ldlf(to_string(f)), f));
    }
}

TEST_CASE("path relations")
{
    Vocabulary vocab({"p", "u1", "d1"});
    CHECK(path_relation(path_of("<p> tt"), vocab, parse_trace(vocab, "p; ")) == Pairs{{0, 1}});
    CHECK(path_relation(path_of("<true*> tt"), vocab, parse_trace(vocab, " ; ")) ==
          Pairs{{0, 0}, {1, 1}, {2, 2}, {0, 1}, {1, 2}, {0, 2}});
    CHECK(path_relation(path_of("<u1 ; true> tt"), vocab, parse_trace(vocab, "u1; ; d1")) == Pairs{{0, 2}});
}

TEST_CASE("star is the reflexive transitive closure")
{
    Vocabulary vocab({"p", "q"});
    oracle::RandomFormulas rf({"p", "q"}, 11);
    for (int k = 0; k < 200; ++k) {
        PathExpr rho = rf.path(1 + static_cast<int>(rf.pick(5)));
        Trace t = rf.trace(vocab, 4);
        CHECK(path_relation(PathExpr::star(rho), vocab, t) == oracle::relation(PathExpr::star(rho), vocab, t));
        CHECK(path_relation(rho, vocab, t) == oracle::relation(rho, vocab, t));
    }
}

TEST_CASE("trace evaluation examples")
{
    Vocabulary vocab({"p", "u1", "d1"});
    CHECK(eval_trace(F("<true*> p"), vocab, parse_trace(vocab, "p")));
    CHECK_FALSE(eval_trace(F("<true*> p"), vocab, parse_trace(vocab, " ")));
    CHECK(eval_trace(F("<(u1 ; tt)*> d1"), vocab, parse_trace(vocab, "u1; ; d1")));
    CHECK_THROWS_AS(eval_trace(F("p"), vocab, parse_trace(vocab, "p"), 3), std::out_of_range);
}

TEST_CASE("empty trace: diamonds and atoms fail, boxes hold")
{
    Vocabulary vocab({"p"});
    CHECK_FALSE(eval_trace(F("p"), vocab, {}));
    CHECK(eval_trace(F("!p"), vocab, {}));
    CHECK_FALSE(eval_trace(F("<tt*> tt"), vocab, {}));
    CHECK(eval_trace(F("[tt*] ff"), vocab, {}));
    CHECK(eval_trace(F("tt"), vocab, {}));
}

TEST_CASE("powers: zero is the empty test, n is an n-fold sequence")
{
    Vocabulary vocab({"u"});
    CHECK(structurally_equal(expand_powers(F("<u^0> tt")), F("<{tt}?> tt")));
    CHECK(structurally_equal(expand_powers(F("<u^3> tt")), F("<u ; u ; u> tt")));
    for (const auto& t : oracle::all_traces(vocab, 4))
        CHECK(eval_trace(F("<((!u)* ; u)^2> tt"), vocab, t) == eval_trace(F("<(!u)* ; u ; (!u)* ; u> tt"), vocab, t));
}

TEST_CASE("duality identities hold on every short trace")
{
    Vocabulary vocab({"p", "q"});
    oracle::RandomFormulas rf({"p", "q"}, 3);
    auto traces = oracle::all_traces(vocab, 3);
    for (int k = 0; k < 60; ++k) {
        Formula f = rf.formula(1 + static_cast<int>(rf.pick(7)));
        PathExpr rho = rf.path(1 + static_cast<int>(rf.pick(4)));
        for (const auto& t : traces) {
            CHECK(eval_trace(Formula::negate(f), vocab, t) == !eval_trace(f, vocab, t));
            CHECK(eval_trace(Formula::diamond(rho, f), vocab, t) ==
                  !eval_trace(Formula::box(rho, Formula::negate(f)), vocab, t));
            CHECK(eval_trace(nnf(f), vocab, t) == eval_trace(f, vocab, t));
        }
    }
}

TEST_CASE("eventually matches a hand-written evaluator")
{
    Vocabulary vocab({"p", "q"});
    Formula f = F("<tt*> (p && !q)");
    for (const auto& t : oracle::all_traces(vocab, 4)) {
        bool expected = false;
        for (Valuation v : t) expected = expected || (v.contains(0) && !v.contains(1));
        CHECK(eval_trace(f, vocab, t) == expected);
    }
}

TEST_CASE("evaluator agrees with the recursive definition")
{
    Vocabulary vocab({"p", "q"});
    oracle::RandomFormulas rf({"p", "q"}, 99);
    for (int k = 0; k < 400; ++k) {
        Formula f = rf.formula(1 + static_cast<int>(rf.pick(10)));
        Trace t = rf.trace(vocab, 5);
        for (std::size_t i = 0; i < std::max<std::size_t>(t.size(), 1); ++i)
            CHECK(eval_trace(f, vocab, t, i) == oracle::holds(f, vocab, t, i));
    }
}

TEST_CASE("infinite plays: prefix satisfaction")
{
    Vocabulary vocab({"p"});
    Lasso toggling = parse_lasso(vocab, "| ; p");
    CHECK(eval_lasso(F("<tt*> p"), vocab, toggling));
    CHECK(eval_lasso(F("!<tt*> p"), vocab, toggling));
    CHECK_FALSE(eval_lasso(F("<p> tt"), vocab, parse_lasso(vocab, "| ")));
    CHECK_THROWS(eval_lasso(F("p"), vocab, Lasso{}));
}

TEST_CASE("quantified prefixes")
{
    Vocabulary vocab({"p"});
    Lasso w = parse_lasso(vocab, "| ; p");
    auto q = [](const char* text) { return std::get<QFormula>(parse_formula(text)); };
    CHECK(eval_qpldl(q("E <tt*> p"), vocab, w));
    CHECK_FALSE(eval_qpldl(q("A <tt*> p"), vocab, w));
    CHECK(eval_qpldl(q("A tt"), vocab, w));
    CHECK(eval_goal(parse_formula("<tt*> p"), vocab, w));
}

TEST_CASE("quantifier duality on random inputs")
{
    Vocabulary vocab({"p", "q"});
    oracle::RandomFormulas rf({"p", "q"}, 31);
    for (int k = 0; k < 200; ++k) {
        Formula psi = rf.formula(1 + static_cast<int>(rf.pick(8)));
        Lasso w = rf.lasso(vocab, 3, 3);
        CHECK(eval_qpldl({Quantifier::Forall, psi}, vocab, w) ==
              !eval_qpldl({Quantifier::Exists, Formula::negate(psi)}, vocab, w));
    }
}

TEST_CASE("sizes and atoms")
{
    CHECK(F("p").size() == 1);
    CHECK(F("<tt*> p").size() == 4);
    CHECK(F("<(u1 ; tt)*> d1 && x").atoms() == std::set<std::string>{"d1", "u1", "x"});
}

TEST_CASE("trace and lasso literals")
{
    Vocabulary vocab({"u1", "d1"});
    Trace t = parse_trace(vocab, "u1; ; d1");
    REQUIRE(t.size() == 3);
    CHECK(t[0] == vocab.valuation({"u1"}));
    CHECK(t[1].empty());
    CHECK(format_trace(vocab, t) == "{u1}; {}; {d1}");
    Lasso w = parse_lasso(vocab, "u1 | d1; {u1, d1}");
    CHECK(w.prefix.size() == 1);
    CHECK(w.loop.size() == 2);
    CHECK(parse_lasso(vocab, format_lasso(vocab, w)) == w);
    CHECK(parse_lasso(vocab, "u1 |").loop == Trace{Valuation{}});
    CHECK_THROWS(parse_lasso(vocab, "u1"));
    CHECK_THROWS(parse_trace(vocab, "zz"));
}
