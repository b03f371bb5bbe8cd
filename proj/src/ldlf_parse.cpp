#include <cctype>
#include <optional>

#include "ldlg/ldlf.hpp"

namespace ldlg {

ParseError::ParseError(const std::string& what, int line, int column)
    : std::runtime_error(std::to_string(line) + ":" + std::to_string(column) + ": " + what)
    , line_(line)
    , column_(column)
{
}

namespace {

enum class Tok { Ident, Number, Or, And, Bang, Lt, Gt, LBrack, RBrack, LParen, RParen, LBrace, RBraceQ, Plus, Semi, Star, Caret, End };

struct Token {
    Tok kind;
    std::string text;
    int line;
    int column;
};

std::vector<Token> tokenize(std::string_view s)
{
    std::vector<Token> out;
    int line = 1;
    int col = 1;
    std::size_t i = 0;
    auto push = [&](Tok k, std::string text, int len) {
        out.push_back({k, std::move(text), line, col});
        i += len;
        col += len;
    };
    while (i < s.size()) {
        char c = s[i];
        if (c == '\n') {
            ++line;
            col = 1;
            ++i;
            continue;
        }
        if (std::isspace(static_cast<unsigned char>(c))) {
            ++i;
            ++col;
            continue;
        }
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            std::size_t j = i;
            while (j < s.size() && (std::isalnum(static_cast<unsigned char>(s[j])) || s[j] == '_')) ++j;
            push(Tok::Ident, std::string(s.substr(i, j - i)), static_cast<int>(j - i));
            continue;
        }
        if (std::isdigit(static_cast<unsigned char>(c))) {
            std::size_t j = i;
            while (j < s.size() && std::isdigit(static_cast<unsigned char>(s[j]))) ++j;
            push(Tok::Number, std::string(s.substr(i, j - i)), static_cast<int>(j - i));
            continue;
        }
        auto two = s.substr(i, 2);
        if (two == "||") { push(Tok::Or, "||", 2); continue; }
        if (two == "&&") { push(Tok::And, "&&", 2); continue; }
        if (two == "}?") { push(Tok::RBraceQ, "}?", 2); continue; }
        switch (c) {
        case '!': push(Tok::Bang, "!", 1); continue;
        case '<': push(Tok::Lt, "<", 1); continue;
        case '>': push(Tok::Gt, ">", 1); continue;
        case '[': push(Tok::LBrack, "[", 1); continue;
        case ']': push(Tok::RBrack, "]", 1); continue;
        case '(': push(Tok::LParen, "(", 1); continue;
        case ')': push(Tok::RParen, ")", 1); continue;
        case '{': push(Tok::LBrace, "{", 1); continue;
        case '+': push(Tok::Plus, "+", 1); continue;
        case ';': push(Tok::Semi, ";", 1); continue;
        case '*': push(Tok::Star, "*", 1); continue;
        case '^': push(Tok::Caret, "^", 1); continue;
        default: throw ParseError(std::string("unknown operator '") + c + "'", line, col);
        }
    }
    out.push_back({Tok::End, "", line, col});
    return out;
}

bool is_constant(const std::string& s, bool& value)
{
    if (s == "tt" || s == "true") { value = true; return true; }
    if (s == "ff" || s == "false") { value = false; return true; }
    return false;
}

class Parser {
public:
    explicit Parser(std::string_view text) : toks_(tokenize(text)) {}

    Goal goal()
    {
        if (peek().kind == Tok::Ident && (peek().text == "E" || peek().text == "A") && starts_formula(toks_[pos_ + 1])) {
            Quantifier q = next().text == "E" ? Quantifier::Exists : Quantifier::Forall;
            Formula body = formula();
            expect_end();
            return QFormula{q, body};
        }
        Formula f = formula();
        expect_end();
        return f;
    }

    Formula prop_only()
    {
        Formula f = prop_disj();
        expect_end();
        return f;
    }

private:
    static bool starts_formula(const Token& t)
    {
        switch (t.kind) {
        case Tok::Ident:
        case Tok::Bang:
        case Tok::Lt:
        case Tok::LBrack:
        case Tok::LParen: return true;
        default: return false;
        }
    }

    const Token& peek() const { return toks_[pos_]; }
    const Token& next() { return toks_[pos_++]; }
    bool accept(Tok k)
    {
        if (peek().kind != k) return false;
        ++pos_;
        return true;
    }
    [[noreturn]] void fail(const std::string& what) const
    {
        const auto& t = peek();
        throw ParseError(what + (t.kind == Tok::End ? " at end of input" : " near '" + t.text + "'"), t.line, t.column);
    }
    void expect(Tok k, const char* what)
    {
        if (!accept(k)) fail(std::string("expected ") + what);
    }
    void expect_end()
    {
        if (peek().kind != Tok::End) fail("unexpected token");
    }

    Formula formula()
    {
        Formula f = conj();
        while (accept(Tok::Or)) f = Formula::disj(f, conj());
        return f;
    }

    Formula conj()
    {
        Formula f = unary();
        while (accept(Tok::And)) f = Formula::conj(f, unary());
        return f;
    }

    Formula unary()
    {
        if (accept(Tok::Bang)) return Formula::negate(unary());
        if (accept(Tok::Lt)) {
            PathExpr p = path();
            expect(Tok::Gt, "'>'");
            return Formula::diamond(p, unary());
        }
        if (accept(Tok::LBrack)) {
            PathExpr p = path();
            expect(Tok::RBrack, "']'");
            return Formula::box(p, unary());
        }
        return atom();
    }

    Formula atom()
    {
        if (peek().kind == Tok::Ident) {
            std::string name = next().text;
            bool value = false;
            if (is_constant(name, value)) return value ? Formula::tt() : Formula::ff();
            return Formula::atom(name);
        }
        if (accept(Tok::LParen)) {
            Formula f = formula();
            expect(Tok::RParen, "')'");
            return f;
        }
        fail("expected a formula");
    }

    PathExpr path()
    {
        PathExpr p = seq();
        while (accept(Tok::Plus)) p = PathExpr::choice(p, seq());
        return p;
    }

    PathExpr seq()
    {
        PathExpr p = starred();
        while (accept(Tok::Semi)) p = PathExpr::seq(p, starred());
        return p;
    }

    PathExpr starred()
    {
        PathExpr p = base();
        for (;;) {
            if (accept(Tok::Star)) {
                p = PathExpr::star(p);
            } else if (accept(Tok::Caret)) {
                if (peek().kind != Tok::Number) fail("expected exponent");
                p = PathExpr::power(p, static_cast<unsigned>(std::stoul(next().text)));
            } else {
                return p;
            }
        }
    }

    PathExpr base()
    {
        if (accept(Tok::LBrace)) {
            Formula f = formula();
            expect(Tok::RBraceQ, "'}?'");
            return PathExpr::test(f);
        }
        if (accept(Tok::LParen)) {
            PathExpr p = path();
            expect(Tok::RParen, "')'");
            // "(a || b) && c": a parenthesized step that continues as a propositional formula.
            if (p.kind() == PathKind::Prop && (peek().kind == Tok::And || peek().kind == Tok::Or))
                return PathExpr::prop(prop_continue(p.formula()));
            return p;
        }
        return PathExpr::prop(prop_disj());
    }

    Formula prop_continue(Formula left)
    {
        while (peek().kind == Tok::And) {
            next();
            left = Formula::conj(left, prop_unary());
        }
        while (accept(Tok::Or)) left = Formula::disj(left, prop_conj());
        return left;
    }

    Formula prop_disj()
    {
        Formula f = prop_conj();
        while (accept(Tok::Or)) f = Formula::disj(f, prop_conj());
        return f;
    }

    Formula prop_conj()
    {
        Formula f = prop_unary();
        while (accept(Tok::And)) f = Formula::conj(f, prop_unary());
        return f;
    }

    Formula prop_unary()
    {
        if (accept(Tok::Bang)) return Formula::negate(prop_unary());
        if (peek().kind == Tok::Ident) {
            std::string name = next().text;
            bool value = false;
            if (is_constant(name, value)) return value ? Formula::tt() : Formula::ff();
            return Formula::atom(name);
        }
        if (accept(Tok::LParen)) {
            Formula f = prop_disj();
            expect(Tok::RParen, "')'");
            return f;
        }
        if (peek().kind == Tok::Lt || peek().kind == Tok::LBrack) fail("modality inside a propositional formula");
        fail("expected a propositional formula");
    }

    std::vector<Token> toks_;
    std::size_t pos_ = 0;
};

} // namespace

Goal parse_formula(std::string_view text) { return Parser(text).goal(); }

Formula parse_ldlf(std::string_view text)
{
    Goal g = parse_formula(text);
    if (auto* f = std::get_if<Formula>(&g)) return *f;
    throw ParseError("quantifier not allowed here", 1, 1);
}

Formula parse_prop(std::string_view text) { return Parser(text).prop_only(); }

} // namespace ldlg
