#include <algorithm>
#include <cctype>
#include <fstream>
#include <optional>
#include <sstream>

#include "ldlg/game.hpp"

namespace ldlg {

namespace {

std::string_view trim(std::string_view s)
{
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    return s;
}

bool starts_with_word(std::string_view s, std::string_view word)
{
    if (s.substr(0, word.size()) != word) return false;
    return s.size() == word.size() || !(std::isalnum(static_cast<unsigned char>(s[word.size()])) || s[word.size()] == '_');
}

[[noreturn]] void fail(int line, const std::string& what) { throw ParseError(what, line, 1); }

struct RawCommand {
    Phase phase;
    std::string text;
    int line;
};

struct RawModule {
    int player;
    std::string name;
    std::vector<std::string> vars;
    bool free = false;
    std::vector<RawCommand> commands;
    int line;
};

struct RawGoal {
    std::string text;
    int line;
};

// Reads `"name"` from the front of s.
std::string quoted(std::string_view& s, int line)
{
    s = trim(s);
    if (s.empty() || s.front() != '"') fail(line, "expected a quoted name");
    auto end = s.find('"', 1);
    if (end == std::string_view::npos) fail(line, "unterminated name");
    std::string out(s.substr(1, end - 1));
    s.remove_prefix(end + 1);
    return out;
}

int integer(std::string_view& s, int line)
{
    s = trim(s);
    std::size_t n = 0;
    while (n < s.size() && std::isdigit(static_cast<unsigned char>(s[n]))) ++n;
    if (n == 0) fail(line, "expected a player number");
    int v = std::stoi(std::string(s.substr(0, n)));
    s.remove_prefix(n);
    return v;
}

bool is_identifier(std::string_view s)
{
    if (s.empty() || !(std::isalpha(static_cast<unsigned char>(s[0])) || s[0] == '_')) return false;
    return std::all_of(s.begin(), s.end(), [](char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; });
}

Formula parse_prop_at(std::string_view text, int line)
{
    try {
        return parse_prop(text);
    } catch (const ParseError& e) {
        fail(line, e.what());
    }
}

void check_atoms(const Formula& f, const Vocabulary& vocab, int line)
{
    for (const auto& a : f.atoms())
        if (!vocab.index(a)) fail(line, "undeclared variable '" + a + "'");
}

GuardedCommand build_command(const RawCommand& raw, const Vocabulary& vocab, Valuation controls)
{
    auto arrow = raw.text.find("~>");
    if (arrow == std::string::npos) fail(raw.line, "expected '~>' in command");
    GuardedCommand g;
    g.guard = parse_prop_at(trim(std::string_view(raw.text).substr(0, arrow)), raw.line);
    check_atoms(g.guard, vocab, raw.line);
    std::string_view rest = std::string_view(raw.text).substr(arrow + 2);
    Valuation assigned;
    std::size_t start = 0;
    while (start <= rest.size()) {
        auto semi = rest.find(';', start);
        auto part = trim(rest.substr(start, semi == std::string_view::npos ? std::string_view::npos : semi - start));
        start = semi == std::string_view::npos ? rest.size() + 1 : semi + 1;
        if (part.empty() || part == "skip") continue;
        auto assign = part.find(":=");
        if (assign == std::string_view::npos) fail(raw.line, "expected 'x := formula'");
        auto lhs = trim(part.substr(0, assign));
        auto idx = vocab.index(lhs);
        if (!idx) fail(raw.line, "undeclared variable '" + std::string(lhs) + "'");
        if (!controls.contains(*idx)) fail(raw.line, "variable '" + std::string(lhs) + "' not controlled by this module");
        if (assigned.contains(*idx)) fail(raw.line, "variable '" + std::string(lhs) + "' assigned twice");
        assigned = assigned.with(*idx);
        Formula rhs = parse_prop_at(trim(part.substr(assign + 2)), raw.line);
        check_atoms(rhs, vocab, raw.line);
        g.assignments.emplace_back(*idx, rhs);
    }
    return g;
}

} // namespace

Game parse_game(std::string_view text)
{
    Game game;
    std::vector<RawModule> modules;
    std::map<int, RawGoal> goals;
    std::istringstream in{std::string(text)};
    std::string buffer;
    int line = 0;
    while (std::getline(in, buffer)) {
        ++line;
        std::string_view s = buffer;
        if (auto hash = s.find('#'); hash != std::string_view::npos) s = s.substr(0, hash);
        s = trim(s);
        if (s.empty()) continue;
        if (starts_with_word(s, "game")) {
            s.remove_prefix(4);
            game.name = quoted(s, line);
            continue;
        }
        if (starts_with_word(s, "player")) {
            s.remove_prefix(6);
            RawModule m;
            m.line = line;
            m.player = integer(s, line);
            s = trim(s);
            if (starts_with_word(s, "module")) {
                s.remove_prefix(6);
                m.name = quoted(s, line);
            } else if (starts_with_word(s, "free")) {
                s.remove_prefix(4);
                m.free = true;
            } else {
                fail(line, "expected 'module' or 'free'");
            }
            s = trim(s);
            if (!starts_with_word(s, "controls")) fail(line, "expected 'controls'");
            s.remove_prefix(8);
            std::size_t start = 0;
            while (start <= s.size()) {
                auto comma = s.find(',', start);
                auto name = trim(s.substr(start, comma == std::string_view::npos ? std::string_view::npos : comma - start));
                start = comma == std::string_view::npos ? s.size() + 1 : comma + 1;
                if (name.empty()) continue;
                if (!is_identifier(name)) fail(line, "bad variable name '" + std::string(name) + "'");
                m.vars.emplace_back(name);
            }
            if (m.name.empty()) m.name = "player" + std::to_string(m.player);
            modules.push_back(std::move(m));
            continue;
        }
        if (s == "free") {
            if (modules.empty()) fail(line, "'free' outside a player block");
            modules.back().free = true;
            continue;
        }
        if (starts_with_word(s, "init") || starts_with_word(s, "update")) {
            if (modules.empty()) fail(line, "command outside a player block");
            Phase phase = starts_with_word(s, "init") ? Phase::Init : Phase::Update;
            auto sep = s.find("::");
            if (sep == std::string_view::npos) fail(line, "expected '::' after command kind");
            modules.back().commands.push_back({phase, std::string(s.substr(sep + 2)), line});
            continue;
        }
        if (starts_with_word(s, "goal")) {
            s.remove_prefix(4);
            int id = integer(s, line);
            s = trim(s);
            if (s.empty() || s.front() != ':') fail(line, "expected ':' after goal player");
            if (goals.count(id)) fail(line, "second goal for player " + std::to_string(id));
            goals[id] = {std::string(s.substr(1)), line};
            continue;
        }
        fail(line, "unrecognized line");
    }
    if (modules.empty()) fail(line, "game declares no players");

    for (const auto& m : modules)
        for (const auto& v : m.vars) {
            if (game.vocab.index(v)) fail(m.line, "variable '" + v + "' controlled twice");
            if (game.vocab.size() >= Vocabulary::kMaxVariables) fail(m.line, "too many variables");
            game.vocab.add(v);
        }

    std::map<int, Module> by_player;
    for (const auto& raw : modules) {
        Module m;
        m.name = raw.name;
        for (const auto& v : raw.vars) m.controls = m.controls.with(*game.vocab.index(v));
        if (raw.free) {
            if (!raw.commands.empty()) fail(raw.commands.front().line, "free module with commands");
            m = Module::free_module(raw.name, m.controls, game.vocab);
        }
        for (const auto& c : raw.commands) {
            auto g = build_command(c, game.vocab, m.controls);
            (c.phase == Phase::Init ? m.init : m.update).push_back(std::move(g));
        }
        auto it = by_player.find(raw.player);
        if (it == by_player.end())
            by_player.emplace(raw.player, std::move(m));
        else
            it->second = module_product(it->second, m);
    }

    for (const auto& [id, g] : goals)
        if (!by_player.count(id)) fail(g.line, "goal for unknown player " + std::to_string(id));
    for (auto& [id, m] : by_player) {
        auto it = goals.find(id);
        if (it == goals.end()) fail(line, "player " + std::to_string(id) + " has no goal");
        std::optional<Goal> parsed;
        try {
            parsed = parse_formula(it->second.text);
        } catch (const ParseError& e) {
            throw ParseError(std::string("goal: ") + e.what(), it->second.line, e.column());
        }
        Goal goal = *parsed;
        const Formula& body = std::holds_alternative<Formula>(goal) ? std::get<Formula>(goal) : std::get<QFormula>(goal).body;
        check_atoms(body, game.vocab, it->second.line);
        game.players.push_back({id, std::move(m), std::move(goal)});
    }
    return game;
}

Game load_game(const std::string& path)
{
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_game(ss.str());
}

std::string format_game(const Game& g)
{
    std::ostringstream os;
    os << "game \"" << g.name << "\"\n";
    for (const auto& p : g.players) {
        const auto& m = p.module;
        os << "player " << p.id << " module \"" << m.name << "\" controls ";
        bool first = true;
        for (int i = 0; i < g.vocab.size(); ++i)
            if (m.controls.contains(i)) {
                os << (first ? "" : ", ") << g.vocab.name(i);
                first = false;
            }
        os << "\n";
        if (m.free) {
            os << "  free\n";
            continue;
        }
        auto print = [&](const char* kind, const std::vector<GuardedCommand>& cs) {
            for (const auto& c : cs) {
                os << "  " << kind << " :: " << to_string(c.guard) << " ~>";
                for (std::size_t k = 0; k < c.assignments.size(); ++k)
                    os << (k ? "; " : " ") << g.vocab.name(c.assignments[k].first) << " := " << to_string(c.assignments[k].second);
                os << "\n";
            }
        };
        print("init", m.init);
        print("update", m.update);
    }
    for (const auto& p : g.players) os << "goal " << p.id << " : " << to_string(p.goal) << "\n";
    return os.str();
}

} // namespace ldlg
