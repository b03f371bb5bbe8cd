#include "ldlg/valuation.hpp"

#include <algorithm>
#include <cctype>
#include <stdexcept>

namespace ldlg {

namespace {

std::string_view trim(std::string_view s)
{
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    return s;
}

std::vector<std::string_view> split(std::string_view s, char sep)
{
    std::vector<std::string_view> out;
    std::size_t start = 0;
    for (;;) {
        auto pos = s.find(sep, start);
        if (pos == std::string_view::npos) {
            out.push_back(s.substr(start));
            return out;
        }
        out.push_back(s.substr(start, pos - start));
        start = pos + 1;
    }
}

} // namespace

Vocabulary::Vocabulary(std::vector<std::string> names)
{
    for (auto& n : names) add(n);
}

int Vocabulary::add(const std::string& name)
{
    if (auto i = index(name)) return *i;
    if (size() >= kMaxVariables)
        throw std::length_error("vocabulary limited to " + std::to_string(kMaxVariables) + " variables");
    names_.push_back(name);
    return size() - 1;
}

std::optional<int> Vocabulary::index(std::string_view name) const
{
    for (int i = 0; i < size(); ++i)
        if (names_[i] == name) return i;
    return std::nullopt;
}

Valuation Vocabulary::valuation(const std::vector<std::string>& names) const
{
    Valuation v;
    for (auto& n : names) {
        auto i = index(n);
        if (!i) throw std::invalid_argument("unknown variable '" + n + "'");
        v = v.with(*i);
    }
    return v;
}

std::string Vocabulary::format(Valuation v) const
{
    std::vector<std::string> present;
    for (int i = 0; i < size(); ++i)
        if (v.contains(i)) present.push_back(names_[i]);
    std::sort(present.begin(), present.end());
    std::string out;
    for (auto& n : present) {
        if (!out.empty()) out += ',';
        out += n;
    }
    return out;
}

Valuation Vocabulary::parse(std::string_view text) const
{
    text = trim(text);
    if (text.size() >= 2 && text.front() == '{' && text.back() == '}')
        text = trim(text.substr(1, text.size() - 2));
    Valuation v;
    if (text.empty()) return v;
    for (auto part : split(text, ',')) {
        part = trim(part);
        if (part.empty()) continue;
        auto i = index(part);
        if (!i) throw std::invalid_argument("unknown variable '" + std::string(part) + "'");
        v = v.with(*i);
    }
    return v;
}

Valuation Lasso::at(std::size_t k) const
{
    if (k < prefix.size()) return prefix[k];
    return loop[(k - prefix.size()) % loop.size()];
}

Trace Lasso::unroll(std::size_t n) const
{
    Trace out;
    out.reserve(n);
    for (std::size_t k = 0; k < n; ++k) out.push_back(at(k));
    return out;
}

Trace parse_trace(const Vocabulary& vocab, std::string_view text)
{
    Trace out;
    if (trim(text).empty()) return out;
    for (auto part : split(text, ';')) out.push_back(vocab.parse(part));
    return out;
}

Lasso parse_lasso(const Vocabulary& vocab, std::string_view text)
{
    auto bar = text.find('|');
    if (bar == std::string_view::npos) throw std::invalid_argument("lasso needs 'prefix | loop'");
    Lasso l{parse_trace(vocab, text.substr(0, bar)), {}};
    auto loop_text = text.substr(bar + 1);
    // An all-blank loop still denotes one empty valuation.
    l.loop = trim(loop_text).empty() ? Trace{Valuation{}} : parse_trace(vocab, loop_text);
    return l;
}

std::string format_trace(const Vocabulary& vocab, const Trace& trace)
{
    std::string out;
    for (std::size_t i = 0; i < trace.size(); ++i) {
        if (i) out += "; ";
        out += "{" + vocab.format(trace[i]) + "}";
    }
    return out;
}

std::string format_lasso(const Vocabulary& vocab, const Lasso& lasso)
{
    return format_trace(vocab, lasso.prefix) + " | " + format_trace(vocab, lasso.loop);
}

} // namespace ldlg
