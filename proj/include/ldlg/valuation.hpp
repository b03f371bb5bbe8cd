#pragma once

#include <compare>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace ldlg {

/// A set of propositional variables, stored as a bitmask over a Vocabulary.
/// Bit i is set iff the i-th variable of the vocabulary is true.
class Valuation {
public:
    constexpr Valuation() = default;
    constexpr explicit Valuation(std::uint32_t bits) : bits_(bits) {}

    constexpr std::uint32_t bits() const { return bits_; }
    constexpr bool contains(int var) const { return (bits_ >> var) & 1u; }
    constexpr bool empty() const { return bits_ == 0; }

    constexpr Valuation with(int var) const { return Valuation(bits_ | (1u << var)); }
    constexpr Valuation without(int var) const { return Valuation(bits_ & ~(1u << var)); }

    constexpr Valuation operator|(Valuation o) const { return Valuation(bits_ | o.bits_); }
    constexpr Valuation operator&(Valuation o) const { return Valuation(bits_ & o.bits_); }
    constexpr Valuation operator-(Valuation o) const { return Valuation(bits_ & ~o.bits_); }
    constexpr bool subset_of(Valuation o) const { return (bits_ & ~o.bits_) == 0; }

    constexpr auto operator<=>(const Valuation&) const = default;

private:
    std::uint32_t bits_ = 0;
};

/// Ordered set of variable names. The index of a name is its bit position.
class Vocabulary {
public:
    static constexpr int kMaxVariables = 16;

    Vocabulary() = default;
    explicit Vocabulary(std::vector<std::string> names);

    /// Appends a variable if absent; returns its index.
    int add(const std::string& name);
    std::optional<int> index(std::string_view name) const;
    const std::string& name(int i) const { return names_[i]; }
    const std::vector<std::string>& names() const { return names_; }
    int size() const { return static_cast<int>(names_.size()); }

    /// Number of letters of the alphabet 2^vars.
    std::uint32_t alphabet_size() const { return 1u << names_.size(); }
    Valuation full() const { return Valuation(alphabet_size() - 1); }

    /// Valuation from a list of names. Throws std::invalid_argument on unknown names.
    Valuation valuation(const std::vector<std::string>& names) const;

    /// Comma-separated, name-sorted variable list ("" for the empty set).
    std::string format(Valuation v) const;
    /// Parses a comma-separated variable list; surrounding braces are optional.
    Valuation parse(std::string_view text) const;

    bool operator==(const Vocabulary&) const = default;

private:
    std::vector<std::string> names_;
};

using Trace = std::vector<Valuation>;

/// Ultimately periodic infinite word prefix . loop^omega.
struct Lasso {
    Trace prefix;
    Trace loop;

    std::size_t length() const { return prefix.size() + loop.size(); }
    /// Letter at position k of the infinite word.
    Valuation at(std::size_t k) const;
    /// First n letters of the infinite word.
    Trace unroll(std::size_t n) const;

    bool operator==(const Lasso&) const = default;
};

/// "u1; ; d1" -> <{u1}, {}, {d1}>. The empty string is the empty trace.
Trace parse_trace(const Vocabulary& vocab, std::string_view text);
/// "prefix | loop"; the loop must be nonempty.
Lasso parse_lasso(const Vocabulary& vocab, std::string_view text);

std::string format_trace(const Vocabulary& vocab, const Trace& trace);
std::string format_lasso(const Vocabulary& vocab, const Lasso& lasso);

} // namespace ldlg
