#pragma once

#include <algorithm>

#include "ldlg/automata.hpp"

namespace ldlg::dnf {

inline Dnf truth() { return {Clause{}}; }
inline Dnf falsity() { return {}; }
inline Dnf constant(bool b) { return b ? truth() : falsity(); }
inline bool is_true(const Dnf& d) { return std::any_of(d.begin(), d.end(), [](const Clause& c) { return c.empty(); }); }

// Sorts clauses and drops duplicates and clauses subsumed by a smaller one.
inline Dnf normalize(Dnf d)
{
    std::sort(d.begin(), d.end(), [](const Clause& a, const Clause& b) {
        return a.size() != b.size() ? a.size() < b.size() : a < b;
    });
    d.erase(std::unique(d.begin(), d.end()), d.end());
    Dnf out;
    for (auto& c : d) {
        bool subsumed = std::any_of(out.begin(), out.end(), [&](const Clause& k) {
            return std::includes(c.begin(), c.end(), k.begin(), k.end());
        });
        if (!subsumed) out.push_back(std::move(c));
    }
    std::sort(out.begin(), out.end());
    return out;
}

inline Dnf disj(Dnf a, const Dnf& b)
{
    a.insert(a.end(), b.begin(), b.end());
    return normalize(std::move(a));
}

inline Dnf conj(const Dnf& a, const Dnf& b)
{
    Dnf out;
    for (const auto& x : a)
        for (const auto& y : b) {
            Clause c;
            std::set_union(x.begin(), x.end(), y.begin(), y.end(), std::back_inserter(c));
            out.push_back(std::move(c));
        }
    return normalize(std::move(out));
}

} // namespace ldlg::dnf
