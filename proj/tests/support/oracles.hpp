#pragma once
// Brute-force reference implementations written straight from the
// definitions. They share only the Term data type with the library.

#include <algorithm>
#include <functional>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "adhesia/term.hpp"

namespace oracle {

using adhesia::AtomSet;
using adhesia::Term;

// ---------------------------------------------------------------------------
// Superpower sets

/// Smallest set containing M and closed under taking subsets of itself.
inline bool in_ppa(const Term& t, const AtomSet& M) {
    if (t.is_atom()) return M.contains(t.name());
    if (!t.is_set()) return false;
    for (const Term& x : t.children())
        if (!in_ppa(x, M)) return false;
    return true;
}

/// Smallest set containing Pot(M) and closed under taking subsets of itself.
inline bool in_ppb(const Term& t, const AtomSet& M) {
    if (!t.is_set()) return false;
    const auto kids = t.children();
    const bool subset_of_m =
        std::all_of(kids.begin(), kids.end(), [&](const Term& x) { return x.is_atom() && M.contains(x.name()); });
    const bool subset_of_ppb = std::all_of(kids.begin(), kids.end(), [&](const Term& x) { return in_ppb(x, M); });
    return subset_of_m || subset_of_ppb;
}

/// Levels k with t in Pot^k(M), capped.
inline std::set<int> potom_levels(const Term& t, const AtomSet& M, int cap = 12) {
    if (t.is_atom()) return M.contains(t.name()) ? std::set<int>{0} : std::set<int>{};
    if (!t.is_set()) return {};
    std::set<int> common;
    for (int k = 0; k < cap; ++k) common.insert(k);
    for (const Term& x : t.children()) {
        std::set<int> keep;
        const auto lv = potom_levels(x, M, cap);
        std::set_intersection(common.begin(), common.end(), lv.begin(), lv.end(), std::inserter(keep, keep.end()));
        common = std::move(keep);
    }
    std::set<int> out;
    for (int k : common)
        if (k + 1 < cap) out.insert(k + 1);
    return out;
}

inline bool in_potom(const Term& t, const AtomSet& M) { return !potom_levels(t, M).empty(); }

/// All subsets of `pool` with at most `width` members.
inline std::vector<Term> small_subsets(const std::vector<Term>& pool, std::size_t width) {
    std::vector<Term> out;
    std::vector<Term> cur;
    std::function<void(std::size_t)> go = [&](std::size_t i) {
        if (i == pool.size()) {
            out.push_back(Term::set(cur));
            return;
        }
        go(i + 1);
        if (cur.size() < width) {
            cur.push_back(pool[i]);
            go(i + 1);
            cur.pop_back();
        }
    };
    go(0);
    return out;
}

/// PPa(M) terms of depth <= depth and width <= width, by repeated subset
/// closure from the atoms.
inline std::vector<Term> ppa_terms(const AtomSet& M, std::size_t depth, std::size_t width) {
    std::set<Term> all;
    for (const auto& a : M) all.insert(Term::atom(a));
    for (std::size_t d = 0; d < depth; ++d) {
        const std::vector<Term> pool(all.begin(), all.end());
        for (const Term& s : small_subsets(pool, width)) all.insert(s);
    }
    return {all.begin(), all.end()};
}

// ---------------------------------------------------------------------------
// Functor action: atoms of M go through f, sets are mapped memberwise.

inline Term map_term(const Term& t, const std::map<std::string, std::string>& f) {
    if (t.is_atom()) return Term::atom(f.at(t.name()));
    std::vector<Term> xs;
    for (const Term& x : t.children()) xs.push_back(map_term(x, f));
    if (t.is_set()) return Term::set(std::move(xs));
    if (t.is_pair()) return Term::pair(xs[0], xs[1]);
    if (t.is_seq()) return Term::seq(std::move(xs));
    return t;
}

// ---------------------------------------------------------------------------
// Finite limits by counting

using Fn = std::map<std::string, std::string>;

inline std::size_t pullback_size(const Fn& f, const Fn& g) {
    std::size_t n = 0;
    for (const auto& [b, x] : f)
        for (const auto& [c, y] : g) n += x == y;
    return n;
}

/// Number of classes of B + C under the equivalence generated by f(a) ~ g(a).
inline std::size_t pushout_size(const std::vector<std::string>& A, const std::vector<std::string>& B,
                                const std::vector<std::string>& C, const Fn& f, const Fn& g) {
    std::vector<std::string> all;
    for (const auto& b : B) all.push_back("B:" + b);
    for (const auto& c : C) all.push_back("C:" + c);
    const std::size_t n = all.size();
    std::vector<std::vector<bool>> rel(n, std::vector<bool>(n, false));
    auto idx = [&](const std::string& s) { return std::find(all.begin(), all.end(), s) - all.begin(); };
    for (std::size_t i = 0; i < n; ++i) rel[i][i] = true;
    for (const auto& a : A) {
        const auto i = idx("B:" + f.at(a)), j = idx("C:" + g.at(a));
        rel[i][j] = rel[j][i] = true;
    }
    for (std::size_t k = 0; k < n; ++k)
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j)
                if (rel[i][k] && rel[k][j]) rel[i][j] = true;
    std::size_t classes = 0;
    for (std::size_t i = 0; i < n; ++i) {
        bool first = true;
        for (std::size_t j = 0; j < i; ++j) first = first && !rel[i][j];
        classes += first;
    }
    return classes;
}

/// Every function dom -> cod.
inline std::vector<Fn> all_functions(const std::vector<std::string>& dom, const std::vector<std::string>& cod) {
    std::vector<Fn> out{Fn{}};
    for (const auto& x : dom) {
        std::vector<Fn> next;
        for (const auto& f : out)
            for (const auto& y : cod) {
                Fn g = f;
                g[x] = y;
                next.push_back(std::move(g));
            }
        out = std::move(next);
    }
    return out;
}

inline bool injective(const Fn& f) {
    std::set<std::string> seen;
    for (const auto& [x, y] : f)
        if (!seen.insert(y).second) return false;
    return true;
}

// ---------------------------------------------------------------------------
// Flattening by naive iteration to a fixpoint.

inline void collect_atoms(const Term& t, AtomSet& out) {
    if (t.is_atom()) out.insert(t.name());
    for (const Term& x : t.children()) collect_atoms(x, out);
}

inline std::map<std::string, AtomSet> flatten(const std::map<std::string, Term>& st, const AtomSet& nodes) {
    std::map<std::string, AtomSet> out;
    for (const auto& [e, t] : st) out[e];
    for (bool changed = true; changed;) {
        changed = false;
        for (const auto& [e, t] : st) {
            AtomSet next = out[e];
            AtomSet mentioned;
            collect_atoms(t, mentioned);
            for (const auto& a : mentioned) {
                if (nodes.contains(a)) next.insert(a);
                else if (out.contains(a)) next.insert(out[a].begin(), out[a].end());
            }
            if (next != out[e]) {
                out[e] = std::move(next);
                changed = true;
            }
        }
    }
    return out;
}

}  // namespace oracle
