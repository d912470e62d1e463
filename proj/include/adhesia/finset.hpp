#pragma once

#include <initializer_list>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "adhesia/term.hpp"

namespace adhesia {

/// Finite set of atom names, kept sorted and duplicate-free.
class FinSet {
public:
    FinSet() = default;
    FinSet(std::initializer_list<AtomId> elems);
    explicit FinSet(std::vector<AtomId> elems);
    explicit FinSet(const AtomSet& elems);

    bool contains(const AtomId& x) const;
    std::size_t size() const noexcept { return elems_.size(); }
    bool empty() const noexcept { return elems_.empty(); }
    const std::vector<AtomId>& elements() const noexcept { return elems_; }
    auto begin() const noexcept { return elems_.begin(); }
    auto end() const noexcept { return elems_.end(); }
    AtomSet to_atom_set() const { return AtomSet(elems_.begin(), elems_.end()); }

    friend bool operator==(const FinSet&, const FinSet&) = default;

private:
    std::vector<AtomId> elems_;
};

FinSet set_union(const FinSet& a, const FinSet& b);
FinSet set_difference(const FinSet& a, const FinSet& b);
bool disjoint(const FinSet& a, const FinSet& b);

/// Total function between finite sets.
class FinFunction {
public:
    FinFunction() = default;
    /// Throws InvalidInput unless `table` assigns exactly the elements of
    /// `dom` to elements of `cod`.
    FinFunction(FinSet dom, FinSet cod, std::map<AtomId, AtomId> table);

    static FinFunction identity(const FinSet& s);
    /// Inclusion of `sub` into `super`; throws InvalidInput if not a subset.
    static FinFunction inclusion(const FinSet& sub, const FinSet& super);
    static FinFunction empty_into(const FinSet& cod) { return {{}, cod, {}}; }

    const FinSet& dom() const noexcept { return dom_; }
    const FinSet& cod() const noexcept { return cod_; }
    const std::map<AtomId, AtomId>& table() const noexcept { return table_; }

    /// Throws UnknownAtom for arguments outside the domain.
    const AtomId& operator()(const AtomId& x) const;

    bool is_injective() const;
    bool is_surjective() const;
    bool is_bijective() const { return is_injective() && is_surjective(); }
    FinSet image() const;
    /// Inverse of a bijection; throws NotInjective otherwise.
    FinFunction inverse() const;

    friend bool operator==(const FinFunction&, const FinFunction&) = default;

private:
    FinSet dom_;
    FinSet cod_;
    std::map<AtomId, AtomId> table_;
};

/// g after f. Throws DomainMismatch unless cod(f) = dom(g).
FinFunction compose(const FinFunction& g, const FinFunction& f);

/// Canonical name of the pullback element (b, c).
std::string pair_name(const AtomId& b, const AtomId& c);

struct FinPullback {
    FinSet apex;
    FinFunction to_b;  ///< projection A -> B
    FinFunction to_c;  ///< projection A -> C
};

/// Pullback of f: B -> D and g: C -> D as the set of pairs (b,c) with
/// f(b) = g(c). Throws CodomainMismatch when the codomains differ.
FinPullback pullback(const FinFunction& f, const FinFunction& g);

/// Mediating map X -> A of a comparison cone p: X -> B, q: X -> C.
/// Throws InvalidInput if the cone does not commute over the cospan.
FinFunction induced_into_pullback(const FinPullback& pb, const FinFunction& f, const FinFunction& g,
                                  const FinFunction& p, const FinFunction& q);

struct FinPushout {
    FinSet apex;
    FinFunction from_b;  ///< injection B -> D
    FinFunction from_c;  ///< injection C -> D
};

/// Pushout of f: A -> B and g: A -> C as (B + C)/~. A class keeps the name of
/// its unique B member, else of its unique C member, else is named
/// "cls{...}"; clashes are resolved by appending primes, B-side first.
/// Throws DomainMismatch when the domains differ.
FinPushout pushout(const FinFunction& f, const FinFunction& g);

/// Mediating map D -> X of a cocone p: B -> X, q: C -> X. Throws
/// InvalidInput if the cocone does not agree on some class.
FinFunction induced_from_pushout(const FinPushout& po, const FinFunction& p, const FinFunction& q);

struct FinComplement {
    FinSet apex;             ///< D
    FinFunction from_iface;  ///< A -> D
    FinFunction to_host;     ///< D -> G (inclusion)
};

/// Pushout complement of injective l: A -> B and m: B -> G:
/// D = G minus m(B minus l(A)). Throws NotInjective or DomainMismatch.
FinComplement pushout_complement(const FinFunction& l, const FinFunction& m);

/// Coproduct as a pushout over the empty set.
FinPushout coproduct(const FinSet& a, const FinSet& b);

/// Cartesian product as a pullback over a one-element set.
FinPullback product(const FinSet& a, const FinSet& b);

/// Whether p: X -> B, q: X -> C is a pullback of f: B -> D, g: C -> D, i.e.
/// the mediating map into the canonical pullback is a bijection.
bool is_pullback_square(const FinFunction& p, const FinFunction& q, const FinFunction& f,
                        const FinFunction& g);

/// Whether p: B -> X, q: C -> X is a pushout of f: A -> B, g: A -> C.
bool is_pushout_square(const FinFunction& f, const FinFunction& g, const FinFunction& p,
                       const FinFunction& q);

/// Some bijection a -> b if the sizes agree (sorted order pairing).
std::optional<FinFunction> any_bijection(const FinSet& a, const FinSet& b);

}  // namespace adhesia
