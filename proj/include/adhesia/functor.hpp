#pragma once

#include <map>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "adhesia/finset.hpp"
#include "adhesia/term.hpp"

namespace adhesia {

enum class FunctorKind : std::uint8_t {
    SortN,   ///< node carrier
    SortE,   ///< edge carrier
    Id,      ///< one-sorted identity "X"; denotes the node carrier
    Final,   ///< the one-element set
    Flavor,  ///< Pot, PotFin, Pot[i,j], PPa, PPb or PotOm applied to an argument
    Prod,
    Coprod,
    Star,    ///< free monoid: finite sequences
    Copy,    ///< n-fold product of the argument with itself
};

/// Immutable syntax tree of an endofunctor on Sets or Sets x Sets.
class FunctorExpr {
public:
    FunctorExpr();  ///< Final

    static FunctorExpr sort_n();
    static FunctorExpr sort_e();
    static FunctorExpr id();
    static FunctorExpr final_();
    static FunctorExpr flavor(Flavor flavor, FunctorExpr arg);
    static FunctorExpr prod(FunctorExpr left, FunctorExpr right);
    static FunctorExpr coprod(FunctorExpr left, FunctorExpr right);
    static FunctorExpr star(FunctorExpr arg);
    static FunctorExpr copy(unsigned n, FunctorExpr arg);

    FunctorKind kind() const noexcept;
    const Flavor& flavor() const noexcept;
    unsigned copies() const noexcept;
    const FunctorExpr& arg() const;
    const FunctorExpr& left() const;
    const FunctorExpr& right() const;

    /// Whether the expression mentions the edge sort.
    bool uses_edges() const;

    std::string to_string() const;

    friend bool operator==(const FunctorExpr& a, const FunctorExpr& b);

private:
    struct Node;
    explicit FunctorExpr(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
    std::shared_ptr<const Node> node_;
};

/// Parses the concrete syntax: N, E, X, 1, Pot(..), PotFin(..), Pot[i,j](..),
/// PotDir(..), PPa(..), PPb(..), PotOm(..), Star(..), Copy2(..) and other copy counts, a * b,
/// a + b and parentheses. `*` binds tighter than `+`; both associate left.
/// Throws ParseError.
FunctorExpr parse_functor(std::string_view text);

/// The node and edge carriers a functor is applied to.
struct CarrierEnv {
    FinSet N;
    FinSet E;
};

/// A pair of functions on node and edge carriers.
struct SortedFunction {
    FinFunction fN;
    FinFunction fE;

    static SortedFunction identity(const CarrierEnv& env);
    CarrierEnv dom() const { return {fN.dom(), fE.dom()}; }
    CarrierEnv cod() const { return {fN.cod(), fE.cod()}; }
    bool is_injective() const { return fN.is_injective() && fE.is_injective(); }
    bool is_bijective() const { return fN.is_bijective() && fE.is_bijective(); }
    friend bool operator==(const SortedFunction&, const SortedFunction&) = default;
};

/// Componentwise g after f.
SortedFunction compose(const SortedFunction& g, const SortedFunction& f);

/// t in F(env). Products expect pairs, Star and Copy expect sequences,
/// coproducts accept a member of either side, Final accepts only the unit.
bool element_of(const FunctorExpr& F, const CarrierEnv& env, const Term& t);

/// The action F(f) on a single term: atoms are renamed through f and sets
/// rebuilt canonically. Total on terms whose atoms lie in dom(f); throws
/// UnknownAtom otherwise and NotAnElement on a shape mismatch (e.g. a set
/// where a pair is expected).
Term map_element(const FunctorExpr& F, const SortedFunction& f, const Term& t);

/// map_element with partial atom tables. `dom` decides coproduct sides; atoms
/// missing from the tables raise UnknownAtom.
Term map_element_partial(const FunctorExpr& F, const CarrierEnv& dom,
                         const std::map<AtomId, AtomId>& fN, const std::map<AtomId, AtomId>& fE,
                         const Term& t);

/// Every element of F(env) within the bounds, canonically sorted.
std::vector<Term> enumerate_functor(const FunctorExpr& F, const CarrierEnv& env,
                                    const EnumBounds& bounds = {});

}  // namespace adhesia
