#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "adhesia/functor.hpp"
#include "adhesia/parallel.hpp"

namespace adhesia {

/// f: B -> D and g: C -> D on both sorts. One-sorted cospans leave the edge
/// components empty.
struct Cospan {
    SortedFunction f;
    SortedFunction g;
};

/// Carrier-level pullback of a cospan, sortwise.
struct SortedPullback {
    CarrierEnv apex;
    SortedFunction to_b;
    SortedFunction to_c;
};

/// Throws CodomainMismatch when the legs do not share a codomain.
SortedPullback carrier_pullback(const Cospan& cs);

/// P = {(X, Y) in F(B) x F(C) | F(f)(X) = F(g)(Y)} over the enumerated
/// fragments, each element encoded as Term::pair(X, Y), canonically sorted.
std::vector<Term> functor_pullback(const FunctorExpr& F, const Cospan& cs,
                                   const EnumBounds& bounds = {});

/// h(t) = (F(piB)(t), F(piC)(t)). Throws NotAnElement unless t is in F(A).
Term comparison_h(const FunctorExpr& F, const Cospan& cs, const Term& t);

/// The inverse comparison map: atom pairs become pair atoms, products,
/// sequences and coproducts recurse componentwise, and a pair of sets maps to
/// the set of images of matching member pairs. For Pot this is (X x Y) n A.
/// Throws NonInjectiveLeg unless g is injective and NotInPullback unless
/// F(f)(X) = F(g)(Y).
Term inverse_hbar(const FunctorExpr& F, const Cospan& cs, const Term& x, const Term& y);

enum class PreservationMode { Ordinary, AlongMonos, Weak };

std::string to_string(PreservationMode mode);
/// Accepts "ordinary", "monos" or "weak"; throws InvalidInput otherwise.
PreservationMode parse_mode(const std::string& text);

struct PreservationWitness {
    enum class Kind { Unhit, Merged };
    Kind kind;
    /// Unhit: the missed element of P. Merged: two elements of F(A) with the
    /// same image under h.
    std::vector<Term> terms;
};

struct PreservationVerdict {
    bool holds = true;
    std::optional<PreservationWitness> witness;
    std::size_t size_FA = 0;
    std::size_t size_P = 0;
};

/// Ordinary and AlongMonos: h is a bijection F(A) -> P within the bounds.
/// Weak: h is onto P. AlongMonos throws NonInjectiveLeg when g is not
/// injective. The witness is the first failure in canonical order.
PreservationVerdict check_pb_preservation(const FunctorExpr& F, const Cospan& cs,
                                          const EnumBounds& bounds, PreservationMode mode);

/// Verdicts for many cospans; the result does not depend on `exec`.
std::vector<PreservationVerdict> check_pb_preservation_batch(const FunctorExpr& F,
                                                             const std::vector<Cospan>& cospans,
                                                             const EnumBounds& bounds,
                                                             PreservationMode mode,
                                                             Exec exec = Exec::Parallel);

}  // namespace adhesia
