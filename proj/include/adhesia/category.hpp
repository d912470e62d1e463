#pragma once

#include <optional>
#include <string>
#include <vector>

#include "adhesia/graph.hpp"
#include "adhesia/limits.hpp"

namespace adhesia {

struct GraphPullback {
    CoalgGraph apex;
    SortedFunction to_b;
    SortedFunction to_c;
    /// Filled only when preservation checking was requested and failed.
    std::vector<std::string> warnings;
};

/// Pullback of f: B -> D along an injective g: C -> D. Carriers are pulled
/// back sortwise; structure maps come from inverse_hbar. With
/// `check_preservation`, both signature functors are first tested for
/// pullback preservation along monos on this cospan, and failures are
/// reported as warnings. Throws NonInjectiveLeg or SignatureMismatch.
GraphPullback coalg_pullback(const GraphMorphism& f, const GraphMorphism& g,
                             bool check_preservation = false,
                             const EnumBounds& bounds = {});

struct GraphPushout {
    CoalgGraph apex;
    SortedFunction from_b;
    SortedFunction from_c;
};

/// Pushout of an injective f: A -> B and any g: A -> C. Names follow the
/// carrier pushout, so B's names survive. Throws NotInM, SignatureMismatch,
/// or StructureClash if glued elements induce different structure.
GraphPushout coalg_pushout(const GraphMorphism& f, const GraphMorphism& g);

/// Mediating homomorphism from a pushout into a cocone p: B -> X, q: C -> X.
SortedFunction induced_from_pushout(const GraphPushout& po, const SortedFunction& p,
                                    const SortedFunction& q);

/// Whether p: B -> X, q: C -> X is a pushout of f: A -> B, g: A -> C in the
/// coalgebra category (one of f, g must be injective).
bool is_pushout(const GraphMorphism& f, const GraphMorphism& g, const GraphMorphism& p,
                const GraphMorphism& q);

/// Whether p: X -> B, q: X -> C is a pullback of f: B -> D, g: C -> D (one of
/// f, g must be injective).
bool is_pullback(const GraphMorphism& p, const GraphMorphism& q, const GraphMorphism& f,
                 const GraphMorphism& g);

/// Commutative cube over a bottom square. Top: m': A'->B', f': A'->C',
/// g': B'->D', n': C'->D'. Bottom: m, f, g, n likewise. Verticals a, b, c, d
/// go from the primed graphs down.
struct VkCube {
    CoalgGraph A1, B1, C1, D1;  ///< A', B', C', D'
    CoalgGraph A, B, C, D;
    SortedFunction m1, f1, g1, n1;  ///< top
    SortedFunction m, f, g, n;      ///< bottom
    SortedFunction a, b, c, d;      ///< verticals
};

struct VkVerdict {
    bool top_is_pushout = false;
    bool fronts_are_pullbacks = false;
    bool biconditional_holds = false;
};

/// Validates the cube (homomorphisms, commuting faces, injective verticals,
/// bottom pushout, back pullbacks; MalformedCube names the first violation)
/// and evaluates both sides of the biconditional independently.
VkVerdict vk_cube_check(const VkCube& cube);

std::vector<VkVerdict> vk_cube_check_batch(const std::vector<VkCube>& cubes,
                                           Exec exec = Exec::Parallel);

/// Sample for the M-class suite.
struct MSample {
    enum class Kind {
        Span,    ///< first: A -> B in M, second: A -> C; the pushout leg C -> D must be in M
        Cospan,  ///< first: B -> D, second: C -> D in M; the pullback leg A -> B must be in M
        Chain,   ///< first: A -> B, second: B -> C, both in M; the composite must be in M
    };
    Kind kind;
    GraphMorphism first;
    GraphMorphism second;
};

struct MClassReport {
    bool stable_under_pushout = true;
    bool stable_under_pullback = true;
    bool closed_under_composition = true;
    bool contains_identities = true;
    std::vector<std::string> witnesses;
    std::size_t samples = 0;
};

MClassReport m_class_suite(const std::vector<MSample>& samples);

}  // namespace adhesia
