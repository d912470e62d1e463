#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "adhesia/functor.hpp"
#include "adhesia/parallel.hpp"

namespace adhesia {

/// Codomains of the contains map (node) and the neighbour map (st).
struct Signature {
    FunctorExpr node;
    FunctorExpr st;

    static Signature parse(const std::string& node, const std::string& st);
    std::string to_string() const;
    friend bool operator==(const Signature&, const Signature&) = default;
};

/// G = (N, E, node: N -> F(N,E), st: E -> G(N,E)).
struct CoalgGraph {
    Signature sig;
    FinSet N;
    FinSet E;
    std::map<AtomId, Term> node;
    std::map<AtomId, Term> st;

    CarrierEnv env() const { return {N, E}; }
    const Term& node_of(const AtomId& n) const;
    const Term& st_of(const AtomId& e) const;

    friend bool operator==(const CoalgGraph&, const CoalgGraph&) = default;
};

struct ValidationIssue {
    std::string element;
    std::string reason;
};

/// Every carrier element whose structure image is missing or not in the
/// signature's functor, plus carrier-level problems (overlapping sorts,
/// tables with keys outside the carriers). Empty means valid.
std::vector<ValidationIssue> validate_graph(const CoalgGraph& G);

/// Throws InvalidInput listing the first issue if G is not valid.
void require_valid(const CoalgGraph& G);

struct GraphMorphism {
    CoalgGraph src;
    CoalgGraph dst;
    SortedFunction map;
};

struct MorphismCheck {
    bool ok = true;
    std::string witness;  ///< first element where a square fails
};

/// Both squares commute elementwise. Throws SignatureMismatch when the
/// signatures differ and DomainMismatch when the maps do not fit the carriers.
MorphismCheck check_morphism(const CoalgGraph& src, const SortedFunction& f, const CoalgGraph& dst);
inline MorphismCheck check_morphism(const GraphMorphism& m) {
    return check_morphism(m.src, m.map, m.dst);
}

GraphMorphism identity_morphism(const CoalgGraph& G);
/// Componentwise n after m; throws DomainMismatch if m.dst != n.src.
GraphMorphism compose(const GraphMorphism& n, const GraphMorphism& m);

/// All homomorphisms src -> dst (only injective ones if requested), sorted by
/// their node table and then their edge table.
std::vector<SortedFunction> all_morphisms(const CoalgGraph& src, const CoalgGraph& dst,
                                          bool injective, Exec exec = Exec::Serial);

/// Some isomorphism a -> b, if one exists.
std::optional<SortedFunction> find_isomorphism(const CoalgGraph& a, const CoalgGraph& b);
bool isomorphic(const CoalgGraph& a, const CoalgGraph& b);

/// Renames carriers along a bijection, rewriting structure maps.
CoalgGraph rename(const CoalgGraph& G, const SortedFunction& bijection);

/// st+ as the least fixpoint of st+(e) = nodes mentioned in st(e) together
/// with st+(x) for every edge x mentioned in st(e). Mentions are atoms at any
/// nesting level.
std::map<AtomId, AtomSet> flatten(const CoalgGraph& G);

struct NodeProperties {
    bool unique = true;
    AtomSet atoms;
    AtomSet containers;
    bool well_founded = true;
    bool acyclic = true;
    bool hierarchical = true;
};

/// Node properties. When the contains map yields Copy tuples, each
/// projection is evaluated and the boolean properties are conjoined; a node
/// is an atom if it is fixed in every projection and a container if some
/// projection is a set. Over a trivial contains map (1) every node is an atom.
NodeProperties node_properties(const CoalgGraph& G);

/// Node properties of a single Copy projection.
NodeProperties node_properties(const CoalgGraph& G, std::size_t component);

struct EdgeProperties {
    AtomSet atomic_edges;
    bool node_based = true;
    bool atomic = true;
    std::map<AtomId, AtomSet> flattened;
};

EdgeProperties edge_properties(const CoalgGraph& G);

/// Induced subgraph on the given carriers; throws InvalidInput when a kept
/// element refers to a dropped one.
CoalgGraph subgraph(const CoalgGraph& G, const FinSet& N, const FinSet& E);

}  // namespace adhesia
