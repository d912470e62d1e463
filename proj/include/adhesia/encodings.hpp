#pragma once

#include <string>
#include <variant>
#include <vector>

#include "adhesia/dpo.hpp"
#include "adhesia/limits.hpp"

namespace adhesia {

struct EncodingKind {
    enum class Tag { PPaComma, BKK, DHP, Palacz, MultiHierarchy, Bigraph, Grouping };

    Tag tag = Tag::PPaComma;
    FunctorExpr funH = FunctorExpr::prod(FunctorExpr::sort_n(), FunctorExpr::sort_n());  ///< BKK only
    unsigned copies = 1;                                                                ///< MultiHierarchy only

    static EncodingKind ppa_comma() { return {Tag::PPaComma}; }
    static EncodingKind bkk(FunctorExpr funH);
    static EncodingKind dhp() { return {Tag::DHP}; }
    static EncodingKind palacz() { return {Tag::Palacz}; }
    /// Throws InvalidInput for n = 0.
    static EncodingKind multi_hierarchy(unsigned n);
    static EncodingKind bigraph() { return {Tag::Bigraph}; }
    static EncodingKind grouping() { return {Tag::Grouping}; }

    /// Names accepted by parse: ppa-comma, bkk, dhp, palacz, multi<n>, bigraph, grouping.
    static EncodingKind parse(const std::string& name);
    std::string to_string() const;
};

Signature preset(const EncodingKind& kind);

struct EncodingViolation {
    std::string rule;
    std::string element;
};

struct EncodingReport {
    bool ok = true;
    std::vector<EncodingViolation> violations;
};

/// Side conditions of the encoding on top of validate_graph. Throws
/// SignatureMismatch when G is not over preset(kind).
EncodingReport validate_encoding(const CoalgGraph& G, const EncodingKind& kind);

/// Frozen example data. Graph fixtures validate under their signature.
using FixtureValue = std::variant<CoalgGraph, Rule, Cospan>;

std::vector<std::string> fixture_names();
/// Throws UnknownFixture.
FixtureValue fixture(const std::string& name);
/// Throws UnknownFixture, or InvalidInput when the fixture is not a graph.
CoalgGraph fixture_graph(const std::string& name);

/// Complete binary tree of the given depth on nodes "0".."2^(depth+1)-2" over
/// (PotFin(N), 1), extended by s with contents {0} and u with contents {u, last leaf}.
CoalgGraph tree_graph(unsigned depth);
/// Replaces s (contents {0}) by t (contents {1, 2}) while keeping the tree.
Rule tree_rule(unsigned depth);

struct MembershipCell {
    std::string graph;
    Flavor flavor;
    bool strict = false;
    bool expected = false;
    std::vector<AtomId> failing_edges;
};

struct MembershipFact {
    std::string label;
    Term term;
    AtomSet universe;
    Flavor flavor;
    bool expected = false;
    bool holds = false;
};

struct MembershipMatrix {
    std::vector<MembershipCell> cells;
    std::vector<MembershipFact> facts;
    /// "graph/flavor" for every cell where strict != expected.
    std::vector<std::string> discrepancies;
};

MembershipMatrix membership_matrix();

}  // namespace adhesia
