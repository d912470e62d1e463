#include "doctest.h"
#include "support/printing.hpp"

#include "adhesia/encodings.hpp"
#include "adhesia/error.hpp"
#include "adhesia/serialize.hpp"
#include "support/oracles.hpp"

using namespace adhesia;

namespace {

ErrorCode code_of(const std::function<void()>& f) {
    try {
        f();
    } catch (const Error& e) {
        return e.code();
    }
    FAIL("no error raised");
    return ErrorCode::InvalidInput;
}

bool oracle_member(const Term& t, const AtomSet& M, const Flavor& fl) {
    switch (fl.kind) {
        case Flavor::Kind::PPa: return oracle::in_ppa(t, M);
        case Flavor::Kind::PPb: return oracle::in_ppb(t, M);
        case Flavor::Kind::PotOm: return oracle::in_potom(t, M);
        default: FAIL("unexpected flavor"); return false;
    }
}

const std::map<std::string, std::string> kRows{{"G1", "ex.ppa.G1"},   {"G2", "ex.ppa.G2"},
                                               {"G3", "ex.ppb.G3"},   {"G4", "ex.ppb.G4"},
                                               {"G5", "ex.potom.G5"}, {"G6", "ex.potom.G6"}};

}  // namespace

TEST_CASE("preset signatures") {
    CHECK(preset(EncodingKind::bigraph()).to_string() == "(PPa(N), Pot(N + E) * Pot(N + E))");
    CHECK(preset(EncodingKind::palacz()).to_string() == "(PPa(N + E), Pot(N) * PPa(N + E))");
    CHECK(preset(EncodingKind::grouping()).to_string() == "(PPa(N), N * N * PPa(E))");
    CHECK(preset(EncodingKind::dhp()).to_string() == "(1, Star(N) * PotOm(N))");
    CHECK(preset(EncodingKind::bkk(FunctorExpr::prod(FunctorExpr::sort_n(), FunctorExpr::sort_n()))).to_string() ==
          "(PPa(N), N * N)");
    CHECK(preset(EncodingKind::multi_hierarchy(2)).to_string() == "(Copy2(PPa(N + E)), Pot(N))");
    CHECK(code_of([] { EncodingKind::multi_hierarchy(0); }) == ErrorCode::InvalidInput);
}

TEST_CASE("encoding names round-trip") {
    for (const char* name : {"ppa-comma", "bkk", "dhp", "palacz", "multi3", "bigraph", "grouping"}) {
        CHECK(EncodingKind::parse(name).to_string() == name);
    }
    CHECK(EncodingKind::parse("multi3").copies == 3);
    CHECK(code_of([] { EncodingKind::parse("multi"); }) == ErrorCode::InvalidInput);
    CHECK(code_of([] { EncodingKind::parse("hypergraph"); }) == ErrorCode::InvalidInput);
}

TEST_CASE("every graph fixture is valid") {
    const auto names = fixture_names();
    CHECK(std::is_sorted(names.begin(), names.end()));
    CHECK(names.size() == 20);
    for (const auto& name : names) {
        CAPTURE(name);
        const FixtureValue v = fixture(name);
        if (const auto* G = std::get_if<CoalgGraph>(&v)) CHECK(validate_graph(*G).empty());
        if (const auto* r = std::get_if<Rule>(&v)) CHECK_NOTHROW(validate_rule(*r));
    }
    CHECK(code_of([] { fixture("nope"); }) == ErrorCode::UnknownFixture);
    CHECK(code_of([] { fixture_graph("fig6.rule"); }) == ErrorCode::InvalidInput);
}

TEST_CASE("encoding side conditions hold on their examples") {
    const std::vector<std::pair<std::string, EncodingKind>> cases{
        {"fig3.bkk", EncodingKind::bkk(FunctorExpr::prod(FunctorExpr::sort_n(), FunctorExpr::sort_n()))},
        {"fig4.dhp", EncodingKind::dhp()},
        {"fig5.palacz", EncodingKind::palacz()},
        {"fig7.bigraph", EncodingKind::bigraph()},
        {"multi.example", EncodingKind::multi_hierarchy(2)},
        {"grouping.example", EncodingKind::grouping()},
    };
    for (const auto& [name, kind] : cases) {
        CAPTURE(name);
        const EncodingReport r = validate_encoding(fixture_graph(name), kind);
        CHECK(r.ok);
        CHECK(r.violations.empty());
    }
    CHECK(code_of([] { validate_encoding(fixture_graph("fig3.bkk"), EncodingKind::palacz()); }) ==
          ErrorCode::SignatureMismatch);
}

TEST_CASE("BKK completeness catches an orphaned node") {
    CoalgGraph G = fixture_graph("fig3.bkk");
    G.node.at("p2") = parse_term("{n}");
    const EncodingReport r =
        validate_encoding(G, EncodingKind::bkk(FunctorExpr::prod(FunctorExpr::sort_n(), FunctorExpr::sort_n())));
    CHECK_FALSE(r.ok);
    REQUIRE(r.violations.size() == 1);
    CHECK(r.violations[0].rule == "completeness");
    CHECK(r.violations[0].element == "m");
}

TEST_CASE("containment cycles break well-foundedness") {
    CoalgGraph G = fixture_graph("fig5.palacz");
    G.node.at("11") = parse_term("{8, 9, 3}");
    G.node.at("3") = parse_term("{1, 2, 4, 11}");
    const EncodingReport r = validate_encoding(G, EncodingKind::palacz());
    CHECK_FALSE(r.ok);
    bool cyclic = false;
    for (const auto& v : r.violations) cyclic = cyclic || v.rule == "well_founded";
    CHECK(cyclic);
}

TEST_CASE("shared children break hierarchy") {
    CoalgGraph G = fixture_graph("fig5.palacz");
    G.node.at("11") = parse_term("{8, 9, 1}");
    const EncodingReport r = validate_encoding(G, EncodingKind::palacz());
    CHECK_FALSE(r.ok);
    bool shared = false;
    for (const auto& v : r.violations) shared = shared || v.rule == "hierarchical";
    CHECK(shared);
}

TEST_CASE("fixture spot values") {
    const CoalgGraph g2 = fixture_graph("motiv.G2");
    CHECK(g2.st_of("x3") == parse_term("{d, x2}"));
    CHECK(g2.st_of("x4") == parse_term("{a, x4}"));
    const CoalgGraph bigraph = fixture_graph("fig7.bigraph");
    CHECK(bigraph.node_of("𝟎") == parse_term("{v0, v2}"));
    const CoalgGraph palacz = fixture_graph("fig5.palacz");
    CHECK(palacz.node_of("3") == parse_term("{1, 2, 4}"));
    CHECK(palacz.st_of("7") == parse_term("({3, 6, 11}, {})"));
}

TEST_CASE("membership matrix matches independent membership checks") {
    const MembershipMatrix m = membership_matrix();
    CHECK(m.cells.size() == 18);
    std::vector<std::string> disagreements;
    for (const auto& cell : m.cells) {
        CAPTURE(cell.graph);
        CAPTURE(cell.flavor.to_string());
        const CoalgGraph G = fixture_graph(kRows.at(cell.graph));
        const AtomSet M(G.N.begin(), G.N.end());
        std::vector<AtomId> failing;
        for (const auto& e : G.E)
            if (!oracle_member(G.st_of(e), M, cell.flavor)) failing.push_back(e);
        CHECK(cell.failing_edges == failing);
        CHECK(cell.strict == failing.empty());
        if (cell.strict != cell.expected) disagreements.push_back(cell.graph + "/" + cell.flavor.to_string());
    }
    CHECK(m.discrepancies == disagreements);
    CHECK(m.discrepancies == std::vector<std::string>{"G2/PPb", "G3/PPb", "G4/PPb", "G5/PPb", "G6/PotOm"});

    CHECK(m.facts.size() == 7);
    for (const auto& fact : m.facts) {
        CAPTURE(fact.label);
        CHECK(fact.holds == fact.expected);
        CHECK(fact.holds == oracle_member(fact.term, fact.universe, fact.flavor));
    }
}
