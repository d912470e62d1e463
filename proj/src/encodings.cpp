#include "adhesia/encodings.hpp"

#include <algorithm>

#include "adhesia/error.hpp"
#include "adhesia/serialize.hpp"

namespace adhesia {

EncodingKind EncodingKind::bkk(FunctorExpr funH) {
    EncodingKind k{Tag::BKK};
    k.funH = std::move(funH);
    return k;
}

EncodingKind EncodingKind::multi_hierarchy(unsigned n) {
    if (n == 0) throw Error(ErrorCode::InvalidInput, "a multi-hierarchy needs at least one hierarchy");
    EncodingKind k{Tag::MultiHierarchy};
    k.copies = n;
    return k;
}

EncodingKind EncodingKind::parse(const std::string& name) {
    if (name == "ppa-comma") return ppa_comma();
    if (name == "bkk") return bkk(parse_functor("N * N"));
    if (name == "dhp") return dhp();
    if (name == "palacz") return palacz();
    if (name == "bigraph") return bigraph();
    if (name == "grouping") return grouping();
    if (name.rfind("multi", 0) == 0) {
        const std::string digits = name.substr(5);
        if (!digits.empty() && std::all_of(digits.begin(), digits.end(), ::isdigit)) {
            return multi_hierarchy(static_cast<unsigned>(std::stoul(digits)));
        }
    }
    throw Error(ErrorCode::InvalidInput, "unknown encoding kind '" + name + "'");
}

std::string EncodingKind::to_string() const {
    switch (tag) {
        case Tag::PPaComma: return "ppa-comma";
        case Tag::BKK: return "bkk";
        case Tag::DHP: return "dhp";
        case Tag::Palacz: return "palacz";
        case Tag::MultiHierarchy: return "multi" + std::to_string(copies);
        case Tag::Bigraph: return "bigraph";
        case Tag::Grouping: return "grouping";
    }
    return {};
}

Signature preset(const EncodingKind& kind) {
    using Tag = EncodingKind::Tag;
    switch (kind.tag) {
        case Tag::PPaComma: return Signature::parse("1", "PPa(N)");
        case Tag::BKK: return {parse_functor("PPa(N)"), kind.funH};
        case Tag::DHP: return Signature::parse("1", "Star(N) * PotOm(N)");
        case Tag::Palacz: return Signature::parse("PPa(N + E)", "Pot(N) * PPa(N + E)");
        case Tag::MultiHierarchy:
            return {FunctorExpr::copy(kind.copies, parse_functor("PPa(N + E)")), parse_functor("Pot(N)")};
        case Tag::Bigraph: return Signature::parse("PPa(N)", "Pot(N + E) * Pot(N + E)");
        case Tag::Grouping: return Signature::parse("PPa(N)", "N * N * PPa(E)");
    }
    return {};
}

namespace {

void add_node_conditions(const NodeProperties& p, bool hierarchical, const std::string& suffix,
                         EncodingReport& rep) {
    if (!p.well_founded) rep.violations.push_back({"well_founded" + suffix, ""});
    if (hierarchical && !p.hierarchical) rep.violations.push_back({"hierarchical" + suffix, ""});
}

}  // namespace

EncodingReport validate_encoding(const CoalgGraph& G, const EncodingKind& kind) {
    if (!(G.sig == preset(kind))) {
        throw Error(ErrorCode::SignatureMismatch,
                    "graph signature " + G.sig.to_string() + " is not the " + kind.to_string() + " preset");
    }
    EncodingReport rep;
    for (const auto& issue : validate_graph(G)) rep.violations.push_back({"structure", issue.element});
    if (!rep.violations.empty()) {
        rep.ok = false;
        return rep;
    }

    using Tag = EncodingKind::Tag;
    switch (kind.tag) {
        case Tag::PPaComma: break;
        case Tag::BKK: {
            const NodeProperties p = node_properties(G);
            add_node_conditions(p, false, "", rep);
            // Every atomic node sits directly inside some package.
            for (const auto& n : p.atoms) {
                const Term a = Term::atom(n);
                const bool packaged = std::any_of(G.node.begin(), G.node.end(),
                                                  [&](const auto& kv) { return kv.second.contains(a); });
                if (!packaged) rep.violations.push_back({"completeness", n});
            }
            break;
        }
        case Tag::DHP: {
            const EdgeProperties e = edge_properties(G);
            for (const auto& x : G.E) {
                const auto mentioned = atoms_of(G.st_of(x));
                if (!mentioned.empty() && e.flattened.at(x).empty()) rep.violations.push_back({"node_based", x});
            }
            break;
        }
        case Tag::Palacz:
        case Tag::Bigraph: add_node_conditions(node_properties(G), true, "", rep); break;
        case Tag::MultiHierarchy:
            for (unsigned i = 0; i < kind.copies; ++i) {
                add_node_conditions(node_properties(G, i), true, "[" + std::to_string(i) + "]", rep);
            }
            break;
        case Tag::Grouping: add_node_conditions(node_properties(G), false, "", rep); break;
    }
    rep.ok = rep.violations.empty();
    return rep;
}

// ---------------------------------------------------------------------------
// Fixtures

namespace {

using Table = std::vector<std::pair<const char*, const char*>>;

CoalgGraph build(const Signature& sig, const Table& nodes, const Table& edges) {
    CoalgGraph G;
    G.sig = sig;
    std::vector<AtomId> n, e;
    for (const auto& [k, v] : nodes) {
        n.push_back(k);
        G.node.emplace(k, parse_term(v));
    }
    for (const auto& [k, v] : edges) {
        e.push_back(k);
        G.st.emplace(k, parse_term(v));
    }
    G.N = FinSet(n);
    G.E = FinSet(e);
    return G;
}

CoalgGraph build_comma(const std::string& st, const std::vector<const char*>& nodes, const Table& edges) {
    Table n;
    for (const char* x : nodes) n.emplace_back(x, "()");
    return build(Signature::parse("1", st), n, edges);
}

CoalgGraph motiv_g1() {
    return build(Signature::parse("PPa(N)", "Pot(N + E)"),
                 {{"n1", "n1"}, {"n2", "n2"}, {"n3", "n3"},
                  {"n4", "{n1,n2}"}, {"n5", "{n3}"}, {"n6", "{n2,{n2,n3},n5}"}},
                 {{"a", "{n1,n3}"}, {"b", "{n2,n5,n6}"}, {"c", "{n5}"}});
}

CoalgGraph motiv_g2() {
    return build(Signature::parse("PPa(N)", "Pot(N + E)"),
                 {{"a", "a"}, {"b", "b"}, {"c", "c"}, {"d", "d"}},
                 {{"x1", "{a,b,c}"}, {"x2", "{a,b}"}, {"x3", "{x2,d}"}, {"x4", "{a,x4}"}});
}

CoalgGraph motiv_g3() {
    return build(Signature::parse("PPa(N)", "Star(N) * PotOm(N + E)"),
                 {{"a", "a"}, {"b", "b"}, {"c", "c"}, {"d", "d"}, {"e", "e"}},
                 {{"x1", "([a,b,c],{d,e,x2,x3})"}, {"x2", "([e,d],{})"}, {"x3", "([d,e],{})"}});
}

CoalgGraph bkk() {
    return build(preset(EncodingKind::bkk(parse_functor("N * N"))),
                 {{"n", "n"}, {"m", "m"}, {"x", "x"}, {"y", "y"}, {"z", "z"},
                  {"p1", "{x,y,z}"}, {"p2", "{n,m}"}, {"p3", "{p1,p2}"}},
                 {{"a", "(y,x)"}, {"b", "(y,z)"}, {"c", "(m,n)"}, {"e", "(z,n)"}});
}

CoalgGraph dhp() {
    return build_comma("Star(N) * PotOm(N)", {"x", "y", "z", "n", "m", "v1", "v2", "v3", "v4"},
                       {{"a", "([x,y,z],{})"}, {"b", "([n,m],{})"}, {"c", "([v2,v4],{})"},
                        {"e1", "([v1,v2,v3],{x,y,z})"}, {"e2", "([v4],{n,m})"}});
}

CoalgGraph palacz() {
    return build(preset(EncodingKind::palacz()),
                 {{"1", "1"}, {"2", "2"}, {"3", "{1,2,4}"}, {"6", "6"}, {"8", "8"}, {"9", "9"}, {"11", "{8,9}"}},
                 {{"4", "({1,2},{})"}, {"5", "({2,6},{})"}, {"7", "({3,6,11},{})"}, {"10", "({8,9},{})"}});
}

CoalgGraph bigraph() {
    return build(preset(EncodingKind::bigraph()),
                 {{"\xF0\x9D\x9F\x8E", "{v0,v2}"}, {"\xF0\x9D\x9F\x8F", "{v3,1}"}, {"v0", "{v1}"},
                  {"v1", "{0}"}, {"v2", "v2"}, {"v3", "{2}"}, {"0", "0"}, {"1", "1"}, {"2", "2"}},
                 {{"e1", "({v1,v2,v3},{v1,v2,v3})"}, {"y0", "({v2},{v2})"}, {"y1", "({v2,v3},{v2,v3})"},
                  {"x0", "({x0},{y1})"}, {"x1", "({x1},{v3})"}});
}

CoalgGraph multi() {
    return build(preset(EncodingKind::multi_hierarchy(2)),
                 {{"a", "[a,a]"}, {"b", "[b,b]"}, {"c", "[c,c]"}, {"h1", "[{a,b},h1]"}, {"h2", "[h2,{b,c,e}]"}},
                 {{"e", "{a,c}"}});
}

CoalgGraph grouping() {
    return build(preset(EncodingKind::grouping()),
                 {{"a", "a"}, {"b", "b"}, {"c", "c"}, {"g1", "{a,b}"}, {"g2", "{b,c}"}},
                 {{"e1", "((a,b),{})"}, {"e2", "((b,c),{})"}, {"s", "((g1,g2),{e1,e2})"}});
}

Cospan pot_counterexample() {
    const FinSet D{"d"};
    const FinSet B{"1", "2"};
    const FinSet C{"c", "c'"};
    return {SortedFunction{FinFunction(B, D, {{"1", "d"}, {"2", "d"}}), FinFunction{}},
            SortedFunction{FinFunction(C, D, {{"c", "d"}, {"c'", "d"}}), FinFunction{}}};
}

std::string tree_node(unsigned i) { return std::to_string(i); }

/// The tree of the given depth plus extra nodes.
CoalgGraph tree_with(unsigned depth, const Table& extra) {
    const unsigned total = (2u << depth) - 1;
    const unsigned inner = (1u << depth) - 1;
    std::vector<std::pair<std::string, std::string>> rows;
    for (unsigned i = 0; i < total; ++i) {
        rows.emplace_back(tree_node(i), i < inner ? "{" + tree_node(2 * i + 1) + "," + tree_node(2 * i + 2) + "}"
                                                  : std::string("{}"));
    }
    for (const auto& [k, v] : extra) rows.emplace_back(k, v);
    Table t;
    for (const auto& [k, v] : rows) t.emplace_back(k.c_str(), v.c_str());
    return build(Signature::parse("PotFin(N)", "1"), t, {});
}

const std::vector<std::string>& names() {
    static const std::vector<std::string> all = {
        "empty",        "ex.potom.G5", "ex.potom.G6", "ex.ppa.G1",   "ex.ppa.G2",        "ex.ppa.Q",
        "ex.ppb.G3",    "ex.ppb.G4",   "fig3.bkk",    "fig4.dhp",    "fig5.palacz",      "fig6.graph",
        "fig6.rule",    "fig7.bigraph", "grouping.example", "motiv.G1", "motiv.G2",       "motiv.G3",
        "multi.example", "pot.counterexample"};
    return all;
}

}  // namespace

CoalgGraph tree_graph(unsigned depth) {
    const std::string last = tree_node((2u << depth) - 2);
    const std::string u = "{u," + last + "}";
    return tree_with(depth, {{"s", "{0}"}, {"u", u.c_str()}});
}

Rule tree_rule(unsigned depth) {
    Rule r;
    r.name = "replace";
    r.K = tree_with(depth, {});
    r.L = tree_with(depth, {{"s", "{0}"}});
    r.R = tree_with(depth, {{"t", "{1,2}"}});
    r.l = {FinFunction::inclusion(r.K.N, r.L.N), FinFunction::identity(FinSet{})};
    r.r = {FinFunction::inclusion(r.K.N, r.R.N), FinFunction::identity(FinSet{})};
    return r;
}

std::vector<std::string> fixture_names() { return names(); }

FixtureValue fixture(const std::string& name) {
    if (name == "empty") return build(Signature::parse("1", "Pot(N)"), {}, {});
    if (name == "motiv.G1") return motiv_g1();
    if (name == "motiv.G2") return motiv_g2();
    if (name == "motiv.G3") return motiv_g3();
    if (name == "ex.ppa.G1")
        return build_comma("PPa(N)", {"u", "v", "w"}, {{"x", "{{u},{v}}"}, {"y", "{u,w}"}, {"z", "{u,w}"}});
    if (name == "ex.ppa.G2")
        return build_comma("PPa(N)", {"n1", "n2", "n3"},
                           {{"a", "{n1,n2}"}, {"b", "{{n1,n2},{n3},n3}"}, {"c", "{{n3}}"}});
    if (name == "ex.ppa.Q") return build_comma("PPa(N)", {"p", "q"}, {{"x'", "{{p}}"}, {"yz", "{p,q}"}});
    if (name == "ex.ppb.G3")
        return build_comma("PPb(N)", {"u", "v", "w"},
                           {{"x", "{{{u}},{{v}}}"}, {"y", "{{u},{w}}"}, {"z", "{{u},{w}}"}});
    if (name == "ex.ppb.G4")
        return build_comma("PPb(N)", {"n1", "n2", "n3", "n4"},
                           {{"a", "{{n1},{n4}}"}, {"b", "{{n1,n4},{n3},{{n3}}}"}, {"c", "{{{n3}}}"}});
    if (name == "ex.potom.G5")
        return build_comma("PotOm(N)", {"u", "v", "w"},
                           {{"x", "{{{u}},{{v}}}"}, {"y", "{{u},{w}}"}, {"z", "{{u},{w}}"}});
    if (name == "ex.potom.G6")
        return build_comma("PPa(N)", {"n1", "n2", "n3"},
                           {{"a", "{{n1},{n2}}"}, {"b", "{{n1,n2},{n3},n3}"}, {"c", "{{n3}}"}});
    if (name == "fig3.bkk") return bkk();
    if (name == "fig4.dhp") return dhp();
    if (name == "fig5.palacz") return palacz();
    if (name == "fig6.graph") return tree_graph(3);
    if (name == "fig6.rule") return tree_rule(3);
    if (name == "fig7.bigraph") return bigraph();
    if (name == "grouping.example") return grouping();
    if (name == "multi.example") return multi();
    if (name == "pot.counterexample") return pot_counterexample();
    throw Error(ErrorCode::UnknownFixture, "unknown fixture '" + name + "'");
}

CoalgGraph fixture_graph(const std::string& name) {
    FixtureValue v = fixture(name);
    if (auto* g = std::get_if<CoalgGraph>(&v)) return std::move(*g);
    throw Error(ErrorCode::InvalidInput, "fixture '" + name + "' is not a graph");
}

// ---------------------------------------------------------------------------
// Membership matrix

MembershipMatrix membership_matrix() {
    struct Row {
        const char* label;
        const char* fixture;
        bool ppb, ppa, potom;  // expected yes/no row
    };
    const Row rows[] = {{"G1", "ex.ppa.G1", true, true, true},   {"G2", "ex.ppa.G2", true, true, false},
                        {"G3", "ex.ppb.G3", false, true, true},  {"G4", "ex.ppb.G4", false, true, false},
                        {"G5", "ex.potom.G5", false, true, true}, {"G6", "ex.potom.G6", false, true, true}};

    MembershipMatrix out;
    for (const Row& row : rows) {
        const CoalgGraph G = fixture_graph(row.fixture);
        const AtomSet universe(G.N.begin(), G.N.end());
        const std::pair<Flavor, bool> cols[] = {
            {Flavor::ppb(), row.ppb}, {Flavor::ppa(), row.ppa}, {Flavor::pot_om(), row.potom}};
        for (const auto& [flavor, expected] : cols) {
            MembershipCell cell{row.label, flavor, true, expected, {}};
            for (const auto& [e, t] : G.st) {
                if (!member_of(t, universe, flavor)) cell.failing_edges.push_back(e);
            }
            cell.strict = cell.failing_edges.empty();
            if (cell.strict != cell.expected) {
                out.discrepancies.push_back(std::string(row.label) + "/" + flavor.to_string());
            }
            out.cells.push_back(std::move(cell));
        }
    }

    const AtomSet n123{"n1", "n2", "n3"};
    const AtomSet uvw{"u", "v", "w"};
    auto fact = [&](const char* label, const char* term, const AtomSet& universe, Flavor flavor, bool expected) {
        const Term t = parse_term(term);
        out.facts.push_back({label, t, universe, flavor, expected, member_of(t, universe, flavor)});
    };
    fact("i", "{{n1},{{n2}}}", n123, Flavor::pot_om(), false);
    fact("ii.u", "u", uvw, Flavor::ppb(), false);
    fact("ii.w", "w", uvw, Flavor::ppb(), false);
    fact("iii", "{n1,{n2}}", n123, Flavor::ppb(), false);
    fact("iv", "{n1,{n2}}", n123, Flavor::pot_om(), false);
    fact("v", "n1", n123, Flavor::ppb(), false);
    fact("ppa", "{n1,{n2}}", n123, Flavor::ppa(), true);
    return out;
}

}  // namespace adhesia
