// Acceptance runner: one PASS/FAIL line per criterion, exit status 1 if any fails.

#include <chrono>
#include <cstdio>
#include <functional>
#include <set>
#include <string>
#include <vector>

#include "adhesia/category.hpp"
#include "adhesia/dpo.hpp"
#include "adhesia/encodings.hpp"
#include "adhesia/error.hpp"
#include "adhesia/serialize.hpp"
#include "support/generators.hpp"
#include "support/oracles.hpp"

using namespace adhesia;

namespace {

struct Outcome {
    bool ok = true;
    std::string detail;
};

struct Criterion {
    int id;
    const char* title;
    double limit_s;
    std::function<Outcome()> body;
};

Outcome fail(std::string why) { return {false, std::move(why)}; }

// 1 -------------------------------------------------------------------------
Outcome pot_counterexample() {
    const Cospan cs = std::get<Cospan>(fixture("pot.counterexample"));
    const PreservationVerdict v =
        check_pb_preservation(parse_functor("Pot(X)"), cs, {}, PreservationMode::Ordinary);
    if (v.holds) return fail("preservation unexpectedly holds");
    if (v.size_FA != 16 || v.size_P != 10)
        return fail("sizes " + std::to_string(v.size_FA) + "/" + std::to_string(v.size_P));
    return {true, "|Pot(A)| = 16, |P| = 10"};
}

// 2 -------------------------------------------------------------------------
Outcome functor_action_examples() {
    const FinFunction f(FinSet{"u", "v", "w", "u'", "v'"}, FinSet{"n1", "n2", "n3", "n4", "n5", "n6"},
                        {{"u", "n3"}, {"v", "n3"}, {"w", "n1"}, {"u'", "n5"}, {"v'", "n5"}});
    const SortedFunction fs{f, FinFunction{}};
    struct Example {
        const char* functor;
        const char* in;
        const char* out;
    };
    const Example examples[] = {
        {"PPa(X)", "{u, v, w, {u, v}, {v, {w, {}}}}", "{n3, n1, {n3}, {n3, {n1, {}}}}"},
        {"PPb(X)", "{{u, v}, {v, {w, {}}}}", "{{n3}, {n3, {n1, {}}}}"},
        {"PotOm(X)", "{{u, v}, {{}, {w, {}}}}", "{{n3}, {{}, {n1, {}}}}"},
    };
    for (const auto& ex : examples) {
        const std::string got = map_element(parse_functor(ex.functor), fs, parse_term(ex.in)).to_string();
        const std::string want = parse_term(ex.out).to_string();
        if (got != want) return fail(std::string(ex.functor) + ": " + got + " != " + want);
    }
    // u and v collapse to n3, so the five members of the first input become four.
    if (parse_term(examples[0].out).size() != 4) return fail("image did not shrink");
    return {true, "3 examples byte-identical"};
}

// 3 -------------------------------------------------------------------------
Outcome flattening() {
    const auto table = flatten(fixture_graph("motiv.G2"));
    const std::map<AtomId, AtomSet> want{
        {"x1", {"a", "b", "c"}}, {"x2", {"a", "b"}}, {"x3", {"a", "b", "d"}}, {"x4", {"a"}}};
    if (table != want) return fail("table differs");
    return {true, "4 edges"};
}

// 4 -------------------------------------------------------------------------
Outcome membership_facts() {
    const MembershipMatrix m = membership_matrix();
    std::size_t reasons = 0;
    for (const auto& fact : m.facts) {
        if (fact.label == "ppa") continue;
        ++reasons;
        if (fact.holds) return fail("reason " + fact.label + " holds");
        const bool ref = fact.flavor.kind == Flavor::Kind::PPb ? oracle::in_ppb(fact.term, fact.universe)
                         : fact.flavor.kind == Flavor::Kind::PotOm ? oracle::in_potom(fact.term, fact.universe)
                                                                   : oracle::in_ppa(fact.term, fact.universe);
        if (ref) return fail("oracle disagrees on " + fact.label);
    }
    if (reasons < 5) return fail("missing reasons");

    std::size_t checked = 0;
    for (std::size_t n = 0; n <= 3; ++n) {
        const AtomSet U = gen::names("a", n).to_atom_set();
        const auto base = atoms_as_terms(U);
        for (const Flavor fl : {Flavor::ppb(), Flavor::pot_om()}) {
            bool bad = false;
            for_each_flavor_term(base, fl, {3, 3, 3}, [&](const Term& t) {
                ++checked;
                if (!member_of(t, U, Flavor::ppa()) || !oracle::in_ppa(t, U)) bad = true;
            });
            if (bad) return fail(fl.to_string() + " term outside PPa over " + std::to_string(n) + " atoms");
        }
    }
    return {true, std::to_string(reasons) + " reasons false, " + std::to_string(checked) + " inclusion checks"};
}

// 5 -------------------------------------------------------------------------
Outcome injection_preservation() {
    gen::Rng rng(1005);
    std::size_t terms = 0;
    for (int i = 0; i < 200; ++i) {
        const FinSet M = gen::names("m", gen::uniform(rng, 0, 4));
        const FinSet N = gen::names("n", gen::uniform(rng, M.size(), 4));
        const SortedFunction f{gen::random_injection(M, N, rng), FinFunction{}};
        for (const Flavor fl : {Flavor::ppa(), Flavor::ppb(), Flavor::pot_om()}) {
            const FunctorExpr F = FunctorExpr::flavor(fl, FunctorExpr::sort_n());
            const auto all = enumerate(M.to_atom_set(), fl, 2, 2);
            std::set<Term> images;
            for (const Term& t : all) images.insert(map_element(F, f, t));
            if (images.size() != all.size()) return fail("f# not injective on " + fl.to_string());
            terms += all.size();
        }
    }
    return {true, "200 injections x 3 flavors, " + std::to_string(terms) + " terms"};
}

// 6 -------------------------------------------------------------------------
Outcome pullback_preservation() {
    const char* functors[] = {"Pot(N + E)",  "PotDir(N + E)", "PPa(N + E)", "PPb(N + E)",
                              "PotOm(N + E)", "N * N",        "N + E",      "Star(N)"};
    const EnumBounds bounds{2, 2, 2};
    gen::Rng rng(1006);
    std::size_t elements = 0;
    for (int i = 0; i < 100; ++i) {
        const Cospan cs = gen::random_cospan(3, true, rng);
        const SortedPullback pb = carrier_pullback(cs);
        for (const char* text : functors) {
            const FunctorExpr F = parse_functor(text);
            for (const Term& t : enumerate_functor(F, pb.apex, bounds)) {
                const Term h = comparison_h(F, cs, t);
                if (inverse_hbar(F, cs, h.first(), h.second()) != t)
                    return fail(std::string(text) + ": hbar(h(t)) != t for " + t.to_string());
                ++elements;
            }
            for (const Term& xy : functor_pullback(F, cs, bounds)) {
                const Term back = inverse_hbar(F, cs, xy.first(), xy.second());
                if (comparison_h(F, cs, back) != xy)
                    return fail(std::string(text) + ": h(hbar(X,Y)) != (X,Y) for " + xy.to_string());
                if (map_element(F, pb.to_b, back) != xy.first())
                    return fail(std::string(text) + ": F(piB)(hbar(X,Y)) != X for " + xy.to_string());
                ++elements;
            }
        }
    }
    return {true, "100 cospans x 8 functors, " + std::to_string(elements) + " elements"};
}

// 7 -------------------------------------------------------------------------
Outcome vk_biconditional() {
    gen::Rng rng(1007);
    std::vector<VkCube> cubes;
    for (int i = 0; i < 60; ++i) cubes.push_back(gen::random_vk_cube(rng));
    for (const auto& v : vk_cube_check_batch(cubes, Exec::Parallel)) {
        if (!v.biconditional_holds) return fail("biconditional fails on a constructed cube");
        if (!v.top_is_pushout || !v.fronts_are_pullbacks) return fail("constructed cube is not VK-shaped");
    }
    std::vector<VkCube> broken;
    while (broken.size() < 25) {
        if (auto k = gen::perturb_front(gen::random_vk_cube(rng), rng)) broken.push_back(std::move(*k));
    }
    for (const auto& v : vk_cube_check_batch(broken, Exec::Parallel)) {
        if (v.top_is_pushout) return fail("perturbed cube still has a pushout top");
        if (!v.biconditional_holds) return fail("biconditional fails on a perturbed cube");
    }
    return {true, "60 cubes, 25 perturbed"};
}

// 8 -------------------------------------------------------------------------
Outcome dpo_step() {
    const CoalgGraph G = fixture_graph("fig6.graph");
    const Rule rule = std::get<Rule>(fixture("fig6.rule"));
    const auto matches = find_matches(rule, G, Exec::Parallel);
    if (matches.empty()) return fail("no match");
    const RuleApplication app = apply_rule(rule, matches.front(), G);
    if (!app.left_square_is_pushout || !app.right_square_is_pushout) return fail("a square is not a pushout");
    const Rule back = rule.inverse();
    const auto undo = find_matches(back, app.H);
    if (undo.empty()) return fail("inverse rule does not match");
    if (!isomorphic(apply_rule(back, undo.front(), app.H).H, G)) return fail("inverse does not restore G");
    return {true, std::to_string(matches.size()) + " matches, round trip isomorphic"};
}

// 9 -------------------------------------------------------------------------
Outcome fixture_validity() {
    std::size_t graphs = 0;
    for (const auto& name : fixture_names()) {
        const FixtureValue v = fixture(name);
        if (const auto* G = std::get_if<CoalgGraph>(&v)) {
            if (!validate_graph(*G).empty()) return fail(name + " is not a valid graph");
            ++graphs;
        }
    }
    const std::pair<const char*, EncodingKind> figures[] = {
        {"fig3.bkk", EncodingKind::parse("bkk")},
        {"fig4.dhp", EncodingKind::dhp()},
        {"fig5.palacz", EncodingKind::palacz()},
        {"fig7.bigraph", EncodingKind::bigraph()},
    };
    for (const auto& [name, kind] : figures) {
        const CoalgGraph G = fixture_graph(name);
        if (!(G.sig == preset(kind))) return fail(std::string(name) + " is not over its preset");
        const EncodingReport r = validate_encoding(G, kind);
        if (!r.ok) return fail(std::string(name) + ": " + r.violations.front().rule);
    }
    return {true, std::to_string(graphs) + " graphs valid, 4 encodings checked"};
}

// 10 ------------------------------------------------------------------------
Outcome m_class() {
    gen::Rng rng(1010);
    std::vector<MSample> samples;
    for (int i = 0; i < 150; ++i) samples.push_back(gen::random_m_sample(static_cast<MSample::Kind>(i % 3), rng));
    const MClassReport r = m_class_suite(samples);
    if (!(r.stable_under_pushout && r.stable_under_pullback && r.closed_under_composition && r.contains_identities))
        return fail(r.witnesses.empty() ? "clause failed" : r.witnesses.front());
    return {true, std::to_string(r.samples) + " samples"};
}

}  // namespace

int main() {
    const std::vector<Criterion> criteria{
        {1, "Pot counterexample", 1, pot_counterexample},
        {2, "functor action examples", 1, functor_action_examples},
        {3, "flattening", 1, flattening},
        {4, "membership facts and inclusions", 30, membership_facts},
        {5, "injection preservation", 60, injection_preservation},
        {6, "pullback preservation along monos", 300, pullback_preservation},
        {7, "VK biconditional", 300, vk_biconditional},
        {8, "DPO step on the truncated tree", 10, dpo_step},
        {9, "fixture validity", 5, fixture_validity},
        {10, "M-class suite", 60, m_class},
    };
    int failures = 0;
    for (const auto& c : criteria) {
        const auto start = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = c.body();
        } catch (const std::exception& e) {
            o = fail(std::string("exception: ") + e.what());
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        if (o.ok && secs > c.limit_s) o = fail(o.detail + "; over the time limit");
        failures += !o.ok;
        std::printf("%s %2d %-36s %8.3f s (limit %g s)  %s\n", o.ok ? "PASS" : "FAIL", c.id, c.title, secs,
                    c.limit_s, o.detail.c_str());
        std::fflush(stdout);
    }
    return failures == 0 ? 0 : 1;
}
