#include "doctest.h"
#include "support/printing.hpp"

#include "adhesia/category.hpp"
#include "adhesia/error.hpp"
#include "support/generators.hpp"
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

}  // namespace

TEST_CASE("coalgebra pushouts have set-level carriers and homomorphic legs") {
    gen::Rng rng(51);
    for (int i = 0; i < 100; ++i) {
        const CoalgGraph A = gen::random_pot_graph("a", 3, 2, rng);
        const GraphMorphism f = gen::random_extension(A, "b", 2, rng);
        const GraphMorphism g = gen::random_quotient(A, "c", 1, rng);
        const GraphPushout po = coalg_pushout(f, g);
        CHECK(validate_graph(po.apex).empty());
        CHECK(po.apex.N.size() == oracle::pushout_size(A.N.elements(), f.dst.N.elements(), g.dst.N.elements(),
                                                       f.map.fN.table(), g.map.fN.table()));
        CHECK(po.apex.E.size() == oracle::pushout_size(A.E.elements(), f.dst.E.elements(), g.dst.E.elements(),
                                                       f.map.fE.table(), g.map.fE.table()));
        const GraphMorphism p{f.dst, po.apex, po.from_b}, q{g.dst, po.apex, po.from_c};
        CHECK(check_morphism(p).ok);
        CHECK(check_morphism(q).ok);
        CHECK(q.map.is_injective());
        CHECK(is_pushout(f, g, p, q));
        CHECK(is_pushout(g, f, q, p));
        // The identity cocone on the pushout mediates to itself.
        CHECK(induced_from_pushout(po, po.from_b, po.from_c) == SortedFunction::identity(po.apex.env()));
    }
}

TEST_CASE("a cocone with an extra element is not a pushout") {
    gen::Rng rng(52);
    const CoalgGraph A = gen::random_pot_graph("a", 2, 1, rng);
    const GraphMorphism f = gen::random_extension(A, "b", 1, rng);
    const GraphMorphism g = gen::random_quotient(A, "c", 0, rng);
    const GraphPushout po = coalg_pushout(f, g);
    const GraphMorphism bigger = gen::random_extension(po.apex, "zz", 0, rng);
    CoalgGraph X = bigger.dst;
    X.N = set_union(X.N, FinSet{"extra"});
    X.node.emplace("extra", Term::unit());
    const SortedFunction into{FinFunction::inclusion(po.apex.N, X.N), FinFunction::identity(po.apex.E)};
    const GraphMorphism p{f.dst, X, compose(into, po.from_b)}, q{g.dst, X, compose(into, po.from_c)};
    CHECK_FALSE(is_pushout(f, g, p, q));
}

TEST_CASE("pushouts need an injective leg") {
    gen::Rng rng(53);
    CoalgGraph A = gen::random_pot_graph("a", 0, 0, rng);
    A.N = FinSet{"a1", "a2"};
    A.node = {{"a1", Term::unit()}, {"a2", Term::unit()}};
    const GraphMorphism g = gen::random_quotient(A, "c", 0, rng);
    const GraphMorphism squash{A, g.dst, g.map};
    if (!squash.map.is_injective()) {
        CHECK(code_of([&] { coalg_pushout(squash, squash); }) == ErrorCode::NotInM);
    }
}

TEST_CASE("coalgebra pullbacks along monos") {
    gen::Rng rng(54);
    for (int i = 0; i < 100; ++i) {
        const CoalgGraph B = gen::random_pot_graph("b", 3, 2, rng);
        const GraphMorphism f = gen::random_quotient(B, "d", 1, rng);
        const GraphMorphism g = gen::random_subgraph(f.dst, rng);
        const GraphPullback pb = coalg_pullback(f, g);
        CHECK(validate_graph(pb.apex).empty());
        CHECK(pb.apex.N.size() == oracle::pullback_size(f.map.fN.table(), g.map.fN.table()));
        CHECK(pb.apex.E.size() == oracle::pullback_size(f.map.fE.table(), g.map.fE.table()));
        const GraphMorphism p{pb.apex, B, pb.to_b}, q{pb.apex, g.src, pb.to_c};
        CHECK(p.map.is_injective());
        CHECK(is_pullback(p, q, f, g));
        CHECK(is_pullback(q, p, g, f));
    }
}

TEST_CASE("pullbacks reject non-injective second legs and mismatched targets") {
    gen::Rng rng(55);
    CoalgGraph B = gen::random_pot_graph("b", 0, 0, rng);
    B.N = FinSet{"b1", "b2"};
    B.node = {{"b1", Term::unit()}, {"b2", Term::unit()}};
    CoalgGraph D = gen::random_pot_graph("d", 0, 0, rng);
    D.N = FinSet{"d"};
    D.node = {{"d", Term::unit()}};
    const GraphMorphism squash{B, D, {FinFunction(B.N, D.N, {{"b1", "d"}, {"b2", "d"}}), FinFunction{}}};
    CHECK(code_of([&] { coalg_pullback(squash, squash); }) == ErrorCode::NonInjectiveLeg);
    const GraphMorphism idB = identity_morphism(B);
    CHECK(code_of([&] { coalg_pullback(squash, idB); }) == ErrorCode::CodomainMismatch);
}

TEST_CASE("pullback preservation warnings are opt-in") {
    gen::Rng rng(56);
    const CoalgGraph B = gen::random_pot_graph("b", 2, 1, rng);
    const GraphMorphism f = gen::random_quotient(B, "d", 1, rng);
    const GraphMorphism g = gen::random_subgraph(f.dst, rng);
    CHECK(coalg_pullback(f, g, true, {2, 2, 2}).warnings.empty());
}

TEST_CASE("constructed cubes satisfy the biconditional") {
    gen::Rng rng(57);
    for (int i = 0; i < 60; ++i) {
        const VkCube cube = gen::random_vk_cube(rng);
        const VkVerdict v = vk_cube_check(cube);
        CHECK(v.biconditional_holds);
        CHECK(v.top_is_pushout);
        CHECK(v.fronts_are_pullbacks);
    }
}

TEST_CASE("perturbed cubes lose the top pushout and a front pullback") {
    gen::Rng rng(58);
    int perturbed = 0;
    while (perturbed < 25) {
        const auto cube = gen::perturb_front(gen::random_vk_cube(rng), rng);
        if (!cube) continue;
        ++perturbed;
        const VkVerdict v = vk_cube_check(*cube);
        CHECK_FALSE(v.top_is_pushout);
        CHECK_FALSE(v.fronts_are_pullbacks);
        CHECK(v.biconditional_holds);
    }
}

TEST_CASE("malformed cubes are rejected") {
    gen::Rng rng(59);
    VkCube cube = gen::random_vk_cube(rng);
    while (cube.A.N.empty()) cube = gen::random_vk_cube(rng);
    VkCube broken = cube;
    broken.B = broken.C;
    CHECK(code_of([&] { vk_cube_check(broken); }) == ErrorCode::MalformedCube);
}

TEST_CASE("serial and parallel cube checks agree") {
    gen::Rng rng(60);
    std::vector<VkCube> cubes;
    for (int i = 0; i < 30; ++i) {
        VkCube c = gen::random_vk_cube(rng);
        if (i % 2 == 1)
            if (auto p = gen::perturb_front(c, rng)) c = *p;
        cubes.push_back(c);
    }
    const auto s = vk_cube_check_batch(cubes, Exec::Serial);
    const auto p = vk_cube_check_batch(cubes, Exec::Parallel);
    REQUIRE(s.size() == p.size());
    for (std::size_t i = 0; i < s.size(); ++i) {
        CHECK(s[i].top_is_pushout == p[i].top_is_pushout);
        CHECK(s[i].fronts_are_pullbacks == p[i].fronts_are_pullbacks);
    }
}

TEST_CASE("injective homomorphisms form a PO-PB-compatible class") {
    gen::Rng rng(61);
    std::vector<MSample> samples;
    for (int i = 0; i < 120; ++i) samples.push_back(gen::random_m_sample(static_cast<MSample::Kind>(i % 3), rng));
    const MClassReport r = m_class_suite(samples);
    CHECK(r.samples == 120);
    CHECK(r.stable_under_pushout);
    CHECK(r.stable_under_pullback);
    CHECK(r.closed_under_composition);
    CHECK(r.contains_identities);
    CHECK(r.witnesses.empty());
}
