#include "doctest.h"
#include "support/printing.hpp"

#include "adhesia/encodings.hpp"
#include "adhesia/error.hpp"
#include "adhesia/limits.hpp"
#include "adhesia/serialize.hpp"
#include "support/generators.hpp"

using namespace adhesia;

namespace {

Cospan counterexample() { return std::get<Cospan>(fixture("pot.counterexample")); }

/// Every element of F(A) for the carrier pullback A of the cospan.
std::vector<Term> apex_elements(const FunctorExpr& F, const Cospan& cs, const EnumBounds& b) {
    return enumerate_functor(F, carrier_pullback(cs).apex, b);
}

}  // namespace

TEST_CASE("Pot does not preserve the two-point pullback") {
    const auto v = check_pb_preservation(parse_functor("Pot(X)"), counterexample(), {}, PreservationMode::Ordinary);
    CHECK_FALSE(v.holds);
    CHECK(v.size_FA == 16);
    CHECK(v.size_P == 10);
    REQUIRE(v.witness.has_value());
    CHECK(v.witness->kind == PreservationWitness::Kind::Merged);
    CHECK(functor_pullback(parse_functor("Pot(X)"), counterexample()).size() == 10);
}

TEST_CASE("Pot still preserves it weakly") {
    const auto v = check_pb_preservation(parse_functor("Pot(X)"), counterexample(), {}, PreservationMode::Weak);
    CHECK(v.holds);
}

TEST_CASE("preservation along monos rejects non-injective legs") {
    try {
        check_pb_preservation(parse_functor("Pot(X)"), counterexample(), {}, PreservationMode::AlongMonos);
        FAIL("expected NonInjectiveLeg");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::NonInjectiveLeg);
    }
}

TEST_CASE("modes parse") {
    CHECK(parse_mode("ordinary") == PreservationMode::Ordinary);
    CHECK(parse_mode("monos") == PreservationMode::AlongMonos);
    CHECK(parse_mode("weak") == PreservationMode::Weak);
    CHECK_THROWS_AS(parse_mode("strong"), Error);
}

TEST_CASE("the inverse comparison map on Pot is intersection with the pullback") {
    const FinSet D{"d1", "d2"}, B{"b1", "b2"}, C{"c1"};
    const Cospan cs{{FinFunction(B, D, {{"b1", "d1"}, {"b2", "d1"}}), FinFunction{}},
                    {FinFunction(C, D, {{"c1", "d1"}}), FinFunction{}}};
    const Term x = parse_term("{b1,b2}"), y = parse_term("{c1}");
    CHECK(inverse_hbar(parse_functor("Pot(N)"), cs, x, y) ==
          Term::set({Term::atom(pair_name("b1", "c1")), Term::atom(pair_name("b2", "c1"))}));
    try {
        inverse_hbar(parse_functor("Pot(N)"), cs, x, parse_term("{}"));
        FAIL("expected NotInPullback");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::NotInPullback);
    }
}

TEST_CASE("h and its inverse are mutually inverse along monos") {
    gen::Rng rng(21);
    const char* functors[] = {"Pot(N)", "PotDir(N)", "PPa(N)", "PPb(N)", "PotOm(N)", "PotFin(N)",
                              "N * N",  "N + E",     "Star(N)", "Copy2(N)", "1", "Pot[0,1](N + E)"};
    const EnumBounds b{2, 2, 2};
    for (int i = 0; i < 15; ++i) {
        const Cospan cs = gen::random_cospan(3, true, rng);
        for (const char* text : functors) {
            CAPTURE(text);
            const FunctorExpr F = parse_functor(text);
            const auto v = check_pb_preservation(F, cs, b, PreservationMode::AlongMonos);
            CHECK(v.holds);
            for (const Term& t : apex_elements(F, cs, b)) {
                const Term h = comparison_h(F, cs, t);
                CHECK(inverse_hbar(F, cs, h.first(), h.second()) == t);
            }
            for (const Term& p : functor_pullback(F, cs, b)) {
                const Term back = inverse_hbar(F, cs, p.first(), p.second());
                CHECK(comparison_h(F, cs, back) == p);
            }
        }
    }
}

TEST_CASE("edge-recursion signatures preserve pullbacks along monos") {
    gen::Rng rng(4);
    for (const char* text : {"Pot(N + E)", "PotDir(N + E)", "(N + E) * (N + E)"}) {
        for (int i = 0; i < 10; ++i) {
            CAPTURE(text);
            CHECK(check_pb_preservation(parse_functor(text), gen::random_cospan(2, true, rng), {2, 2, 2},
                                        PreservationMode::AlongMonos)
                      .holds);
        }
    }
}

TEST_CASE("batch verdicts do not depend on the execution policy") {
    gen::Rng rng(8);
    std::vector<Cospan> cospans;
    for (int i = 0; i < 20; ++i) cospans.push_back(gen::random_cospan(3, false, rng));
    const FunctorExpr F = parse_functor("PotDir(N) * N");
    const auto serial = check_pb_preservation_batch(F, cospans, {2, 2, 2}, PreservationMode::Ordinary, Exec::Serial);
    const auto parallel = check_pb_preservation_batch(F, cospans, {2, 2, 2}, PreservationMode::Ordinary, Exec::Parallel);
    REQUIRE(serial.size() == parallel.size());
    for (std::size_t i = 0; i < serial.size(); ++i) {
        CHECK(serial[i].holds == parallel[i].holds);
        CHECK(serial[i].size_FA == parallel[i].size_FA);
        CHECK(serial[i].size_P == parallel[i].size_P);
        CHECK(to_json(serial[i]) == to_json(parallel[i]));
    }
}

TEST_CASE("mismatched cospans are rejected") {
    const Cospan cs{{FinFunction(FinSet{"b"}, FinSet{"d"}, {{"b", "d"}}), FinFunction{}},
                    {FinFunction(FinSet{"c"}, FinSet{"x"}, {{"c", "x"}}), FinFunction{}}};
    try {
        carrier_pullback(cs);
        FAIL("expected CodomainMismatch");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::CodomainMismatch);
    }
}
