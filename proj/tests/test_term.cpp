#include "doctest.h"
#include "support/printing.hpp"

#include "adhesia/error.hpp"
#include "adhesia/serialize.hpp"
#include "adhesia/term.hpp"
#include "support/oracles.hpp"

using namespace adhesia;

namespace {
Term T(const char* s) { return parse_term(s); }
}  // namespace

TEST_CASE("sets are canonical: order and duplicates do not matter") {
    CHECK(T("{b,a,a}") == T("{a,b}"));
    CHECK(T("{{b,a},c}") == T("{c,{a,b}}"));
    CHECK(T("{a,b}").size() == 2);
    CHECK(T("(a,b)") != T("(b,a)"));
    CHECK(T("[a,b]") != T("[b,a]"));
    CHECK(T("()").is_unit());
}

TEST_CASE("depth counts set nesting and width the largest set") {
    CHECK(T("a").depth() == 0);
    CHECK(T("{}").depth() == 1);
    CHECK(T("{a}").depth() == 1);
    CHECK(T("{n2,{n2,n3},n5}").depth() == 2);
    CHECK(T("({a},{{b}})").depth() == 2);
    CHECK(T("{a,b,{c}}").max_width() == 3);
    CHECK(T("a").max_width() == 0);
}

TEST_CASE("text syntax round-trips through to_string") {
    for (const char* s : {"a", "{}", "{a,{b,c}}", "(a,{b})", "[a,b,a]", "()", "([a],{x2,x3})"}) {
        CHECK(parse_term(T(s).to_string()) == T(s));
    }
}

TEST_CASE("term parse errors carry a position") {
    CHECK_THROWS_AS(parse_term("{a,"), Error);
    CHECK_THROWS_AS(parse_term("(a,b,c)"), Error);
    CHECK_THROWS_AS(parse_term("a b"), Error);
    try {
        parse_term("{a}}");
        FAIL("expected a parse error");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::ParseError);
        CHECK(std::string(e.what()).find("position 3") != std::string::npos);
    }
}

TEST_CASE("atoms_of collects atoms at every level") {
    CHECK(atoms_of(T("([a,b],{c,{d}})")) == AtomSet{"a", "b", "c", "d"});
    CHECK(atoms_of(T("{}")).empty());
}

TEST_CASE("membership agrees with the definitional oracle on all small PPa terms") {
    const AtomSet M{"a", "b"};
    const AtomSet bigger{"a", "b", "z"};
    std::size_t checked = 0;
    for (const Term& t : oracle::ppa_terms(bigger, 3, 2)) {
        const AtomSet used = atoms_of(t);
        if (!std::includes(M.begin(), M.end(), used.begin(), used.end())) {
            CHECK_THROWS_AS(member_of(t, M, Flavor::ppa()), Error);
            continue;
        }
        CHECK(member_of(t, M, Flavor::ppa()) == oracle::in_ppa(t, M));
        CHECK(member_of(t, M, Flavor::ppb()) == oracle::in_ppb(t, M));
        CHECK(member_of(t, M, Flavor::pot_om()) == oracle::in_potom(t, M));
        ++checked;
    }
    CHECK(checked > 100);
}

TEST_CASE("three known non-membership facts") {
    const AtomSet n{"n1", "n2", "n3"};
    CHECK_FALSE(member_of(T("{{n1},{{n2}}}"), n, Flavor::pot_om()));
    CHECK_FALSE(member_of(T("{n1,{n2}}"), n, Flavor::ppb()));
    CHECK_FALSE(member_of(T("{n1,{n2}}"), n, Flavor::pot_om()));
    CHECK(member_of(T("{n1,{n2}}"), n, Flavor::ppa()));
    CHECK_FALSE(member_of(T("n1"), n, Flavor::ppb()));
    CHECK(member_of(T("n1"), n, Flavor::pot_om()));
}

TEST_CASE("plain powersets hold only subsets of the base") {
    const AtomSet M{"a", "b", "c"};
    CHECK(member_of(T("{a,c}"), M, Flavor::pot()));
    CHECK_FALSE(member_of(T("{{a}}"), M, Flavor::pot()));
    CHECK_FALSE(member_of(T("a"), M, Flavor::pot()));
    CHECK(member_of(T("{a,b}"), M, Flavor::pot_range(1, 2)));
    CHECK_FALSE(member_of(T("{}"), M, Flavor::pot_range(1, 2)));
    CHECK_FALSE(member_of(T("{a,b,c}"), M, Flavor::pot_range(1, 2)));
    CHECK_THROWS_AS(Flavor::pot_range(3, 2), Error);
}

TEST_CASE("unknown atoms are reported") {
    try {
        member_of(T("{x}"), AtomSet{"a"}, Flavor::ppa());
        FAIL("expected UnknownAtom");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::UnknownAtom);
    }
}

TEST_CASE("PPa enumeration equals the brute-force subset closure") {
    for (std::size_t atoms = 0; atoms <= 2; ++atoms) {
        AtomSet M;
        for (std::size_t i = 0; i < atoms; ++i) M.insert("m" + std::to_string(i));
        for (std::size_t d = 1; d <= 2; ++d)
            for (std::size_t w = 1; w <= 2; ++w) {
                CAPTURE(atoms);
                CAPTURE(d);
                CAPTURE(w);
                CHECK(enumerate(M, Flavor::ppa(), d, w) == oracle::ppa_terms(M, d, w));
            }
    }
}

TEST_CASE("PPb and PotOm enumerations are the oracle-filtered PPa fragment") {
    const AtomSet M{"a", "b"};
    const auto all = oracle::ppa_terms(M, 3, 2);
    std::vector<Term> ppb, potom;
    for (const Term& t : all) {
        if (oracle::in_ppb(t, M)) ppb.push_back(t);
        if (oracle::in_potom(t, M)) potom.push_back(t);
    }
    CHECK(enumerate(M, Flavor::ppb(), 3, 2) == ppb);
    CHECK(enumerate(M, Flavor::pot_om(), 3, 2) == potom);
}

TEST_CASE("plain powerset enumeration ignores the bounds") {
    const AtomSet M{"a", "b", "c"};
    CHECK(enumerate(M, Flavor::pot(), 1, 1).size() == 8);
    CHECK(enumerate(M, Flavor::pot_range(1, 2), 1, 1).size() == 6);
}

TEST_CASE("streaming enumeration visits exactly the materialized terms") {
    const auto base = atoms_as_terms(AtomSet{"a", "b", "c"});
    for (const Flavor fl : {Flavor::ppa(), Flavor::ppb(), Flavor::pot_om(), Flavor::pot()}) {
        std::vector<Term> seen;
        for_each_flavor_term(base, fl, {2, 2, 3}, [&](const Term& t) { seen.push_back(t); });
        std::sort(seen.begin(), seen.end());
        CHECK(std::adjacent_find(seen.begin(), seen.end()) == seen.end());
        CHECK(seen == enumerate_flavor(base, fl, {2, 2, 3}));
    }
}
