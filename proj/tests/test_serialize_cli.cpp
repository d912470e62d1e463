#include "doctest.h"
#include "support/printing.hpp"

#include <filesystem>
#include <fstream>
#include <sstream>

#include "adhesia/cli.hpp"
#include "adhesia/dot.hpp"
#include "adhesia/encodings.hpp"
#include "adhesia/error.hpp"
#include "adhesia/serialize.hpp"
#include "support/generators.hpp"

using namespace adhesia;
namespace fs = std::filesystem;

namespace {

struct Run {
    int code;
    std::string out;
    std::string err;
};

Run run(std::vector<std::string> args) {
    std::ostringstream out, err;
    const int code = run_cli(args, out, err);
    return {code, out.str(), err.str()};
}

fs::path scratch(const std::string& name, const Json& j) {
    const fs::path dir = fs::temp_directory_path() / "adhesia_tests";
    fs::create_directories(dir);
    const fs::path p = dir / name;
    std::ofstream(p) << render(j);
    return p;
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    return {std::istreambuf_iterator<char>(in), {}};
}

std::size_t count(const std::string& hay, const std::string& needle) {
    std::size_t n = 0;
    for (auto pos = hay.find(needle); pos != std::string::npos; pos = hay.find(needle, pos + 1)) ++n;
    return n;
}

}  // namespace

TEST_CASE("term syntax") {
    CHECK(parse_term("{b, a, {a}}") == Term::set({Term::atom("a"), Term::atom("b"), Term::set({Term::atom("a")})}));
    CHECK(parse_term("(x, [y, z])") == Term::pair(Term::atom("x"), Term::seq({Term::atom("y"), Term::atom("z")})));
    CHECK(parse_term("()") == Term::unit());
    CHECK_THROWS_AS(parse_term("(a, b, c)"), Error);
    CHECK_THROWS_AS(parse_term("{a"), Error);
    gen::Rng rng(81);
    for (int i = 0; i < 200; ++i) {
        const Term t = gen::random_subset(gen::names("a", 4), rng);
        const Term nested = Term::pair(t, Term::set({t, Term::atom("z")}));
        CHECK(term_from_json(to_json(nested)) == nested);
        CHECK(parse_term(nested.to_string()) == nested);
    }
}

TEST_CASE("graphs, rules, morphisms, cospans and cubes round-trip") {
    for (const auto& name : fixture_names()) {
        CAPTURE(name);
        const FixtureValue v = fixture(name);
        if (const auto* G = std::get_if<CoalgGraph>(&v)) CHECK(graph_from_json(to_json(*G)) == *G);
        if (const auto* r = std::get_if<Rule>(&v)) {
            const Rule back = rule_from_json(to_json(*r));
            CHECK(back.name == r->name);
            CHECK(back.L == r->L);
            CHECK(back.K == r->K);
            CHECK(back.R == r->R);
            CHECK(back.l == r->l);
            CHECK(back.r == r->r);
        }
        if (const auto* cs = std::get_if<Cospan>(&v)) {
            const Cospan back = cospan_from_json(to_json(*cs));
            CHECK(back.f == cs->f);
            CHECK(back.g == cs->g);
        }
    }
    gen::Rng rng(82);
    for (int i = 0; i < 30; ++i) {
        const GraphMorphism m = gen::random_quotient(gen::random_pot_graph("a", 3, 3, rng), "c", 1, rng);
        CHECK(morphism_from_json(morphism_to_json(m.map), m.src, m.dst) == m.map);
        const Cospan cs = gen::random_cospan(3, i % 2 == 0, rng);
        const Cospan back = cospan_from_json(to_json(cs));
        CHECK(back.f == cs.f);
        CHECK(back.g == cs.g);
        const VkCube cube = gen::random_vk_cube(rng);
        CHECK(to_json(cube_from_json(to_json(cube))) == to_json(cube));
    }
}

TEST_CASE("malformed documents map to error codes") {
    CHECK_THROWS_AS(graph_from_json(Json::parse(R"({"nodes": ["a"]})")), Error);
    try {
        cube_from_json(Json::parse(R"({"graphs": {}})"));
        FAIL("accepted");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::MalformedCube);
    }
    const fs::path bad = fs::temp_directory_path() / "adhesia_tests_bad.json";
    std::ofstream(bad) << "{ not json";
    try {
        read_json_file(bad.string());
        FAIL("accepted");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::ParseError);
    }
}

TEST_CASE("cli flatten, check-functor and validate outputs") {
    const Run flat = run({"flatten", "--graph", "motiv.G2.json"});
    CHECK(flat.code == 0);
    const Json table = Json::parse(flat.out);
    CHECK(table.at("x1") == Json({"a", "b", "c"}));
    CHECK(table.at("x2") == Json({"a", "b"}));
    CHECK(table.at("x3") == Json({"a", "b", "d"}));
    CHECK(table.at("x4") == Json({"a"}));

    const Run pot = run({"check-functor", "--functor", "Pot(X)", "--cospan", "pot_counterexample.json", "--mode",
                         "ordinary"});
    CHECK(pot.code == 0);
    const Json verdict = Json::parse(pot.out);
    CHECK(verdict.at("holds") == false);
    CHECK(verdict.at("sizes") == Json({16, 10}));
    const Json weak = Json::parse(
        run({"check-functor", "--functor", "Pot(X)", "--cospan", "pot.counterexample", "--mode", "weak"}).out);
    CHECK(weak.at("holds") == true);

    const Run empty = run({"validate", "--graph", "empty.json"});
    CHECK(empty.code == 0);
    CHECK(Json::parse(empty.out).at("issues").empty());
}

TEST_CASE("cli exit codes") {
    CHECK(run({}).code == 2);
    CHECK(run({"flatten"}).code == 2);
    CHECK(run({"frobnicate"}).code == 2);
    CHECK(run({"--help"}).code == 0);

    const Run missing = run({"flatten", "--graph", "no-such-thing"});
    CHECK(missing.code == 1);
    CHECK(Json::parse(missing.out).at("error").at("code") == "InvalidInput");
    const Run unknown = run({"fixtures", "dump", "nope"});
    CHECK(unknown.code == 1);
    CHECK(Json::parse(unknown.out).at("error").at("code") == "UnknownFixture");
    const Run no_match = run({"apply", "--graph", "fig6.graph", "--rule", "fig6.rule", "--match", "500"});
    CHECK(no_match.code == 1);
    CHECK(Json::parse(no_match.out).at("error").at("code") == "NoSuchMatch");
}

TEST_CASE("cli graph-level limits and checks") {
    gen::Rng rng(83);
    const CoalgGraph B = gen::random_pot_graph("b", 3, 2, rng);
    const GraphMorphism f = gen::random_quotient(B, "d", 1, rng);
    const GraphMorphism g = gen::random_subgraph(f.dst, rng);
    const fs::path cospan = scratch("cospan.json", {{"B", to_json(B)},
                                                    {"C", to_json(g.src)},
                                                    {"D", to_json(f.dst)},
                                                    {"f", morphism_to_json(f.map)},
                                                    {"g", morphism_to_json(g.map)}});
    const Run pb = run({"pullback", "--cospan", cospan.string()});
    REQUIRE(pb.code == 0);
    CHECK(graph_from_json(Json::parse(pb.out).at("apex")) == coalg_pullback(f, g).apex);

    const GraphMorphism m = gen::random_extension(B, "x", 1, rng);
    const fs::path span = scratch("span.json", {{"A", to_json(B)},
                                                {"B", to_json(m.dst)},
                                                {"C", to_json(f.dst)},
                                                {"f", morphism_to_json(m.map)},
                                                {"g", morphism_to_json(f.map)}});
    const Run po = run({"pushout", "--span", span.string()});
    REQUIRE(po.code == 0);
    CHECK(graph_from_json(Json::parse(po.out).at("apex")) == coalg_pushout(m, f).apex);

    const fs::path src = scratch("src.json", to_json(B));
    const fs::path dst = scratch("dst.json", to_json(f.dst));
    const fs::path map = scratch("map.json", morphism_to_json(f.map));
    const Run mc = run({"morphism-check", "--graph", src.string(), "--graph", dst.string(), "--morphism", map.string()});
    CHECK(mc.code == 0);
    CHECK(Json::parse(mc.out).at("homomorphism") == true);

    const fs::path cube = scratch("cube.json", to_json(gen::random_vk_cube(rng)));
    const Run vk = run({"vk-check", "--cube", cube.string()});
    CHECK(vk.code == 0);
    CHECK(Json::parse(vk.out).at("biconditional_holds") == true);
}

TEST_CASE("cli rewriting commands") {
    const Run matches = run({"matches", "--graph", "fig6.graph", "--rule", "fig6.rule"});
    CHECK(matches.code == 0);
    CHECK(Json::parse(matches.out).at("count") == 128);
    CHECK(Json::parse(matches.out).at("matches").size() == 128);
    const Run step = run({"apply", "--graph", "fig6.graph", "--rule", "fig6.rule", "--match", "3"});
    CHECK(step.code == 0);
    const Run there_and_back =
        run({"derive", "--graph", "fig6.graph", "--rule", "fig6.rule", "--schedule", "replace:0,replace^-1:0"});
    CHECK(there_and_back.code == 0);
    const Run stuck = run({"derive", "--graph", "fig6.graph", "--rule", "fig6.rule", "--schedule", "replace:0,replace:0"});
    CHECK(stuck.code == 1);
    CHECK(Json::parse(stuck.out).at("error").at("message").get<std::string>().find("step 1") != std::string::npos);
}

TEST_CASE("cli output is byte-stable and --out writes the same bytes") {
    const std::vector<std::vector<std::string>> commands{
        {"flatten", "--graph", "motiv.G2"},
        {"properties", "--graph", "fig5.palacz"},
        {"validate", "--graph", "fig3.bkk", "--kind", "bkk"},
        {"membership"},
        {"fixtures", "list"},
        {"export-dot", "--graph", "fig7.bigraph"},
        {"apply", "--graph", "fig6.graph", "--rule", "fig6.rule"},
    };
    for (const auto& cmd : commands) {
        CAPTURE(cmd.front());
        const Run a = run(cmd), b = run(cmd);
        CHECK(a.code == 0);
        CHECK(a.out == b.out);
        auto with_out = cmd;
        const fs::path p = fs::temp_directory_path() / "adhesia_tests_out.txt";
        with_out.insert(with_out.end(), {"--out", p.string()});
        CHECK(run(with_out).code == 0);
        CHECK(slurp(p) == a.out);
    }
}

TEST_CASE("shipped fixture files match the built-in data") {
    for (const auto& name : fixture_names()) {
        CAPTURE(name);
        const fs::path p = fs::path(ADHESIA_DATA_DIR) / "fixtures" / (name + ".json");
        REQUIRE(fs::exists(p));
        CHECK(slurp(p) == run({"fixtures", "dump", name}).out);
        CHECK(run({"validate", "--graph", p.string()}).code == (std::holds_alternative<CoalgGraph>(fixture(name)) ? 0 : 1));
    }
}

TEST_CASE("dot rendering") {
    CHECK(export_dot(fixture_graph("empty")) == "digraph adhesia {\n}\n");
    const std::string g1 = export_dot(fixture_graph("motiv.G1"));
    for (const char* n : {"n4", "n5", "n6"}) {
        CAPTURE(n);
        CHECK(g1.find("label=\"" + std::string(n) + "\";") != std::string::npos);
    }
    const std::string big = export_dot(fixture_graph("fig7.bigraph"));
    // Both roots open a top-level cluster.
    CHECK(count(big, "\n  subgraph cluster_") == 2);
    CHECK(big.find("label=\"𝟎\";") != std::string::npos);
    CHECK(big.find("label=\"𝟏\";") != std::string::npos);
    CHECK(count(big, "[shape=box") == fixture_graph("fig7.bigraph").E.size());
}
