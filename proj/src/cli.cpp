#include "adhesia/cli.hpp"

#include <filesystem>
#include <fstream>
#include <functional>
#include <ostream>

#include "CLI11.hpp"
#include "adhesia/dot.hpp"
#include "adhesia/encodings.hpp"
#include "adhesia/error.hpp"
#include "adhesia/serialize.hpp"

namespace adhesia {

namespace {

struct Options {
    std::vector<std::string> graphs;
    std::vector<std::string> rules;
    std::string morphism, cospan, span, cube, functor, kind, schedule, out;
    std::string mode = "ordinary";
    std::size_t match = 0;
    std::size_t depth = 3, width = 3, length = 3;
    std::vector<std::string> positional;

    EnumBounds bounds() const { return {depth, width, length}; }
};

/// A JSON file, or a fixture name (an optional ".json" suffix is ignored).
Json load(const std::string& source) {
    if (std::filesystem::exists(source)) return read_json_file(source);
    std::string name = source;
    if (name.size() > 5 && name.ends_with(".json")) name.resize(name.size() - 5);
    const auto names = fixture_names();
    auto known = [&](const std::string& n) { return std::find(names.begin(), names.end(), n) != names.end(); };
    // File-style spellings such as pot_counterexample name the dotted fixture.
    if (!known(name)) std::replace(name.begin(), name.end(), '_', '.');
    if (!known(name)) {
        throw Error(ErrorCode::InvalidInput, "cannot open '" + source + "'");
    }
    return std::visit([](const auto& v) { return to_json(v); }, fixture(name));
}

CoalgGraph load_graph(const std::string& source) { return graph_from_json(load(source)); }

Rule load_rule(const std::string& source) {
    Rule r = rule_from_json(load(source));
    validate_rule(r);
    return r;
}

const std::string& one(const std::vector<std::string>& xs, const char* flag) {
    if (xs.size() != 1) throw Error(ErrorCode::InvalidInput, std::string("expected exactly one ") + flag);
    return xs.front();
}

GraphMorphism morphism_between(const Json& j, const char* key, const CoalgGraph& src, const CoalgGraph& dst) {
    const Json& m = j.contains(key) ? j.at(key) : throw Error(ErrorCode::InvalidInput,
                                                              std::string("missing morphism '") + key + "'");
    return {src, dst, morphism_from_json(m, src, dst)};
}

Json issues_json(const std::vector<ValidationIssue>& issues) {
    Json a = Json::array();
    for (const auto& i : issues) a.push_back({{"element", i.element}, {"reason", i.reason}});
    return a;
}

Json cmd_validate(const Options& o) {
    const CoalgGraph G = load_graph(one(o.graphs, "--graph"));
    const auto issues = validate_graph(G);
    Json j{{"valid", issues.empty()}, {"issues", issues_json(issues)}};
    if (!o.kind.empty()) {
        const EncodingReport rep = validate_encoding(G, EncodingKind::parse(o.kind));
        Json v = Json::array();
        for (const auto& x : rep.violations) v.push_back({{"rule", x.rule}, {"element", x.element}});
        j["encoding"] = {{"kind", o.kind}, {"ok", rep.ok}, {"violations", v}};
    }
    return j;
}

Json cmd_morphism_check(const Options& o) {
    if (o.graphs.size() != 2) throw Error(ErrorCode::InvalidInput, "expected --graph SRC --graph DST");
    const CoalgGraph src = load_graph(o.graphs[0]);
    const CoalgGraph dst = load_graph(o.graphs[1]);
    const SortedFunction f = morphism_from_json(load(o.morphism), src, dst);
    const MorphismCheck c = check_morphism(src, f, dst);
    return {{"homomorphism", c.ok}, {"injective", f.is_injective()}, {"witness", c.witness}};
}

Json flatten_json(const std::map<AtomId, AtomSet>& table) {
    Json j = Json::object();
    for (const auto& [e, s] : table) j[e] = std::vector<AtomId>(s.begin(), s.end());
    return j;
}

Json cmd_flatten(const Options& o) {
    const CoalgGraph G = load_graph(one(o.graphs, "--graph"));
    require_valid(G);
    return flatten_json(flatten(G));
}

Json cmd_properties(const Options& o) {
    const CoalgGraph G = load_graph(one(o.graphs, "--graph"));
    require_valid(G);
    return {{"nodes", to_json(node_properties(G))}, {"edges", to_json(edge_properties(G))}};
}

/// {"B": graph, "C": graph, "D": graph, "f": B->D, "g": C->D}
Json cmd_pullback(const Options& o) {
    const Json j = load(o.cospan);
    const CoalgGraph B = graph_from_json(j.at("B")), C = graph_from_json(j.at("C")), D = graph_from_json(j.at("D"));
    const GraphPullback pb =
        coalg_pullback(morphism_between(j, "f", B, D), morphism_between(j, "g", C, D), true, o.bounds());
    return {{"apex", to_json(pb.apex)},
            {"to_b", morphism_to_json(pb.to_b)},
            {"to_c", morphism_to_json(pb.to_c)},
            {"warnings", pb.warnings}};
}

/// {"A": graph, "B": graph, "C": graph, "f": A->B, "g": A->C}
Json cmd_pushout(const Options& o) {
    const Json j = load(o.span);
    const CoalgGraph A = graph_from_json(j.at("A")), B = graph_from_json(j.at("B")), C = graph_from_json(j.at("C"));
    const GraphPushout po = coalg_pushout(morphism_between(j, "f", A, B), morphism_between(j, "g", A, C));
    return {{"apex", to_json(po.apex)},
            {"from_b", morphism_to_json(po.from_b)},
            {"from_c", morphism_to_json(po.from_c)}};
}

Json cmd_matches(const Options& o) {
    const Rule r = load_rule(one(o.rules, "--rule"));
    const CoalgGraph G = load_graph(one(o.graphs, "--graph"));
    const auto ms = find_matches(r, G, Exec::Parallel);
    Json a = Json::array();
    for (const auto& m : ms) a.push_back(morphism_to_json(m));
    return {{"count", ms.size()}, {"matches", a}};
}

Json cmd_apply(const Options& o) {
    const Rule r = load_rule(one(o.rules, "--rule"));
    const CoalgGraph G = load_graph(one(o.graphs, "--graph"));
    const auto ms = find_matches(r, G, Exec::Parallel);
    if (o.match >= ms.size()) {
        throw Error(ErrorCode::NoSuchMatch, "rule has " + std::to_string(ms.size()) + " matches, index " +
                                                std::to_string(o.match) + " requested");
    }
    const RuleApplication app = apply_rule(r, ms[o.match], G);
    return {{"match", morphism_to_json(ms[o.match])},
            {"context", to_json(app.D)},
            {"result", to_json(app.H)},
            {"comatch", morphism_to_json(app.comatch)},
            {"left_square_is_pushout", app.left_square_is_pushout},
            {"right_square_is_pushout", app.right_square_is_pushout}};
}

/// "name:index,name:index"
std::vector<std::pair<std::string, std::size_t>> parse_schedule(const std::string& text) {
    std::vector<std::pair<std::string, std::size_t>> out;
    std::stringstream in(text);
    std::string item;
    while (std::getline(in, item, ',')) {
        const auto colon = item.rfind(':');
        std::size_t idx = 0;
        std::string name = item;
        if (colon != std::string::npos) {
            name = item.substr(0, colon);
            try {
                idx = std::stoul(item.substr(colon + 1));
            } catch (const std::exception&) {
                throw Error(ErrorCode::InvalidInput, "bad schedule entry '" + item + "'");
            }
        }
        out.emplace_back(name, idx);
    }
    return out;
}

Json cmd_derive(const Options& o) {
    std::map<std::string, Rule> rules;
    for (const auto& source : o.rules) {
        Rule r = load_rule(source);
        const std::string name = r.name;
        rules.insert_or_assign(name, std::move(r));
        rules.insert_or_assign(name + "^-1", rules.at(name).inverse());
    }
    const CoalgGraph G = load_graph(one(o.graphs, "--graph"));
    const DerivationTrace trace = derive(G, rules, parse_schedule(o.schedule));
    Json steps = Json::array();
    for (const auto& s : trace.steps) {
        steps.push_back({{"rule", s.rule}, {"match_index", s.match_index}, {"match", morphism_to_json(s.match)}});
    }
    return {{"steps", steps}, {"result", to_json(trace.result)}};
}

Json cmd_check_functor(const Options& o) {
    const FunctorExpr F = parse_functor(o.functor);
    const Cospan cs = cospan_from_json(load(o.cospan));
    Json j = to_json(check_pb_preservation(F, cs, o.bounds(), parse_mode(o.mode)));
    j["functor"] = F.to_string();
    j["mode"] = to_string(parse_mode(o.mode));
    return j;
}

Json cmd_vk_check(const Options& o) { return to_json(vk_cube_check(cube_from_json(load(o.cube)))); }

Json cmd_membership(const Options&) {
    const MembershipMatrix m = membership_matrix();
    Json cells = Json::array();
    for (const auto& c : m.cells) {
        cells.push_back({{"graph", c.graph},
                         {"flavor", c.flavor.to_string()},
                         {"strict", c.strict},
                         {"expected", c.expected},
                         {"failing_edges", c.failing_edges}});
    }
    Json facts = Json::array();
    for (const auto& f : m.facts) {
        facts.push_back({{"label", f.label},
                         {"term", f.term.to_string()},
                         {"flavor", f.flavor.to_string()},
                         {"universe", std::vector<AtomId>(f.universe.begin(), f.universe.end())},
                         {"expected", f.expected},
                         {"holds", f.holds}});
    }
    return {{"cells", cells}, {"facts", facts}, {"discrepancies", m.discrepancies}};
}

Json cmd_fixtures(const Options& o) {
    if (o.positional.empty() || o.positional[0] == "list") return fixture_names();
    if (o.positional[0] == "dump" && o.positional.size() == 2) {
        return std::visit([](const auto& v) { return to_json(v); }, fixture(o.positional[1]));
    }
    throw Error(ErrorCode::InvalidInput, "usage: fixtures list | fixtures dump NAME");
}

void emit(const Options& o, const std::string& text, std::ostream& out) {
    if (o.out.empty()) {
        out << text;
        return;
    }
    std::ofstream f(o.out, std::ios::binary);
    if (!f) throw Error(ErrorCode::InvalidInput, "cannot write '" + o.out + "'");
    f << text;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Coalgebraic graph transformation toolkit", "adhesia"};
    app.require_subcommand(1);
    Options o;

    auto bounds = [&](CLI::App* c) {
        c->add_option("--depth", o.depth, "Enumeration depth bound");
        c->add_option("--width", o.width, "Enumeration width bound");
        c->add_option("--len", o.length, "Enumeration sequence length bound");
    };
    auto graph = [&](CLI::App* c, bool many = false) {
        auto* opt = c->add_option("--graph", o.graphs, "Graph JSON file or fixture name")->required();
        if (!many) opt->expected(1);
    };

    std::map<CLI::App*, std::function<Json(const Options&)>> handlers;
    std::string dot_text;

    auto* c = app.add_subcommand("validate", "Check a graph against its signature");
    graph(c);
    c->add_option("--kind", o.kind, "Encoding whose side conditions to check");
    handlers[c] = cmd_validate;

    c = app.add_subcommand("morphism-check", "Check that a map is a homomorphism");
    graph(c, true);
    c->add_option("--morphism", o.morphism, "Morphism JSON file")->required();
    handlers[c] = cmd_morphism_check;

    c = app.add_subcommand("flatten", "Flattened neighbour table");
    graph(c);
    handlers[c] = cmd_flatten;

    c = app.add_subcommand("properties", "Node and edge properties");
    graph(c);
    handlers[c] = cmd_properties;

    c = app.add_subcommand("pullback", "Pullback of a cospan of homomorphisms");
    c->add_option("--cospan", o.cospan, "Cospan JSON file")->required();
    bounds(c);
    handlers[c] = cmd_pullback;

    c = app.add_subcommand("pushout", "Pushout of a span of homomorphisms");
    c->add_option("--span", o.span, "Span JSON file")->required();
    handlers[c] = cmd_pushout;

    c = app.add_subcommand("matches", "Injective matches of a rule");
    graph(c);
    c->add_option("--rule", o.rules, "Rule JSON file or fixture name")->required()->expected(1);
    handlers[c] = cmd_matches;

    c = app.add_subcommand("apply", "One rewriting step");
    graph(c);
    c->add_option("--rule", o.rules, "Rule JSON file or fixture name")->required()->expected(1);
    c->add_option("--match", o.match, "Match index in canonical order");
    handlers[c] = cmd_apply;

    c = app.add_subcommand("derive", "Apply a schedule of rules");
    graph(c);
    c->add_option("--rule", o.rules, "Rule JSON files (repeatable)")->required();
    c->add_option("--schedule", o.schedule, "name:index,name:index,...")->required();
    handlers[c] = cmd_derive;

    c = app.add_subcommand("check-functor", "Pullback preservation on a cospan");
    c->add_option("--functor", o.functor, "Functor expression")->required();
    c->add_option("--cospan", o.cospan, "Cospan JSON file")->required();
    c->add_option("--mode", o.mode, "ordinary | monos | weak");
    bounds(c);
    handlers[c] = cmd_check_functor;

    c = app.add_subcommand("vk-check", "Van Kampen check of a cube");
    c->add_option("--cube", o.cube, "Cube JSON file")->required();
    handlers[c] = cmd_vk_check;

    c = app.add_subcommand("membership", "Superpower set membership matrix");
    handlers[c] = cmd_membership;

    c = app.add_subcommand("fixtures", "List or dump built-in fixtures");
    c->add_option("action", o.positional, "list | dump NAME");
    handlers[c] = cmd_fixtures;

    auto* dot = app.add_subcommand("export-dot", "Graphviz rendering");
    graph(dot);

    for (auto* sub : app.get_subcommands({})) sub->add_option("--out", o.out, "Write output to a file");

    std::vector<const char*> argv{"adhesia"};
    for (const auto& a : args) argv.push_back(a.c_str());
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? 0 : 2;
    }

    try {
        CLI::App* chosen = app.get_subcommands().front();
        if (chosen == dot) {
            const CoalgGraph G = load_graph(one(o.graphs, "--graph"));
            require_valid(G);
            emit(o, export_dot(G), out);
        } else {
            emit(o, render(handlers.at(chosen)(o)), out);
        }
        return 0;
    } catch (const Error& e) {
        out << render(Json{{"error", {{"code", to_string(e.code())}, {"message", e.what()}}}});
    } catch (const Json::exception& e) {
        out << render(Json{{"error", {{"code", to_string(ErrorCode::InvalidInput)}, {"message", e.what()}}}});
    }
    return 1;
}

}  // namespace adhesia
