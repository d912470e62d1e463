#include "adhesia/serialize.hpp"

#include <cctype>
#include <fstream>
#include <sstream>

#include "adhesia/error.hpp"

namespace adhesia {

// ---------------------------------------------------------------------------
// Text syntax

namespace {

class TermParser {
public:
    explicit TermParser(std::string_view s) : s_(s) {}

    Term parse() {
        Term t = term();
        skip_ws();
        if (pos_ != s_.size()) fail("trailing input");
        return t;
    }

private:
    std::string_view s_;
    std::size_t pos_ = 0;

    [[noreturn]] void fail(const std::string& msg) const { throw ParseError(pos_, msg); }

    static bool special(char c) {
        return c == '{' || c == '}' || c == '[' || c == ']' || c == '(' || c == ')' || c == ',' ||
               std::isspace(static_cast<unsigned char>(c));
    }

    void skip_ws() {
        while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    }

    bool peek(char c) {
        skip_ws();
        return pos_ < s_.size() && s_[pos_] == c;
    }

    void expect(char c) {
        if (!peek(c)) fail(std::string("expected '") + c + "'");
        ++pos_;
    }

    std::vector<Term> items(char close) {
        std::vector<Term> out;
        if (peek(close)) {
            ++pos_;
            return out;
        }
        for (;;) {
            out.push_back(term());
            if (peek(',')) {
                ++pos_;
                continue;
            }
            expect(close);
            return out;
        }
    }

    Term term() {
        skip_ws();
        if (pos_ >= s_.size()) fail("unexpected end of term");
        const char c = s_[pos_];
        if (c == '{') {
            ++pos_;
            return Term::set(items('}'));
        }
        if (c == '[') {
            ++pos_;
            return Term::seq(items(']'));
        }
        if (c == '(') {
            ++pos_;
            auto xs = items(')');
            if (xs.empty()) return Term::unit();
            if (xs.size() != 2) fail("a pair needs exactly two components");
            return Term::pair(xs[0], xs[1]);
        }
        const std::size_t start = pos_;
        while (pos_ < s_.size() && !special(s_[pos_])) ++pos_;
        if (pos_ == start) fail("expected a term");
        return Term::atom(std::string(s_.substr(start, pos_ - start)));
    }
};

[[noreturn]] void bad(const std::string& msg) { throw Error(ErrorCode::InvalidInput, msg); }

const Json& need(const Json& j, const char* key) {
    if (!j.is_object() || !j.contains(key)) bad(std::string("missing field '") + key + "'");
    return j.at(key);
}

std::string need_string(const Json& j) {
    if (!j.is_string()) bad("expected a string, got " + j.dump());
    return j.get<std::string>();
}

std::vector<AtomId> names_of(const Json& j) {
    if (!j.is_array()) bad("expected an array of names, got " + j.dump());
    std::vector<AtomId> out;
    for (const auto& x : j) out.push_back(need_string(x));
    return out;
}

std::map<AtomId, AtomId> table_of(const Json& j) {
    if (!j.is_object()) bad("expected a name table, got " + j.dump());
    std::map<AtomId, AtomId> out;
    for (const auto& [k, v] : j.items()) out.emplace(k, need_string(v));
    return out;
}

}  // namespace

Term parse_term(std::string_view text) { return TermParser(text).parse(); }

// ---------------------------------------------------------------------------
// Terms and functions

Json to_json(const Term& t) {
    auto list = [&] {
        Json a = Json::array();
        for (const Term& c : t.children()) a.push_back(to_json(c));
        return a;
    };
    switch (t.kind()) {
        case TermKind::Atom: return Json{{"atom", t.name()}};
        case TermKind::Set: return Json{{"set", list()}};
        case TermKind::Pair: return Json{{"pair", list()}};
        case TermKind::Seq: return Json{{"seq", list()}};
        case TermKind::Unit: return Json{{"unit", true}};
    }
    return Json();
}

Term term_from_json(const Json& j) {
    if (!j.is_object() || j.size() != 1) bad("malformed term " + j.dump());
    auto list = [&](const Json& a) {
        if (!a.is_array()) bad("malformed term " + j.dump());
        std::vector<Term> out;
        for (const auto& x : a) out.push_back(term_from_json(x));
        return out;
    };
    const auto& [key, value] = *j.items().begin();
    if (key == "atom") return Term::atom(need_string(value));
    if (key == "set") return Term::set(list(value));
    if (key == "seq") return Term::seq(list(value));
    if (key == "pair") {
        auto xs = list(value);
        if (xs.size() != 2) bad("a pair needs two components: " + j.dump());
        return Term::pair(xs[0], xs[1]);
    }
    if (key == "unit") return Term::unit();
    bad("unknown term tag '" + key + "'");
}

Json to_json(const FinSet& s) { return Json(s.elements()); }

FinSet finset_from_json(const Json& j) { return FinSet(names_of(j)); }

Json to_json(const FinFunction& f) {
    return Json{{"dom", to_json(f.dom())}, {"cod", to_json(f.cod())}, {"map", Json(f.table())}};
}

FinFunction function_from_json(const Json& j) {
    return FinFunction(finset_from_json(need(j, "dom")), finset_from_json(need(j, "cod")),
                       table_of(need(j, "map")));
}

Json morphism_to_json(const SortedFunction& f) {
    return Json{{"nodes", Json(f.fN.table())}, {"edges", Json(f.fE.table())}};
}

SortedFunction morphism_from_json(const Json& j, const CoalgGraph& src, const CoalgGraph& dst) {
    const auto nodes = j.contains("nodes") ? table_of(j.at("nodes")) : std::map<AtomId, AtomId>{};
    const auto edges = j.contains("edges") ? table_of(j.at("edges")) : std::map<AtomId, AtomId>{};
    return {FinFunction(src.N, dst.N, nodes), FinFunction(src.E, dst.E, edges)};
}

// ---------------------------------------------------------------------------
// Graphs and rules

Json to_json(const CoalgGraph& G) {
    Json contains = Json::object();
    for (const auto& [n, t] : G.node) contains[n] = to_json(t);
    Json neighbours = Json::object();
    for (const auto& [e, t] : G.st) neighbours[e] = to_json(t);
    return Json{{"signature", {{"node", G.sig.node.to_string()}, {"st", G.sig.st.to_string()}}},
                {"nodes", to_json(G.N)},
                {"edges", to_json(G.E)},
                {"contains", contains},
                {"neighbours", neighbours}};
}

CoalgGraph graph_from_json(const Json& j) {
    const Json& sig = need(j, "signature");
    CoalgGraph G;
    G.sig = Signature::parse(need_string(need(sig, "node")), need_string(need(sig, "st")));
    G.N = j.contains("nodes") ? finset_from_json(j.at("nodes")) : FinSet{};
    G.E = j.contains("edges") ? finset_from_json(j.at("edges")) : FinSet{};
    if (j.contains("contains")) {
        for (const auto& [k, v] : j.at("contains").items()) G.node.emplace(k, term_from_json(v));
    }
    for (const auto& n : G.N) G.node.emplace(n, Term::unit());
    if (j.contains("neighbours")) {
        for (const auto& [k, v] : j.at("neighbours").items()) G.st.emplace(k, term_from_json(v));
    }
    return G;
}

Json to_json(const Rule& r) {
    Json j{{"left", to_json(r.L)},
           {"interface", to_json(r.K)},
           {"right", to_json(r.R)},
           {"l", morphism_to_json(r.l)},
           {"r", morphism_to_json(r.r)}};
    if (!r.name.empty()) j["name"] = r.name;
    return j;
}

Rule rule_from_json(const Json& j) {
    Rule r;
    r.name = j.contains("name") ? need_string(j.at("name")) : std::string();
    r.L = graph_from_json(need(j, "left"));
    r.K = graph_from_json(need(j, "interface"));
    r.R = graph_from_json(need(j, "right"));
    r.l = morphism_from_json(need(j, "l"), r.K, r.L);
    r.r = morphism_from_json(need(j, "r"), r.K, r.R);
    return r;
}

// ---------------------------------------------------------------------------
// Cospans and cubes

namespace {

Json sorted_to_json(const SortedFunction& f) { return Json{{"N", to_json(f.fN)}, {"E", to_json(f.fE)}}; }

SortedFunction sorted_from_json(const Json& j) {
    if (j.contains("map")) return {function_from_json(j), FinFunction{}};
    SortedFunction f{function_from_json(need(j, "N")), FinFunction{}};
    if (j.contains("E")) f.fE = function_from_json(j.at("E"));
    return f;
}

const char* const kGraphNames[] = {"A'", "B'", "C'", "D'", "A", "B", "C", "D"};
const char* const kArrowNames[] = {"m'", "f'", "g'", "n'", "m", "f", "g", "n", "a", "b", "c", "d"};

}  // namespace

Json to_json(const Cospan& cs) {
    const bool one_sorted = cs.f.fE.dom().empty() && cs.f.fE.cod().empty() && cs.g.fE.dom().empty();
    if (one_sorted) return Json{{"f", to_json(cs.f.fN)}, {"g", to_json(cs.g.fN)}};
    return Json{{"f", sorted_to_json(cs.f)}, {"g", sorted_to_json(cs.g)}};
}

Cospan cospan_from_json(const Json& j) {
    return {sorted_from_json(need(j, "f")), sorted_from_json(need(j, "g"))};
}

Json to_json(const VkCube& k) {
    const CoalgGraph* graphs[] = {&k.A1, &k.B1, &k.C1, &k.D1, &k.A, &k.B, &k.C, &k.D};
    const SortedFunction* arrows[] = {&k.m1, &k.f1, &k.g1, &k.n1, &k.m, &k.f,
                                      &k.g,  &k.n,  &k.a,  &k.b,  &k.c, &k.d};
    Json g = Json::object(), m = Json::object();
    for (int i = 0; i < 8; ++i) g[kGraphNames[i]] = to_json(*graphs[i]);
    for (int i = 0; i < 12; ++i) m[kArrowNames[i]] = morphism_to_json(*arrows[i]);
    return Json{{"graphs", g}, {"morphisms", m}};
}

VkCube cube_from_json(const Json& j) {
    VkCube k;
    CoalgGraph* graphs[] = {&k.A1, &k.B1, &k.C1, &k.D1, &k.A, &k.B, &k.C, &k.D};
    for (int i = 0; i < 8; ++i) {
        try {
            *graphs[i] = graph_from_json(need(need(j, "graphs"), kGraphNames[i]));
        } catch (const Error& e) {
            throw Error(ErrorCode::MalformedCube, std::string("graph ") + kGraphNames[i] + ": " + e.what());
        }
    }
    if (!j.contains("morphisms")) throw Error(ErrorCode::MalformedCube, "missing 'morphisms'");
    const Json& mj = j.at("morphisms");
    struct Arrow {
        SortedFunction* out;
        const CoalgGraph* src;
        const CoalgGraph* dst;
    };
    const Arrow arrows[] = {{&k.m1, &k.A1, &k.B1}, {&k.f1, &k.A1, &k.C1}, {&k.g1, &k.B1, &k.D1},
                            {&k.n1, &k.C1, &k.D1}, {&k.m, &k.A, &k.B},    {&k.f, &k.A, &k.C},
                            {&k.g, &k.B, &k.D},    {&k.n, &k.C, &k.D},    {&k.a, &k.A1, &k.A},
                            {&k.b, &k.B1, &k.B},   {&k.c, &k.C1, &k.C},   {&k.d, &k.D1, &k.D}};
    for (int i = 0; i < 12; ++i) {
        try {
            *arrows[i].out = morphism_from_json(need(mj, kArrowNames[i]), *arrows[i].src, *arrows[i].dst);
        } catch (const Error& e) {
            throw Error(ErrorCode::MalformedCube, std::string("morphism ") + kArrowNames[i] + ": " + e.what());
        }
    }
    return k;
}

// ---------------------------------------------------------------------------
// Reports

namespace {

Json atom_set(const AtomSet& s) { return Json(std::vector<AtomId>(s.begin(), s.end())); }

}  // namespace

Json to_json(const PreservationVerdict& v) {
    Json j{{"holds", v.holds}, {"sizes", {v.size_FA, v.size_P}}};
    if (v.witness) {
        Json terms = Json::array();
        for (const Term& t : v.witness->terms) terms.push_back(to_json(t));
        j["witness"] = {
            {"kind", v.witness->kind == PreservationWitness::Kind::Unhit ? "unhit" : "merged"},
            {"terms", terms}};
    } else {
        j["witness"] = nullptr;
    }
    return j;
}

Json to_json(const VkVerdict& v) {
    return Json{{"top_is_pushout", v.top_is_pushout},
                {"fronts_are_pullbacks", v.fronts_are_pullbacks},
                {"biconditional_holds", v.biconditional_holds}};
}

Json to_json(const MClassReport& r) {
    return Json{{"stable_under_pushout", r.stable_under_pushout},
                {"stable_under_pullback", r.stable_under_pullback},
                {"closed_under_composition", r.closed_under_composition},
                {"contains_identities", r.contains_identities},
                {"samples", r.samples},
                {"witnesses", r.witnesses}};
}

Json to_json(const NodeProperties& p) {
    return Json{{"unique", p.unique},         {"atoms", atom_set(p.atoms)},
                {"containers", atom_set(p.containers)}, {"well_founded", p.well_founded},
                {"acyclic", p.acyclic},       {"hierarchical", p.hierarchical}};
}

Json to_json(const EdgeProperties& p) {
    Json flat = Json::object();
    for (const auto& [e, s] : p.flattened) flat[e] = atom_set(s);
    return Json{{"atomic_edges", atom_set(p.atomic_edges)},
                {"node_based", p.node_based},
                {"atomic", p.atomic},
                {"flattened", flat}};
}

std::string render(const Json& j) { return j.dump(2) + "\n"; }

Json read_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error(ErrorCode::InvalidInput, "cannot open '" + path + "'");
    std::stringstream buf;
    buf << in.rdbuf();
    try {
        return Json::parse(buf.str());
    } catch (const Json::parse_error& e) {
        throw ParseError(e.byte, std::string("JSON syntax error in '") + path + "'");
    }
}

}  // namespace adhesia
