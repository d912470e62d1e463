#include "adhesia/category.hpp"

#include "adhesia/error.hpp"

namespace adhesia {

namespace {

void require_same_signature(const CoalgGraph& a, const CoalgGraph& b) {
    if (!(a.sig == b.sig)) {
        throw Error(ErrorCode::SignatureMismatch,
                    "signatures differ: " + a.sig.to_string() + " vs " + b.sig.to_string());
    }
}

void require_homomorphism(const GraphMorphism& m, const char* what) {
    const auto check = check_morphism(m);
    if (!check.ok) {
        throw Error(ErrorCode::InvalidInput,
                    std::string(what) + " is not a homomorphism at '" + check.witness + "'");
    }
}

}  // namespace

GraphPullback coalg_pullback(const GraphMorphism& f, const GraphMorphism& g, bool check_preservation,
                             const EnumBounds& bounds) {
    require_same_signature(f.src, g.src);
    require_same_signature(f.dst, g.dst);
    require_same_signature(f.src, f.dst);
    if (!(f.dst == g.dst)) throw Error(ErrorCode::CodomainMismatch, "pullback legs have different targets");
    if (!g.map.is_injective()) throw Error(ErrorCode::NonInjectiveLeg, "pullback leg g is not injective");

    const Cospan cs{f.map, g.map};
    GraphPullback out;
    if (check_preservation) {
        for (const FunctorExpr* F : {&f.src.sig.node, &f.src.sig.st}) {
            const auto v = check_pb_preservation(*F, cs, bounds, PreservationMode::AlongMonos);
            if (!v.holds) out.warnings.push_back(F->to_string() + " does not preserve this pullback");
        }
    }
    const SortedPullback pb = carrier_pullback(cs);
    const Signature& sig = f.src.sig;
    out.apex = CoalgGraph{sig, pb.apex.N, pb.apex.E, {}, {}};
    for (const auto& x : pb.apex.N) {
        const AtomId& b = pb.to_b.fN(x);
        const AtomId& c = pb.to_c.fN(x);
        out.apex.node.emplace(x, inverse_hbar(sig.node, cs, f.src.node_of(b), g.src.node_of(c)));
    }
    for (const auto& x : pb.apex.E) {
        const AtomId& b = pb.to_b.fE(x);
        const AtomId& c = pb.to_c.fE(x);
        out.apex.st.emplace(x, inverse_hbar(sig.st, cs, f.src.st_of(b), g.src.st_of(c)));
    }
    out.to_b = pb.to_b;
    out.to_c = pb.to_c;
    require_homomorphism({out.apex, f.src, out.to_b}, "pullback projection to B");
    require_homomorphism({out.apex, g.src, out.to_c}, "pullback projection to C");
    return out;
}

namespace {

GraphPushout pushout_unchecked(const GraphMorphism& f, const GraphMorphism& g) {
    require_same_signature(f.src, g.src);
    require_same_signature(f.src, f.dst);
    require_same_signature(g.src, g.dst);
    if (!(f.src == g.src)) throw Error(ErrorCode::DomainMismatch, "pushout legs have different sources");

    const FinPushout pn = pushout(f.map.fN, g.map.fN);
    const FinPushout pe = pushout(f.map.fE, g.map.fE);
    if (!disjoint(pn.apex, pe.apex)) {
        throw Error(ErrorCode::InvalidInput, "pushout produced a name that is both a node and an edge");
    }
    const Signature& sig = f.src.sig;
    GraphPushout out{CoalgGraph{sig, pn.apex, pe.apex, {}, {}}, {pn.from_b, pe.from_b},
                     {pn.from_c, pe.from_c}};

    auto define = [&](std::map<AtomId, Term>& table, const AtomId& d, Term value) {
        auto [it, fresh] = table.emplace(d, value);
        if (!fresh && !(it->second == value)) {
            throw Error(ErrorCode::StructureClash, "glued elements of '" + d + "' disagree: " +
                                                       it->second.to_string() + " vs " + value.to_string());
        }
    };
    for (const auto& b : f.dst.N)
        define(out.apex.node, pn.from_b(b), map_element(sig.node, out.from_b, f.dst.node_of(b)));
    for (const auto& c : g.dst.N)
        define(out.apex.node, pn.from_c(c), map_element(sig.node, out.from_c, g.dst.node_of(c)));
    for (const auto& b : f.dst.E)
        define(out.apex.st, pe.from_b(b), map_element(sig.st, out.from_b, f.dst.st_of(b)));
    for (const auto& c : g.dst.E)
        define(out.apex.st, pe.from_c(c), map_element(sig.st, out.from_c, g.dst.st_of(c)));
    return out;
}

}  // namespace

GraphPushout coalg_pushout(const GraphMorphism& f, const GraphMorphism& g) {
    if (!f.map.is_injective()) throw Error(ErrorCode::NotInM, "pushout leg f is not injective");
    GraphPushout out = pushout_unchecked(f, g);
    require_homomorphism({f.dst, out.apex, out.from_b}, "pushout injection from B");
    require_homomorphism({g.dst, out.apex, out.from_c}, "pushout injection from C");
    return out;
}

SortedFunction induced_from_pushout(const GraphPushout& po, const SortedFunction& p,
                                    const SortedFunction& q) {
    const FinPushout pn{po.apex.N, po.from_b.fN, po.from_c.fN};
    const FinPushout pe{po.apex.E, po.from_b.fE, po.from_c.fE};
    return {induced_from_pushout(pn, p.fN, q.fN), induced_from_pushout(pe, p.fE, q.fE)};
}

bool is_pushout(const GraphMorphism& f, const GraphMorphism& g, const GraphMorphism& p,
                const GraphMorphism& q) {
    if (!(compose(p.map, f.map) == compose(q.map, g.map))) return false;
    if (!check_morphism(p).ok || !check_morphism(q).ok) return false;
    try {
        const bool swap = !f.map.is_injective();
        const GraphPushout po = swap ? pushout_unchecked(g, f) : pushout_unchecked(f, g);
        const SortedFunction u =
            swap ? induced_from_pushout(po, q.map, p.map) : induced_from_pushout(po, p.map, q.map);
        return u.is_bijective() && check_morphism(po.apex, u, p.dst).ok;
    } catch (const Error& e) {
        if (e.code() == ErrorCode::StructureClash || e.code() == ErrorCode::InvalidInput) return false;
        throw;
    }
}

bool is_pullback(const GraphMorphism& p, const GraphMorphism& q, const GraphMorphism& f,
                 const GraphMorphism& g) {
    if (!(compose(f.map, p.map) == compose(g.map, q.map))) return false;
    if (!check_morphism(p).ok || !check_morphism(q).ok) return false;
    const bool swap = !g.map.is_injective();
    if (swap && !f.map.is_injective()) {
        throw Error(ErrorCode::NonInjectiveLeg, "is_pullback needs an injective leg");
    }
    const GraphPullback pb = swap ? coalg_pullback(g, f) : coalg_pullback(f, g);
    const Cospan cs = swap ? Cospan{g.map, f.map} : Cospan{f.map, g.map};
    const SortedFunction& to_first = swap ? q.map : p.map;
    const SortedFunction& to_second = swap ? p.map : q.map;
    const FinPullback pn{pb.apex.N, pb.to_b.fN, pb.to_c.fN};
    const FinPullback pe{pb.apex.E, pb.to_b.fE, pb.to_c.fE};
    const SortedFunction v{induced_into_pullback(pn, cs.f.fN, cs.g.fN, to_first.fN, to_second.fN),
                           induced_into_pullback(pe, cs.f.fE, cs.g.fE, to_first.fE, to_second.fE)};
    return v.is_bijective() && check_morphism(p.src, v, pb.apex).ok;
}

// ---------------------------------------------------------------------------

namespace {

[[noreturn]] void malformed(const std::string& what) { throw Error(ErrorCode::MalformedCube, what); }

}  // namespace

VkVerdict vk_cube_check(const VkCube& k) {
    const std::pair<const CoalgGraph*, const char*> graphs[] = {
        {&k.A1, "A'"}, {&k.B1, "B'"}, {&k.C1, "C'"}, {&k.D1, "D'"},
        {&k.A, "A"},   {&k.B, "B"},   {&k.C, "C"},   {&k.D, "D"}};
    for (const auto& [G, name] : graphs) {
        if (!validate_graph(*G).empty()) malformed(std::string("graph ") + name + " is invalid");
        if (!(G->sig == k.A.sig)) malformed(std::string("graph ") + name + " has another signature");
    }

    const GraphMorphism m1{k.A1, k.B1, k.m1}, f1{k.A1, k.C1, k.f1}, g1{k.B1, k.D1, k.g1},
        n1{k.C1, k.D1, k.n1};
    const GraphMorphism m{k.A, k.B, k.m}, f{k.A, k.C, k.f}, g{k.B, k.D, k.g}, n{k.C, k.D, k.n};
    const GraphMorphism a{k.A1, k.A, k.a}, b{k.B1, k.B, k.b}, c{k.C1, k.C, k.c}, d{k.D1, k.D, k.d};
    const std::pair<const GraphMorphism*, const char*> arrows[] = {
        {&m1, "m'"}, {&f1, "f'"}, {&g1, "g'"}, {&n1, "n'"}, {&m, "m"}, {&f, "f"},
        {&g, "g"},   {&n, "n"},   {&a, "a"},   {&b, "b"},   {&c, "c"}, {&d, "d"}};
    for (const auto& [h, name] : arrows) {
        bool ok = false;
        try {
            ok = check_morphism(*h).ok;
        } catch (const Error&) {
            ok = false;
        }
        if (!ok) malformed(std::string("morphism ") + name + " is not a homomorphism");
    }
    for (const auto& [h, name] : {arrows[8], arrows[9], arrows[10], arrows[11]}) {
        if (!h->map.is_injective()) malformed(std::string("vertical ") + name + " is not injective");
    }

    auto commutes = [](const SortedFunction& p2, const SortedFunction& p1, const SortedFunction& q2,
                       const SortedFunction& q1) { return compose(p2, p1) == compose(q2, q1); };
    if (!commutes(k.g1, k.m1, k.n1, k.f1)) malformed("top face does not commute");
    if (!commutes(k.g, k.m, k.n, k.f)) malformed("bottom face does not commute");
    if (!commutes(k.b, k.m1, k.m, k.a)) malformed("back face over m does not commute");
    if (!commutes(k.c, k.f1, k.f, k.a)) malformed("back face over f does not commute");
    if (!commutes(k.d, k.g1, k.g, k.b)) malformed("front face over g does not commute");
    if (!commutes(k.d, k.n1, k.n, k.c)) malformed("front face over n does not commute");

    if (!is_pushout(m, f, g, n)) malformed("bottom face is not a pushout");
    if (!is_pullback(a, m1, m, b)) malformed("back face over m is not a pullback");
    if (!is_pullback(a, f1, f, c)) malformed("back face over f is not a pullback");

    VkVerdict v;
    v.top_is_pushout = is_pushout(m1, f1, g1, n1);
    v.fronts_are_pullbacks = is_pullback(b, g1, g, d) && is_pullback(c, n1, n, d);
    v.biconditional_holds = v.top_is_pushout == v.fronts_are_pullbacks;
    return v;
}

std::vector<VkVerdict> vk_cube_check_batch(const std::vector<VkCube>& cubes, Exec exec) {
    std::vector<VkVerdict> out(cubes.size());
    for_each_index(exec, cubes.size(), [&](std::size_t i) { out[i] = vk_cube_check(cubes[i]); });
    return out;
}

// ---------------------------------------------------------------------------

MClassReport m_class_suite(const std::vector<MSample>& samples) {
    MClassReport r;
    r.samples = samples.size();
    auto note = [&](bool& flag, std::size_t i, const std::string& what) {
        flag = false;
        r.witnesses.push_back("sample " + std::to_string(i) + ": " + what);
    };
    auto identity_ok = [](const CoalgGraph& G) {
        const GraphMorphism id = identity_morphism(G);
        return id.map.is_injective() && check_morphism(id).ok;
    };

    for (std::size_t i = 0; i < samples.size(); ++i) {
        const MSample& s = samples[i];
        for (const CoalgGraph* G : {&s.first.src, &s.first.dst, &s.second.src, &s.second.dst}) {
            if (!identity_ok(*G)) note(r.contains_identities, i, "identity is not in M");
        }
        switch (s.kind) {
            case MSample::Kind::Span: {
                const GraphPushout po = coalg_pushout(s.first, s.second);
                const GraphMorphism leg{s.second.dst, po.apex, po.from_c};
                if (!leg.map.is_injective() || !check_morphism(leg).ok)
                    note(r.stable_under_pushout, i, "pushout leg is not in M");
                break;
            }
            case MSample::Kind::Cospan: {
                const GraphPullback pb = coalg_pullback(s.first, s.second);
                const GraphMorphism leg{pb.apex, s.first.src, pb.to_b};
                if (!leg.map.is_injective() || !check_morphism(leg).ok)
                    note(r.stable_under_pullback, i, "pullback leg is not in M");
                break;
            }
            case MSample::Kind::Chain: {
                const GraphMorphism comp = compose(s.second, s.first);
                if (!comp.map.is_injective() || !check_morphism(comp).ok)
                    note(r.closed_under_composition, i, "composite is not in M");
                break;
            }
        }
    }
    return r;
}

}  // namespace adhesia
