#include "adhesia/dpo.hpp"

#include "adhesia/error.hpp"

namespace adhesia {

Rule Rule::inverse() const { return {name.empty() ? name : name + "^-1", R, K, L, r, l}; }

void validate_rule(const Rule& rule) {
    for (const CoalgGraph* G : {&rule.L, &rule.K, &rule.R}) {
        require_valid(*G);
        if (!(G->sig == rule.K.sig)) throw Error(ErrorCode::SignatureMismatch, "rule graphs differ in signature");
    }
    if (!rule.l.is_injective() || !rule.r.is_injective()) {
        throw Error(ErrorCode::NotInjective, "rule morphisms must be injective");
    }
    for (const auto& [map, dst, name] :
         {std::tuple{&rule.l, &rule.L, "l"}, std::tuple{&rule.r, &rule.R, "r"}}) {
        const auto check = check_morphism(rule.K, *map, *dst);
        if (!check.ok) {
            throw Error(ErrorCode::InvalidInput,
                        std::string("rule morphism ") + name + " fails at '" + check.witness + "'");
        }
    }
}

std::vector<SortedFunction> find_matches(const Rule& rule, const CoalgGraph& G, Exec exec) {
    if (!(rule.L.sig == G.sig)) {
        throw Error(ErrorCode::SignatureMismatch, "rule and graph differ in signature");
    }
    return all_morphisms(rule.L, G, true, exec);
}

namespace {

struct Deleted {
    FinSet N;
    FinSet E;
};

Deleted deleted_by(const Rule& rule, const SortedFunction& match) {
    std::vector<AtomId> n, e;
    for (const auto& x : set_difference(rule.L.N, rule.l.fN.image())) n.push_back(match.fN(x));
    for (const auto& x : set_difference(rule.L.E, rule.l.fE.image())) e.push_back(match.fE(x));
    return {FinSet(std::move(n)), FinSet(std::move(e))};
}

}  // namespace

GluingReport gluing_check(const Rule& rule, const SortedFunction& match, const CoalgGraph& G) {
    const Deleted del = deleted_by(rule, match);
    GluingReport rep;
    auto scan = [&](const AtomId& x, const Term& t) {
        for (const auto& a : atoms_of(t)) {
            if (del.N.contains(a) || del.E.contains(a)) {
                rep.ok = false;
                rep.dangling.push_back(x);
                return;
            }
        }
    };
    for (const auto& n : G.N)
        if (!del.N.contains(n)) scan(n, G.node_of(n));
    for (const auto& e : G.E)
        if (!del.E.contains(e)) scan(e, G.st_of(e));
    return rep;
}

RuleApplication apply_rule(const Rule& rule, const SortedFunction& match, const CoalgGraph& G) {
    if (!match.is_injective()) throw Error(ErrorCode::NotInjective, "match is not injective");
    const auto hom = check_morphism(rule.L, match, G);
    if (!hom.ok) throw Error(ErrorCode::InvalidInput, "match is not a homomorphism at '" + hom.witness + "'");
    const GluingReport glue = gluing_check(rule, match, G);
    if (!glue.ok) {
        throw Error(ErrorCode::GluingViolation, "dangling reference from '" + glue.dangling.front() + "'");
    }

    const FinComplement cn = pushout_complement(rule.l.fN, match.fN);
    const FinComplement ce = pushout_complement(rule.l.fE, match.fE);
    RuleApplication out;
    out.D = subgraph(G, cn.apex, ce.apex);
    out.k_to_d = {cn.from_iface, ce.from_iface};
    out.d_to_g = {cn.to_host, ce.to_host};

    const GraphMorphism kd{rule.K, out.D, out.k_to_d};
    const GraphMorphism kr{rule.K, rule.R, rule.r};
    const GraphPushout po = coalg_pushout(kd, kr);
    out.H = po.apex;
    out.d_to_h = po.from_b;
    out.comatch = po.from_c;

    const GraphMorphism kl{rule.K, rule.L, rule.l};
    out.left_square_is_pushout =
        is_pushout(kl, kd, GraphMorphism{rule.L, G, match}, GraphMorphism{out.D, G, out.d_to_g});
    out.right_square_is_pushout =
        is_pushout(kr, kd, GraphMorphism{rule.R, out.H, out.comatch}, GraphMorphism{out.D, out.H, out.d_to_h});
    return out;
}

DerivationTrace derive(const CoalgGraph& G, const std::map<std::string, Rule>& rules,
                       const std::vector<std::pair<std::string, std::size_t>>& schedule) {
    DerivationTrace trace;
    trace.result = G;
    for (std::size_t step = 0; step < schedule.size(); ++step) {
        const auto& [name, index] = schedule[step];
        const std::string where = "step " + std::to_string(step) + ": ";
        auto it = rules.find(name);
        if (it == rules.end()) throw Error(ErrorCode::NoSuchMatch, where + "unknown rule '" + name + "'");
        const auto matches = find_matches(it->second, trace.result);
        if (index >= matches.size()) {
            throw Error(ErrorCode::NoSuchMatch, where + "rule '" + name + "' has " +
                                                    std::to_string(matches.size()) + " matches, index " +
                                                    std::to_string(index) + " requested");
        }
        RuleApplication app;
        try {
            app = apply_rule(it->second, matches[index], trace.result);
        } catch (const Error& e) {
            throw Error(e.code(), where + e.what());
        }
        trace.steps.push_back({name, index, matches[index], app.D, app.H});
        trace.result = std::move(app.H);
    }
    return trace;
}

}  // namespace adhesia
