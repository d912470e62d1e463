#include "adhesia/limits.hpp"

#include <map>

#include "adhesia/error.hpp"

namespace adhesia {

SortedPullback carrier_pullback(const Cospan& cs) {
    const FinPullback n = pullback(cs.f.fN, cs.g.fN);
    const FinPullback e = pullback(cs.f.fE, cs.g.fE);
    return {{n.apex, e.apex}, {n.to_b, e.to_b}, {n.to_c, e.to_c}};
}

std::vector<Term> functor_pullback(const FunctorExpr& F, const Cospan& cs, const EnumBounds& bounds) {
    if (!(cs.f.fN.cod() == cs.g.fN.cod()) || !(cs.f.fE.cod() == cs.g.fE.cod())) {
        throw Error(ErrorCode::CodomainMismatch, "cospan legs have different codomains");
    }
    const auto fb = enumerate_functor(F, cs.f.dom(), bounds);
    const auto fc = enumerate_functor(F, cs.g.dom(), bounds);
    std::map<Term, std::vector<const Term*>> by_image;
    for (const Term& y : fc) by_image[map_element(F, cs.g, y)].push_back(&y);
    std::vector<Term> out;
    for (const Term& x : fb) {
        auto it = by_image.find(map_element(F, cs.f, x));
        if (it == by_image.end()) continue;
        for (const Term* y : it->second) out.push_back(Term::pair(x, *y));
    }
    // fb and each fibre are sorted, so out already is.
    return out;
}

Term comparison_h(const FunctorExpr& F, const Cospan& cs, const Term& t) {
    const SortedPullback pb = carrier_pullback(cs);
    if (!element_of(F, pb.apex, t)) {
        throw Error(ErrorCode::NotAnElement, t.to_string() + " is not in " + F.to_string() + "(A)");
    }
    return Term::pair(map_element(F, pb.to_b, t), map_element(F, pb.to_c, t));
}

namespace {

struct HBar {
    const Cospan& cs;
    CarrierEnv b_env;
    CarrierEnv c_env;

    [[noreturn]] void not_in_pullback(const FunctorExpr& F, const Term& x, const Term& y) const {
        throw Error(ErrorCode::NotInPullback, "(" + x.to_string() + ", " + y.to_string() +
                                                  ") is not in the pullback of " + F.to_string());
    }

    Term atom_pair(const FunctorExpr& F, const FinFunction& f, const FinFunction& g, const Term& x,
                   const Term& y) const {
        if (!x.is_atom() || !y.is_atom() || !f.dom().contains(x.name()) ||
            !g.dom().contains(y.name()) || f(x.name()) != g(y.name()))
            not_in_pullback(F, x, y);
        return Term::atom(pair_name(x.name(), y.name()));
    }

    Term operator()(const FunctorExpr& F, const Term& x, const Term& y) const {
        switch (F.kind()) {
            case FunctorKind::SortN:
            case FunctorKind::Id: return atom_pair(F, cs.f.fN, cs.g.fN, x, y);
            case FunctorKind::SortE: return atom_pair(F, cs.f.fE, cs.g.fE, x, y);
            case FunctorKind::Final:
                if (!x.is_unit() || !y.is_unit()) not_in_pullback(F, x, y);
                return Term::unit();
            case FunctorKind::Prod:
                if (!x.is_pair() || !y.is_pair()) not_in_pullback(F, x, y);
                return Term::pair((*this)(F.left(), x.first(), y.first()),
                                  (*this)(F.right(), x.second(), y.second()));
            case FunctorKind::Coprod:
                if (element_of(F.left(), b_env, x) && element_of(F.left(), c_env, y))
                    return (*this)(F.left(), x, y);
                if (element_of(F.right(), b_env, x) && element_of(F.right(), c_env, y))
                    return (*this)(F.right(), x, y);
                not_in_pullback(F, x, y);
            case FunctorKind::Star:
            case FunctorKind::Copy: {
                if (!x.is_seq() || !y.is_seq() || x.size() != y.size()) not_in_pullback(F, x, y);
                std::vector<Term> items;
                for (std::size_t i = 0; i < x.size(); ++i)
                    items.push_back((*this)(F.arg(), x.children()[i], y.children()[i]));
                return Term::seq(std::move(items));
            }
            case FunctorKind::Flavor: {
                if (!x.is_set() || element_of(F.arg(), b_env, x)) return (*this)(F.arg(), x, y);
                if (!y.is_set()) not_in_pullback(F, x, y);
                std::vector<Term> y_images;
                y_images.reserve(y.size());
                for (const Term& yi : y.children()) y_images.push_back(map_element(F, cs.g, yi));
                std::vector<Term> members;
                for (const Term& xi : x.children()) {
                    const Term image = map_element(F, cs.f, xi);
                    for (std::size_t j = 0; j < y.size(); ++j) {
                        if (y_images[j] == image) members.push_back((*this)(F, xi, y.children()[j]));
                    }
                }
                return Term::set(std::move(members));
            }
        }
        not_in_pullback(F, x, y);
    }
};

}  // namespace

Term inverse_hbar(const FunctorExpr& F, const Cospan& cs, const Term& x, const Term& y) {
    if (!cs.g.is_injective()) throw Error(ErrorCode::NonInjectiveLeg, "inverse_hbar: g is not injective");
    const CarrierEnv b_env = cs.f.dom();
    const CarrierEnv c_env = cs.g.dom();
    if (!element_of(F, b_env, x) || !element_of(F, c_env, y) ||
        !(map_element(F, cs.f, x) == map_element(F, cs.g, y))) {
        throw Error(ErrorCode::NotInPullback, "(" + x.to_string() + ", " + y.to_string() +
                                                  ") is not in the pullback of " + F.to_string());
    }
    return HBar{cs, b_env, c_env}(F, x, y);
}

std::string to_string(PreservationMode mode) {
    switch (mode) {
        case PreservationMode::Ordinary: return "ordinary";
        case PreservationMode::AlongMonos: return "monos";
        case PreservationMode::Weak: return "weak";
    }
    return "?";
}

PreservationMode parse_mode(const std::string& text) {
    if (text == "ordinary") return PreservationMode::Ordinary;
    if (text == "monos" || text == "along_monos") return PreservationMode::AlongMonos;
    if (text == "weak") return PreservationMode::Weak;
    throw Error(ErrorCode::InvalidInput, "unknown preservation mode '" + text + "'");
}

PreservationVerdict check_pb_preservation(const FunctorExpr& F, const Cospan& cs,
                                          const EnumBounds& bounds, PreservationMode mode) {
    if (mode == PreservationMode::AlongMonos && !cs.g.is_injective()) {
        throw Error(ErrorCode::NonInjectiveLeg, "along_monos requires an injective g");
    }
    const auto P = functor_pullback(F, cs, bounds);
    const SortedPullback pb = carrier_pullback(cs);
    const auto FA = enumerate_functor(F, pb.apex, bounds);

    PreservationVerdict v;
    v.size_FA = FA.size();
    v.size_P = P.size();

    std::map<Term, const Term*> preimage;
    for (const Term& t : FA) {
        Term image = Term::pair(map_element(F, pb.to_b, t), map_element(F, pb.to_c, t));
        auto [it, fresh] = preimage.emplace(std::move(image), &t);
        if (!fresh && mode != PreservationMode::Weak && !v.witness) {
            v.holds = false;
            v.witness = PreservationWitness{PreservationWitness::Kind::Merged, {*it->second, t}};
        }
    }
    for (const Term& p : P) {
        if (preimage.count(p)) continue;
        v.holds = false;
        if (!v.witness) v.witness = PreservationWitness{PreservationWitness::Kind::Unhit, {p}};
        break;
    }
    return v;
}

std::vector<PreservationVerdict> check_pb_preservation_batch(const FunctorExpr& F,
                                                             const std::vector<Cospan>& cospans,
                                                             const EnumBounds& bounds,
                                                             PreservationMode mode, Exec exec) {
    std::vector<PreservationVerdict> out(cospans.size());
    for_each_index(exec, cospans.size(),
                   [&](std::size_t i) { out[i] = check_pb_preservation(F, cospans[i], bounds, mode); });
    return out;
}

}  // namespace adhesia
