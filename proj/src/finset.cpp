#include "adhesia/finset.hpp"

#include <algorithm>
#include <numeric>
#include <set>

#include "adhesia/error.hpp"

namespace adhesia {

FinSet::FinSet(std::initializer_list<AtomId> elems) : FinSet(std::vector<AtomId>(elems)) {}

FinSet::FinSet(std::vector<AtomId> elems) : elems_(std::move(elems)) {
    std::sort(elems_.begin(), elems_.end());
    elems_.erase(std::unique(elems_.begin(), elems_.end()), elems_.end());
}

FinSet::FinSet(const AtomSet& elems) : elems_(elems.begin(), elems.end()) {}

bool FinSet::contains(const AtomId& x) const {
    return std::binary_search(elems_.begin(), elems_.end(), x);
}

FinSet set_union(const FinSet& a, const FinSet& b) {
    std::vector<AtomId> out;
    std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
    return FinSet(std::move(out));
}

FinSet set_difference(const FinSet& a, const FinSet& b) {
    std::vector<AtomId> out;
    std::set_difference(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
    return FinSet(std::move(out));
}

bool disjoint(const FinSet& a, const FinSet& b) {
    std::vector<AtomId> out;
    std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
    return out.empty();
}

// ---------------------------------------------------------------------------

FinFunction::FinFunction(FinSet dom, FinSet cod, std::map<AtomId, AtomId> table)
    : dom_(std::move(dom)), cod_(std::move(cod)), table_(std::move(table)) {
    if (table_.size() != dom_.size()) {
        throw Error(ErrorCode::InvalidInput, "function table has " + std::to_string(table_.size()) +
                                                 " entries for a domain of size " +
                                                 std::to_string(dom_.size()));
    }
    for (const auto& [x, y] : table_) {
        if (!dom_.contains(x)) throw Error(ErrorCode::InvalidInput, "'" + x + "' is not in the domain");
        if (!cod_.contains(y)) {
            throw Error(ErrorCode::InvalidInput,
                        "image '" + y + "' of '" + x + "' is not in the codomain");
        }
    }
}

FinFunction FinFunction::identity(const FinSet& s) {
    std::map<AtomId, AtomId> t;
    for (const auto& x : s) t.emplace(x, x);
    return {s, s, std::move(t)};
}

FinFunction FinFunction::inclusion(const FinSet& sub, const FinSet& super) {
    std::map<AtomId, AtomId> t;
    for (const auto& x : sub) t.emplace(x, x);
    return {sub, super, std::move(t)};
}

const AtomId& FinFunction::operator()(const AtomId& x) const {
    auto it = table_.find(x);
    if (it == table_.end()) throw Error(ErrorCode::UnknownAtom, "'" + x + "' is not in the domain");
    return it->second;
}

bool FinFunction::is_injective() const {
    std::set<AtomId> seen;
    for (const auto& [x, y] : table_)
        if (!seen.insert(y).second) return false;
    return true;
}

bool FinFunction::is_surjective() const { return image().size() == cod_.size(); }

FinSet FinFunction::image() const {
    std::vector<AtomId> out;
    out.reserve(table_.size());
    for (const auto& [x, y] : table_) out.push_back(y);
    return FinSet(std::move(out));
}

FinFunction FinFunction::inverse() const {
    if (!is_bijective()) throw Error(ErrorCode::NotInjective, "inverse of a non-bijective function");
    std::map<AtomId, AtomId> t;
    for (const auto& [x, y] : table_) t.emplace(y, x);
    return {cod_, dom_, std::move(t)};
}

FinFunction compose(const FinFunction& g, const FinFunction& f) {
    if (!(f.cod() == g.dom())) {
        throw Error(ErrorCode::DomainMismatch, "compose: codomain of f differs from domain of g");
    }
    std::map<AtomId, AtomId> t;
    for (const auto& [x, y] : f.table()) t.emplace(x, g(y));
    return {f.dom(), g.cod(), std::move(t)};
}

// ---------------------------------------------------------------------------
// Pullbacks

std::string pair_name(const AtomId& b, const AtomId& c) { return "(" + b + "," + c + ")"; }

FinPullback pullback(const FinFunction& f, const FinFunction& g) {
    if (!(f.cod() == g.cod())) {
        throw Error(ErrorCode::CodomainMismatch, "pullback: cospan legs have different codomains");
    }
    std::map<AtomId, std::vector<AtomId>> fibre_c;
    for (const auto& [c, d] : g.table()) fibre_c[d].push_back(c);

    std::map<AtomId, AtomId> to_b, to_c;
    for (const auto& [b, d] : f.table()) {
        auto it = fibre_c.find(d);
        if (it == fibre_c.end()) continue;
        for (const auto& c : it->second) {
            auto name = pair_name(b, c);
            if (!to_b.emplace(name, b).second) {
                throw Error(ErrorCode::InvalidInput, "pullback: ambiguous pair name " + name);
            }
            to_c.emplace(name, c);
        }
    }
    std::vector<AtomId> apex;
    for (const auto& [a, b] : to_b) apex.push_back(a);
    FinSet a(std::move(apex));
    return {a, FinFunction(a, f.dom(), std::move(to_b)), FinFunction(a, g.dom(), std::move(to_c))};
}

FinFunction induced_into_pullback(const FinPullback& pb, const FinFunction& f, const FinFunction& g,
                                  const FinFunction& p, const FinFunction& q) {
    if (!(p.dom() == q.dom()) || !(p.cod() == f.dom()) || !(q.cod() == g.dom())) {
        throw Error(ErrorCode::DomainMismatch, "induced_into_pullback: cone is not well-typed");
    }
    std::map<AtomId, AtomId> t;
    for (const auto& x : p.dom()) {
        const auto& b = p(x);
        const auto& c = q(x);
        if (f(b) != g(c)) {
            throw Error(ErrorCode::InvalidInput, "induced_into_pullback: cone does not commute at '" + x + "'");
        }
        t.emplace(x, pair_name(b, c));
    }
    return {p.dom(), pb.apex, std::move(t)};
}

// ---------------------------------------------------------------------------
// Pushouts

namespace {

struct DisjointSets {
    std::vector<std::size_t> parent;
    explicit DisjointSets(std::size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
    std::size_t find(std::size_t x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    }
    void unite(std::size_t a, std::size_t b) {
        a = find(a);
        b = find(b);
        if (a != b) parent[std::max(a, b)] = std::min(a, b);
    }
};

std::size_t index_of(const FinSet& s, const AtomId& x) {
    auto it = std::lower_bound(s.begin(), s.end(), x);
    return static_cast<std::size_t>(it - s.begin());
}

}  // namespace

FinPushout pushout(const FinFunction& f, const FinFunction& g) {
    if (!(f.dom() == g.dom())) {
        throw Error(ErrorCode::DomainMismatch, "pushout: span legs have different domains");
    }
    const FinSet& b = f.cod();
    const FinSet& c = g.cod();
    const std::size_t nb = b.size();
    DisjointSets ds(nb + c.size());
    for (const auto& a : f.dom()) ds.unite(index_of(b, f(a)), nb + index_of(c, g(a)));

    struct Class {
        std::vector<AtomId> b_members;
        std::vector<AtomId> c_members;
    };
    std::map<std::size_t, Class> classes;
    for (std::size_t i = 0; i < nb; ++i) classes[ds.find(i)].b_members.push_back(b.elements()[i]);
    for (std::size_t j = 0; j < c.size(); ++j) classes[ds.find(nb + j)].c_members.push_back(c.elements()[j]);

    // Name B-bearing classes first so B names survive clashes.
    std::vector<const Class*> order;
    for (const auto& [root, cls] : classes) order.push_back(&cls);
    std::stable_sort(order.begin(), order.end(), [](const Class* x, const Class* y) {
        return !x->b_members.empty() && y->b_members.empty();
    });

    std::set<AtomId> used;
    std::map<AtomId, AtomId> from_b, from_c;
    for (const Class* cls : order) {
        std::string name;
        if (cls->b_members.size() == 1) {
            name = cls->b_members.front();
        } else if (cls->b_members.empty() && cls->c_members.size() == 1) {
            name = cls->c_members.front();
        } else {
            std::vector<AtomId> all = cls->b_members;
            all.insert(all.end(), cls->c_members.begin(), cls->c_members.end());
            std::sort(all.begin(), all.end());
            name = "cls{";
            for (std::size_t i = 0; i < all.size(); ++i) name += (i ? "," : "") + all[i];
            name += "}";
        }
        while (used.count(name)) name += "'";
        used.insert(name);
        for (const auto& x : cls->b_members) from_b.emplace(x, name);
        for (const auto& x : cls->c_members) from_c.emplace(x, name);
    }
    FinSet apex(std::vector<AtomId>(used.begin(), used.end()));
    return {apex, FinFunction(b, apex, std::move(from_b)), FinFunction(c, apex, std::move(from_c))};
}

FinFunction induced_from_pushout(const FinPushout& po, const FinFunction& p, const FinFunction& q) {
    if (!(p.dom() == po.from_b.dom()) || !(q.dom() == po.from_c.dom()) || !(p.cod() == q.cod())) {
        throw Error(ErrorCode::DomainMismatch, "induced_from_pushout: cocone is not well-typed");
    }
    std::map<AtomId, AtomId> t;
    auto assign = [&](const AtomId& d, const AtomId& x) {
        auto [it, fresh] = t.emplace(d, x);
        if (!fresh && it->second != x) {
            throw Error(ErrorCode::InvalidInput,
                        "induced_from_pushout: cocone disagrees on class '" + d + "'");
        }
    };
    for (const auto& [b, d] : po.from_b.table()) assign(d, p(b));
    for (const auto& [c, d] : po.from_c.table()) assign(d, q(c));
    return {po.apex, p.cod(), std::move(t)};
}

// ---------------------------------------------------------------------------

FinComplement pushout_complement(const FinFunction& l, const FinFunction& m) {
    if (!(l.cod() == m.dom())) {
        throw Error(ErrorCode::DomainMismatch, "pushout_complement: cod(l) differs from dom(m)");
    }
    if (!l.is_injective()) throw Error(ErrorCode::NotInjective, "pushout_complement: l is not injective");
    if (!m.is_injective()) throw Error(ErrorCode::NotInjective, "pushout_complement: m is not injective");

    const FinSet deleted_in_b = set_difference(l.cod(), l.image());
    std::vector<AtomId> deleted;
    for (const auto& x : deleted_in_b) deleted.push_back(m(x));
    FinSet d = set_difference(m.cod(), FinSet(std::move(deleted)));

    std::map<AtomId, AtomId> t;
    for (const auto& a : l.dom()) t.emplace(a, m(l(a)));
    return {d, FinFunction(l.dom(), d, std::move(t)), FinFunction::inclusion(d, m.cod())};
}

FinPushout coproduct(const FinSet& a, const FinSet& b) {
    return pushout(FinFunction::empty_into(a), FinFunction::empty_into(b));
}

FinPullback product(const FinSet& a, const FinSet& b) {
    const FinSet point{"*"};
    std::map<AtomId, AtomId> ta, tb;
    for (const auto& x : a) ta.emplace(x, "*");
    for (const auto& y : b) tb.emplace(y, "*");
    return pullback(FinFunction(a, point, std::move(ta)), FinFunction(b, point, std::move(tb)));
}

bool is_pullback_square(const FinFunction& p, const FinFunction& q, const FinFunction& f,
                        const FinFunction& g) {
    try {
        const FinPullback pb = pullback(f, g);
        return induced_into_pullback(pb, f, g, p, q).is_bijective();
    } catch (const Error&) {
        return false;
    }
}

bool is_pushout_square(const FinFunction& f, const FinFunction& g, const FinFunction& p,
                       const FinFunction& q) {
    try {
        if (!(compose(p, f) == compose(q, g))) return false;
        const FinPushout po = pushout(f, g);
        return induced_from_pushout(po, p, q).is_bijective();
    } catch (const Error&) {
        return false;
    }
}

std::optional<FinFunction> any_bijection(const FinSet& a, const FinSet& b) {
    if (a.size() != b.size()) return std::nullopt;
    std::map<AtomId, AtomId> t;
    for (std::size_t i = 0; i < a.size(); ++i) t.emplace(a.elements()[i], b.elements()[i]);
    return FinFunction(a, b, std::move(t));
}

}  // namespace adhesia
