#include "adhesia/graph.hpp"

#include <algorithm>
#include <functional>
#include <set>

#include "adhesia/error.hpp"

namespace adhesia {

Signature Signature::parse(const std::string& node, const std::string& st) {
    return {parse_functor(node), parse_functor(st)};
}

std::string Signature::to_string() const { return "(" + node.to_string() + ", " + st.to_string() + ")"; }

const Term& CoalgGraph::node_of(const AtomId& n) const {
    auto it = node.find(n);
    if (it == node.end()) throw Error(ErrorCode::UnknownAtom, "no contains entry for node '" + n + "'");
    return it->second;
}

const Term& CoalgGraph::st_of(const AtomId& e) const {
    auto it = st.find(e);
    if (it == st.end()) throw Error(ErrorCode::UnknownAtom, "no neighbour entry for edge '" + e + "'");
    return it->second;
}

std::vector<ValidationIssue> validate_graph(const CoalgGraph& G) {
    std::vector<ValidationIssue> out;
    for (const auto& n : G.N)
        if (G.E.contains(n)) out.push_back({n, "name is both a node and an edge"});
    auto check_table = [&](const std::map<AtomId, Term>& table, const FinSet& carrier,
                           const FunctorExpr& F, const char* what) {
        for (const auto& [k, v] : table)
            if (!carrier.contains(k)) out.push_back({k, std::string(what) + " entry for unknown element"});
        for (const auto& x : carrier) {
            auto it = table.find(x);
            if (it == table.end()) {
                out.push_back({x, std::string("missing ") + what + " entry"});
            } else if (!element_of(F, G.env(), it->second)) {
                out.push_back({x, it->second.to_string() + " is not in " + F.to_string()});
            }
        }
    };
    check_table(G.node, G.N, G.sig.node, "contains");
    check_table(G.st, G.E, G.sig.st, "neighbour");
    return out;
}

void require_valid(const CoalgGraph& G) {
    const auto issues = validate_graph(G);
    if (!issues.empty()) {
        throw Error(ErrorCode::InvalidInput,
                    "invalid graph at '" + issues.front().element + "': " + issues.front().reason);
    }
}

MorphismCheck check_morphism(const CoalgGraph& src, const SortedFunction& f, const CoalgGraph& dst) {
    if (!(src.sig == dst.sig)) {
        throw Error(ErrorCode::SignatureMismatch,
                    "signatures differ: " + src.sig.to_string() + " vs " + dst.sig.to_string());
    }
    if (!(f.fN.dom() == src.N) || !(f.fE.dom() == src.E) || !(f.fN.cod() == dst.N) ||
        !(f.fE.cod() == dst.E)) {
        throw Error(ErrorCode::DomainMismatch, "morphism does not fit the carriers");
    }
    for (const auto& n : src.N) {
        if (!(map_element(src.sig.node, f, src.node_of(n)) == dst.node_of(f.fN(n)))) return {false, n};
    }
    for (const auto& e : src.E) {
        if (!(map_element(src.sig.st, f, src.st_of(e)) == dst.st_of(f.fE(e)))) return {false, e};
    }
    return {};
}

GraphMorphism identity_morphism(const CoalgGraph& G) {
    return {G, G, SortedFunction::identity(G.env())};
}

GraphMorphism compose(const GraphMorphism& n, const GraphMorphism& m) {
    if (!(m.dst == n.src)) throw Error(ErrorCode::DomainMismatch, "morphisms are not composable");
    return {m.src, n.dst, compose(n.map, m.map)};
}

// ---------------------------------------------------------------------------
// Morphism search

namespace {

/// Shape of a term with atom names erased; preserved exactly by injective maps.
void shape_of(const Term& t, std::string& out) {
    switch (t.kind()) {
        case TermKind::Atom: out += 'a'; return;
        case TermKind::Unit: out += 'u'; return;
        case TermKind::Set: out += 's'; break;
        case TermKind::Pair: out += 'p'; break;
        case TermKind::Seq: out += 'q'; break;
    }
    // Sets are unordered, so their members' shapes are sorted.
    std::vector<std::string> parts;
    for (const Term& c : t.children()) {
        std::string s;
        shape_of(c, s);
        parts.push_back(std::move(s));
    }
    if (t.is_set()) std::sort(parts.begin(), parts.end());
    out += std::to_string(parts.size()) + '(';
    for (const auto& p : parts) out += p + ',';
    out += ')';
}

std::string shape(const Term& t) {
    std::string s;
    shape_of(t, s);
    return s;
}

struct Search {
    const CoalgGraph& src;
    const CoalgGraph& dst;
    bool injective;

    /// Elements are numbered nodes first, then edges.
    std::vector<AtomId> names;
    std::vector<bool> is_edge;
    std::vector<Term> image;                   ///< structure image per element
    std::vector<std::vector<std::size_t>> mentions;  ///< carrier elements mentioned in image
    std::vector<std::vector<std::size_t>> mentioned_by;
    std::vector<std::vector<AtomId>> candidates;  ///< static candidates per element

    std::map<AtomId, AtomId> tN, tE;
    std::set<AtomId> usedN, usedE;
    std::vector<bool> assigned;
    std::size_t n_assigned = 0;

    Search(const CoalgGraph& s, const CoalgGraph& d, bool inj) : src(s), dst(d), injective(inj) {
        for (const auto& n : src.N) {
            names.push_back(n);
            is_edge.push_back(false);
            image.push_back(src.node_of(n));
        }
        for (const auto& e : src.E) {
            names.push_back(e);
            is_edge.push_back(true);
            image.push_back(src.st_of(e));
        }
        const std::size_t k = names.size();
        mentions.resize(k);
        mentioned_by.resize(k);
        std::map<std::pair<bool, AtomId>, std::size_t> index;
        for (std::size_t i = 0; i < k; ++i) index[{is_edge[i], names[i]}] = i;
        for (std::size_t i = 0; i < k; ++i) {
            for (const auto& a : atoms_of(image[i])) {
                for (bool edge : {false, true}) {
                    auto it = index.find({edge, a});
                    if (it == index.end()) continue;
                    mentions[i].push_back(it->second);
                    mentioned_by[it->second].push_back(i);
                }
            }
        }
        candidates.resize(k);
        for (std::size_t i = 0; i < k; ++i) {
            const FinSet& pool = is_edge[i] ? dst.E : dst.N;
            const std::string sh = injective ? shape(image[i]) : std::string();
            const bool fixed = image[i].is_atom() && image[i].name() == names[i];
            for (const auto& y : pool) {
                const Term& yimg = is_edge[i] ? dst.st_of(y) : dst.node_of(y);
                if (fixed && !(yimg.is_atom() && yimg.name() == y)) continue;
                if (injective && shape(yimg) != sh) continue;
                candidates[i].push_back(y);
            }
        }
        assigned.assign(k, false);
    }

    std::map<AtomId, AtomId>& table(std::size_t i) { return is_edge[i] ? tE : tN; }

    /// Atoms of the target image of an assigned element.
    AtomSet target_atoms(std::size_t i) const {
        const AtomId& y = (is_edge[i] ? tE : tN).at(names[i]);
        return atoms_of(is_edge[i] ? dst.st_of(y) : dst.node_of(y));
    }

    std::vector<AtomId> live_candidates(std::size_t i) const {
        std::vector<AtomId> out;
        std::vector<AtomSet> constraints;
        for (std::size_t j : mentioned_by[i])
            if (assigned[j]) constraints.push_back(target_atoms(j));
        const auto& used = is_edge[i] ? usedE : usedN;
        for (const auto& y : candidates[i]) {
            if (injective && used.count(y)) continue;
            bool ok = std::all_of(constraints.begin(), constraints.end(),
                                  [&](const AtomSet& s) { return s.count(y) > 0; });
            if (ok) out.push_back(y);
        }
        return out;
    }

    /// The square at i, once i and everything it mentions are assigned.
    bool square_ok(std::size_t i) const {
        if (!assigned[i]) return true;
        for (std::size_t j : mentions[i])
            if (!assigned[j]) return true;
        const Term mapped = map_element_partial(is_edge[i] ? src.sig.st : src.sig.node, src.env(),
                                                tN, tE, image[i]);
        const AtomId& y = (is_edge[i] ? tE : tN).at(names[i]);
        return mapped == (is_edge[i] ? dst.st_of(y) : dst.node_of(y));
    }

    void assign(std::size_t i, const AtomId& y) {
        table(i)[names[i]] = y;
        (is_edge[i] ? usedE : usedN).insert(y);
        assigned[i] = true;
        ++n_assigned;
    }

    void unassign(std::size_t i) {
        const AtomId y = table(i).at(names[i]);
        table(i).erase(names[i]);
        if (injective) (is_edge[i] ? usedE : usedN).erase(y);
        assigned[i] = false;
        --n_assigned;
    }

    bool consistent_after(std::size_t i) const {
        if (!square_ok(i)) return false;
        for (std::size_t j : mentioned_by[i])
            if (!square_ok(j)) return false;
        return true;
    }

    void run(std::vector<SortedFunction>& out) {
        if (n_assigned == names.size()) {
            out.push_back({FinFunction(src.N, dst.N, tN), FinFunction(src.E, dst.E, tE)});
            return;
        }
        // Most constrained unassigned element next.
        std::size_t best = names.size();
        std::vector<AtomId> best_cands;
        for (std::size_t i = 0; i < names.size(); ++i) {
            if (assigned[i]) continue;
            auto c = live_candidates(i);
            if (best == names.size() || c.size() < best_cands.size()) {
                best = i;
                best_cands = std::move(c);
                if (best_cands.size() <= 1) break;
            }
        }
        for (const auto& y : best_cands) {
            assign(best, y);
            if (consistent_after(best)) run(out);
            unassign(best);
        }
    }
};

bool table_less(const SortedFunction& a, const SortedFunction& b) {
    if (a.fN.table() != b.fN.table()) return a.fN.table() < b.fN.table();
    return a.fE.table() < b.fE.table();
}

}  // namespace

std::vector<SortedFunction> all_morphisms(const CoalgGraph& src, const CoalgGraph& dst,
                                          bool injective, Exec exec) {
    if (!(src.sig == dst.sig)) {
        throw Error(ErrorCode::SignatureMismatch,
                    "signatures differ: " + src.sig.to_string() + " vs " + dst.sig.to_string());
    }
    if (injective && (src.N.size() > dst.N.size() || src.E.size() > dst.E.size())) return {};

    std::vector<SortedFunction> out;
    Search root(src, dst, injective);
    if (root.names.empty()) {
        root.run(out);
        return out;
    }
    // Split on the first element's candidates; each branch searches
    // independently.
    const auto first = root.live_candidates(0);
    std::vector<std::vector<SortedFunction>> parts(first.size());
    for_each_index(exec, first.size(), [&](std::size_t k) {
        Search s(src, dst, injective);
        s.assign(0, first[k]);
        if (s.consistent_after(0)) s.run(parts[k]);
    });
    for (auto& p : parts) out.insert(out.end(), std::make_move_iterator(p.begin()),
                                     std::make_move_iterator(p.end()));
    std::sort(out.begin(), out.end(), table_less);
    return out;
}

std::optional<SortedFunction> find_isomorphism(const CoalgGraph& a, const CoalgGraph& b) {
    if (!(a.sig == b.sig) || a.N.size() != b.N.size() || a.E.size() != b.E.size()) return std::nullopt;
    for (auto& f : all_morphisms(a, b, true)) {
        if (f.is_bijective()) return f;
    }
    return std::nullopt;
}

bool isomorphic(const CoalgGraph& a, const CoalgGraph& b) { return find_isomorphism(a, b).has_value(); }

CoalgGraph rename(const CoalgGraph& G, const SortedFunction& f) {
    if (!f.is_bijective() || !(f.fN.dom() == G.N) || !(f.fE.dom() == G.E)) {
        throw Error(ErrorCode::InvalidInput, "rename needs a bijection on the carriers");
    }
    CoalgGraph H{G.sig, f.fN.cod(), f.fE.cod(), {}, {}};
    for (const auto& [n, t] : G.node) H.node.emplace(f.fN(n), map_element(G.sig.node, f, t));
    for (const auto& [e, t] : G.st) H.st.emplace(f.fE(e), map_element(G.sig.st, f, t));
    return H;
}

// ---------------------------------------------------------------------------
// Flattening and properties

std::map<AtomId, AtomSet> flatten(const CoalgGraph& G) {
    std::map<AtomId, AtomSet> direct_nodes;
    std::map<AtomId, std::vector<AtomId>> direct_edges;
    for (const auto& e : G.E) {
        auto& ns = direct_nodes[e];
        auto& es = direct_edges[e];
        for (const auto& a : atoms_of(G.st_of(e))) {
            if (G.N.contains(a)) ns.insert(a);
            if (G.E.contains(a)) es.push_back(a);
        }
    }
    std::map<AtomId, AtomSet> plus = direct_nodes;
    for (bool changed = true; changed;) {
        changed = false;
        for (const auto& e : G.E) {
            auto& cur = plus[e];
            const std::size_t before = cur.size();
            for (const auto& x : direct_edges[e]) {
                if (x == e) continue;
                const auto& other = plus[x];
                cur.insert(other.begin(), other.end());
            }
            changed = changed || cur.size() != before;
        }
    }
    return plus;
}

namespace {

NodeProperties properties_of(const CoalgGraph& G, const std::function<Term(const AtomId&)>& c) {
    NodeProperties p;
    std::map<AtomId, Term> img;
    for (const auto& n : G.N) img.emplace(n, c(n));

    std::set<Term> seen;
    for (const auto& [n, t] : img) {
        if (!seen.insert(t).second) p.unique = false;
        if (t.is_atom() && t.name() == n) p.atoms.insert(n);
        if (t.is_set()) p.containers.insert(n);
    }

    // Closure clauses: nested members that are not carrier names must be
    // node images themselves.
    std::set<Term> images;
    for (const auto& [n, t] : img) images.insert(t);
    auto is_name = [&](const Term& y) {
        return y.is_atom() && (G.N.contains(y.name()) || G.E.contains(y.name()));
    };
    std::function<void(const Term&)> closed = [&](const Term& x) {
        if (!x.is_set()) return;
        for (const Term& y : x.children()) {
            if (is_name(y)) continue;
            if (!images.count(y)) p.well_founded = false;
            closed(y);
        }
    };
    for (const auto& [n, t] : img) closed(t);

    // Containment between names must not cycle.
    std::map<AtomId, std::vector<AtomId>> child;
    for (const auto& [n, t] : img) {
        if (p.atoms.count(n)) continue;
        for (const auto& a : atoms_of(t))
            if (G.N.contains(a) && a != n) child[n].push_back(a);
        if (atoms_of(t).count(n)) p.acyclic = false;
    }
    std::map<AtomId, int> state;
    std::function<void(const AtomId&)> dfs = [&](const AtomId& n) {
        state[n] = 1;
        for (const auto& m : child[n]) {
            if (state[m] == 1) p.acyclic = false;
            if (state[m] == 0) dfs(m);
        }
        state[n] = 2;
    };
    for (const auto& n : G.N)
        if (state[n] == 0) dfs(n);
    p.well_founded = p.well_founded && p.acyclic;

    // Distinct containers share no top-level member.
    std::map<Term, AtomId> owner;
    for (const auto& n : p.containers) {
        for (const Term& m : img.at(n).children()) {
            auto [it, fresh] = owner.emplace(m, n);
            if (!fresh && it->second != n) p.hierarchical = false;
        }
    }
    return p;
}

bool copy_tuples(const CoalgGraph& G) { return G.sig.node.kind() == FunctorKind::Copy; }

}  // namespace

NodeProperties node_properties(const CoalgGraph& G, std::size_t component) {
    if (!copy_tuples(G) || component >= G.sig.node.copies()) {
        throw Error(ErrorCode::InvalidInput, "no contains projection " + std::to_string(component));
    }
    return properties_of(G, [&](const AtomId& n) {
        const Term& t = G.node_of(n);
        if (!t.is_seq() || t.size() <= component) {
            throw Error(ErrorCode::NotAnElement, "contains entry of '" + n + "' is not a tuple");
        }
        return t.children()[component];
    });
}

NodeProperties node_properties(const CoalgGraph& G) {
    // Without a contains map every node is a vertex.
    if (G.sig.node.kind() == FunctorKind::Final) return properties_of(G, [](const AtomId& n) { return Term::atom(n); });
    if (!copy_tuples(G)) return properties_of(G, [&](const AtomId& n) { return G.node_of(n); });
    NodeProperties all;
    all.atoms = G.N.to_atom_set();
    for (std::size_t i = 0; i < G.sig.node.copies(); ++i) {
        const NodeProperties p = node_properties(G, i);
        AtomSet both;
        std::set_intersection(all.atoms.begin(), all.atoms.end(), p.atoms.begin(), p.atoms.end(),
                              std::inserter(both, both.end()));
        all.atoms = std::move(both);
        all.containers.insert(p.containers.begin(), p.containers.end());
        all.well_founded = all.well_founded && p.well_founded;
        all.acyclic = all.acyclic && p.acyclic;
        all.hierarchical = all.hierarchical && p.hierarchical;
    }
    std::set<Term> seen;
    for (const auto& n : G.N)
        if (!seen.insert(G.node_of(n)).second) all.unique = false;
    return all;
}

namespace {

bool node_atom(const CoalgGraph& G, const Term& t) { return t.is_atom() && G.N.contains(t.name()); }

bool set_of_node_atoms(const CoalgGraph& G, const Term& t) {
    return t.is_set() && std::all_of(t.children().begin(), t.children().end(),
                                     [&](const Term& m) { return node_atom(G, m); });
}

/// st(e) in Pot(N); pair and tuple heads are read componentwise.
bool atomic_edge(const CoalgGraph& G, const Term& t) {
    if (set_of_node_atoms(G, t)) return true;
    if (t.is_pair() || t.is_seq()) {
        return std::all_of(t.children().begin(), t.children().end(), [&](const Term& c) {
            return node_atom(G, c) || atomic_edge(G, c);
        });
    }
    return false;
}

}  // namespace

EdgeProperties edge_properties(const CoalgGraph& G) {
    EdgeProperties p;
    p.flattened = flatten(G);
    const AtomSet vertices = node_properties(G).atoms;
    for (const auto& e : G.E) {
        const Term& t = G.st_of(e);
        if (atomic_edge(G, t)) p.atomic_edges.insert(e);
        const AtomSet& plus = p.flattened.at(e);
        if (!atoms_of(t).empty() && plus.empty()) p.node_based = false;
        for (const auto& n : plus)
            if (!vertices.count(n)) p.atomic = false;
    }
    p.atomic = p.atomic && p.node_based;
    return p;
}

CoalgGraph subgraph(const CoalgGraph& G, const FinSet& N, const FinSet& E) {
    CoalgGraph H{G.sig, N, E, {}, {}};
    auto check = [&](const AtomId& x, const Term& t) {
        for (const auto& a : atoms_of(t)) {
            const bool dropped = (G.N.contains(a) && !N.contains(a)) || (G.E.contains(a) && !E.contains(a));
            if (dropped) {
                throw Error(ErrorCode::InvalidInput,
                            "kept element '" + x + "' refers to dropped element '" + a + "'");
            }
        }
    };
    for (const auto& n : N) {
        if (!G.N.contains(n)) throw Error(ErrorCode::InvalidInput, "'" + n + "' is not a node");
        check(n, G.node_of(n));
        H.node.emplace(n, G.node_of(n));
    }
    for (const auto& e : E) {
        if (!G.E.contains(e)) throw Error(ErrorCode::InvalidInput, "'" + e + "' is not an edge");
        check(e, G.st_of(e));
        H.st.emplace(e, G.st_of(e));
    }
    return H;
}

}  // namespace adhesia
