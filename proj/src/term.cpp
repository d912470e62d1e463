#include "adhesia/term.hpp"

#include <algorithm>
#include <unordered_set>

#include "adhesia/error.hpp"

namespace adhesia {

struct Term::Node {
    TermKind kind;
    AtomId name;
    std::vector<Term> children;
    std::size_t depth = 0;
    std::size_t width = 0;
    std::size_t hash = 0;
};

namespace {

std::size_t mix(std::size_t seed, std::size_t value) {
    return seed ^ (value + 0x9e3779b97f4a7c15ULL + (seed << 6) + (seed >> 2));
}

}  // namespace

Term Term::make(TermKind kind, AtomId name, std::vector<Term> children) {
    auto node = std::make_shared<Node>();
    node->kind = kind;
    node->name = std::move(name);
    node->children = std::move(children);

    std::size_t h = static_cast<std::size_t>(kind) + 1;
    if (kind == TermKind::Atom) h = mix(h, std::hash<std::string>{}(node->name));
    std::size_t child_depth = 0;
    std::size_t width = kind == TermKind::Set ? node->children.size() : 0;
    for (const Term& c : node->children) {
        h = mix(h, c.hash());
        child_depth = std::max(child_depth, c.depth());
        width = std::max(width, c.max_width());
    }
    node->hash = h;
    node->width = width;
    switch (kind) {
        case TermKind::Atom:
        case TermKind::Unit: node->depth = 0; break;
        case TermKind::Set: node->depth = child_depth + 1; break;
        case TermKind::Pair:
        case TermKind::Seq: node->depth = child_depth; break;
    }
    return Term(std::move(node));
}

Term::Term() : Term(unit()) {}

Term Term::unit() {
    static const Term u = make(TermKind::Unit, {}, {});
    return u;
}

Term Term::atom(AtomId name) {
    if (name.empty()) throw Error(ErrorCode::InvalidInput, "atom name must be nonempty");
    return make(TermKind::Atom, std::move(name), {});
}

Term Term::set(std::vector<Term> members) {
    std::sort(members.begin(), members.end());
    members.erase(std::unique(members.begin(), members.end()), members.end());
    return make(TermKind::Set, {}, std::move(members));
}

Term Term::pair(Term first, Term second) {
    std::vector<Term> c;
    c.reserve(2);
    c.push_back(std::move(first));
    c.push_back(std::move(second));
    return make(TermKind::Pair, {}, std::move(c));
}

Term Term::seq(std::vector<Term> items) { return make(TermKind::Seq, {}, std::move(items)); }

TermKind Term::kind() const noexcept { return node_->kind; }
const AtomId& Term::name() const noexcept { return node_->name; }
std::span<const Term> Term::children() const noexcept { return node_->children; }
std::size_t Term::depth() const noexcept { return node_->depth; }
std::size_t Term::max_width() const noexcept { return node_->width; }
std::size_t Term::hash() const noexcept { return node_->hash; }

const Term& Term::first() const {
    if (!is_pair()) throw Error(ErrorCode::NotAnElement, "first() of non-pair " + to_string());
    return node_->children[0];
}

const Term& Term::second() const {
    if (!is_pair()) throw Error(ErrorCode::NotAnElement, "second() of non-pair " + to_string());
    return node_->children[1];
}

bool Term::contains(const Term& member) const {
    if (!is_set()) return false;
    return std::binary_search(node_->children.begin(), node_->children.end(), member);
}

std::strong_ordering operator<=>(const Term& a, const Term& b) {
    if (a.node_ == b.node_) return std::strong_ordering::equal;
    if (auto c = a.kind() <=> b.kind(); c != 0) return c;
    if (a.is_atom()) return a.name().compare(b.name()) <=> 0;
    const auto& x = a.node_->children;
    const auto& y = b.node_->children;
    return std::lexicographical_compare_three_way(x.begin(), x.end(), y.begin(), y.end());
}

bool operator==(const Term& a, const Term& b) {
    if (a.node_ == b.node_) return true;
    if (a.hash() != b.hash()) return false;
    return (a <=> b) == 0;
}

std::string Term::to_string() const {
    switch (kind()) {
        case TermKind::Atom: return name();
        case TermKind::Unit: return "()";
        default: break;
    }
    const char open = is_set() ? '{' : is_pair() ? '(' : '[';
    const char close = is_set() ? '}' : is_pair() ? ')' : ']';
    std::string out(1, open);
    bool first_item = true;
    for (const Term& c : children()) {
        if (!first_item) out += ',';
        first_item = false;
        out += c.to_string();
    }
    out += close;
    return out;
}

namespace {

void collect_atoms(const Term& t, AtomSet& out) {
    if (t.is_atom()) {
        out.insert(t.name());
        return;
    }
    for (const Term& c : t.children()) collect_atoms(c, out);
}

}  // namespace

AtomSet atoms_of(const Term& t) {
    AtomSet out;
    collect_atoms(t, out);
    return out;
}

// ---------------------------------------------------------------------------
// Flavors

Flavor Flavor::pot_range(unsigned lo, unsigned hi) {
    if (lo > hi) {
        throw Error(ErrorCode::InvalidInput, "PotRange requires lo <= hi, got " +
                                                 std::to_string(lo) + " > " + std::to_string(hi));
    }
    return {Kind::PotRange, lo, hi};
}

std::string Flavor::to_string() const {
    switch (kind) {
        case Kind::Pot: return "Pot";
        case Kind::PotFin: return "PotFin";
        case Kind::PotRange: return "Pot[" + std::to_string(lo) + "," + std::to_string(hi) + "]";
        case Kind::PPa: return "PPa";
        case Kind::PPb: return "PPb";
        case Kind::PotOm: return "PotOm";
    }
    return "?";
}

namespace {

/// Set of iterated-powerset levels a term inhabits: finitely many exact
/// levels plus optionally every level from some bound upwards.
struct Levels {
    std::set<std::size_t> exact;
    std::optional<std::size_t> from;

    bool empty() const { return exact.empty() && !from; }

    bool has(std::size_t i) const { return exact.count(i) > 0 || (from && i >= *from); }

    static Levels all_from(std::size_t lo) { return {{}, lo}; }

    Levels intersect(const Levels& other) const {
        Levels out;
        for (std::size_t i : exact)
            if (other.has(i)) out.exact.insert(i);
        for (std::size_t i : other.exact)
            if (has(i)) out.exact.insert(i);
        if (from && other.from) out.from = std::max(*from, *other.from);
        return out;
    }

    Levels shifted() const {
        Levels out;
        for (std::size_t i : exact) out.exact.insert(i + 1);
        if (from) out.from = *from + 1;
        return out;
    }

    void merge(const Levels& other) {
        exact.insert(other.exact.begin(), other.exact.end());
        if (other.from) from = from ? std::min(*from, *other.from) : *other.from;
    }
};

Levels powerset_levels(const Term& t, const BasePredicate& in_base) {
    Levels out;
    if (in_base(t)) out.exact.insert(0);
    if (t.is_set()) {
        if (t.size() == 0) {
            out.merge(Levels::all_from(1));
        } else {
            Levels common = powerset_levels(t.children()[0], in_base);
            for (std::size_t i = 1; i < t.size() && !common.empty(); ++i)
                common = common.intersect(powerset_levels(t.children()[i], in_base));
            if (!common.empty()) out.merge(common.shifted());
        }
    }
    return out;
}

bool in_ppa(const Term& t, const BasePredicate& in_base) {
    if (in_base(t)) return true;
    if (!t.is_set()) return false;
    return std::all_of(t.children().begin(), t.children().end(),
                       [&](const Term& m) { return in_ppa(m, in_base); });
}

bool in_ppb(const Term& t, const BasePredicate& in_base) {
    if (!t.is_set()) return false;
    const auto members = t.children();
    if (std::all_of(members.begin(), members.end(), in_base)) return true;
    return std::all_of(members.begin(), members.end(),
                       [&](const Term& m) { return in_ppb(m, in_base); });
}

}  // namespace

bool in_flavor(const Term& t, const Flavor& flavor, const BasePredicate& in_base) {
    switch (flavor.kind) {
        case Flavor::Kind::Pot:
        case Flavor::Kind::PotFin:
        case Flavor::Kind::PotRange: {
            if (!t.is_set()) return false;
            if (flavor.kind == Flavor::Kind::PotRange &&
                (t.size() < flavor.lo || t.size() > flavor.hi))
                return false;
            return std::all_of(t.children().begin(), t.children().end(), in_base);
        }
        case Flavor::Kind::PPa: return in_ppa(t, in_base);
        case Flavor::Kind::PPb: return in_ppb(t, in_base);
        case Flavor::Kind::PotOm: return !powerset_levels(t, in_base).empty();
    }
    return false;
}

bool member_of(const Term& t, const AtomSet& universe, const Flavor& flavor) {
    for (const AtomId& a : atoms_of(t)) {
        if (!universe.count(a)) throw Error(ErrorCode::UnknownAtom, "atom '" + a + "' not in universe");
    }
    return in_flavor(t, flavor, [&](const Term& x) { return x.is_atom() && universe.count(x.name()); });
}

// ---------------------------------------------------------------------------
// Enumeration

namespace {

void sort_unique(std::vector<Term>& v) {
    std::sort(v.begin(), v.end());
    v.erase(std::unique(v.begin(), v.end()), v.end());
}

/// Depth-first generation of all subsets of `pool` (sorted) with cardinality
/// in [lo, hi] whose members pass `keep`. Visits in lexicographic order of
/// the sorted member lists.
void for_each_subset(std::span<const Term> pool, std::size_t lo, std::size_t hi,
                     const std::function<bool(std::span<const Term>)>& keep,
                     const std::function<void(const Term&)>& visit) {
    std::vector<Term> chosen;
    std::function<void(std::size_t)> rec = [&](std::size_t start) {
        if (chosen.size() >= lo && (!keep || keep(chosen))) visit(Term::set(chosen));
        if (chosen.size() == hi) return;
        for (std::size_t i = start; i < pool.size(); ++i) {
            chosen.push_back(pool[i]);
            rec(i + 1);
            chosen.pop_back();
        }
    };
    rec(0);
}

std::vector<Term> subsets(std::span<const Term> pool, std::size_t lo, std::size_t hi,
                          const std::function<bool(std::span<const Term>)>& keep = {}) {
    std::vector<Term> out;
    for_each_subset(pool, lo, hi, keep, [&](const Term& s) { out.push_back(s); });
    return out;
}

struct Layered {
    /// Terms emitted before the outermost layer (already deduplicated).
    std::vector<Term> inner;
    /// Pool from which the outermost layer draws members.
    std::vector<Term> pool;
    /// Member filter for the outermost layer.
    std::function<bool(std::span<const Term>)> keep;
    bool has_outer = false;
};

/// Builds every layer except the outermost, which callers either
/// materialize or stream.
Layered build_layers(std::span<const Term> base_in, const Flavor& flavor, const EnumBounds& b) {
    std::vector<Term> base(base_in.begin(), base_in.end());
    sort_unique(base);
    Layered out;
    const std::size_t w = b.width;
    const std::size_t d = b.depth;

    switch (flavor.kind) {
        case Flavor::Kind::PPa: {
            // T_0 = base, T_k = base + subsets(T_{k-1}).
            out.inner = base;
            if (d == 0) return out;
            std::vector<Term> level = base;
            for (std::size_t k = 1; k < d; ++k) {
                std::vector<Term> next = base;
                auto s = subsets(level, 0, w);
                next.insert(next.end(), s.begin(), s.end());
                sort_unique(next);
                level = std::move(next);
            }
            out.pool = std::move(level);
            out.has_outer = true;
            return out;
        }
        case Flavor::Kind::PPb: {
            // P_1 = subsets(base), P_k = P_1 + subsets(P_{k-1}); the outer layer
            // draws from base + P_{d-1} keeping homogeneous member lists.
            if (d == 0) return out;
            std::vector<Term> level;  // P_{k}
            for (std::size_t k = 1; k < d; ++k) {
                std::vector<Term> next = subsets(base, 0, w);
                auto s = k > 1 ? subsets(level, 0, w) : std::vector<Term>{};
                next.insert(next.end(), s.begin(), s.end());
                sort_unique(next);
                level = std::move(next);
            }
            std::vector<Term> pool = base;
            pool.insert(pool.end(), level.begin(), level.end());
            sort_unique(pool);
            auto base_set = std::make_shared<std::vector<Term>>(base);
            auto prev = std::make_shared<std::vector<Term>>(level);
            out.keep = [base_set, prev](std::span<const Term> members) {
                auto in = [](const std::vector<Term>& v, const Term& t) {
                    return std::binary_search(v.begin(), v.end(), t);
                };
                bool all_base = true, all_prev = true;
                for (const Term& m : members) {
                    all_base = all_base && in(*base_set, m);
                    all_prev = all_prev && in(*prev, m);
                }
                return all_base || all_prev;
            };
            out.pool = std::move(pool);
            out.has_outer = true;
            return out;
        }
        case Flavor::Kind::PotOm: {
            // L_0 = base, L_i = subsets(L_{i-1}); union over i <= d.
            std::vector<Term> level = base;
            out.inner = base;
            if (d == 0) return out;
            for (std::size_t k = 1; k < d; ++k) {
                level = subsets(level, 0, w);
                out.inner.insert(out.inner.end(), level.begin(), level.end());
            }
            sort_unique(out.inner);
            out.pool = std::move(level);
            out.has_outer = true;
            return out;
        }
        default: break;
    }
    return out;
}

}  // namespace

std::vector<Term> enumerate_flavor(std::span<const Term> base, const Flavor& flavor,
                                   const EnumBounds& bounds) {
    std::vector<Term> out;
    for_each_flavor_term(base, flavor, bounds, [&](const Term& t) { out.push_back(t); });
    sort_unique(out);
    return out;
}

void for_each_flavor_term(std::span<const Term> base, const Flavor& flavor,
                          const EnumBounds& bounds,
                          const std::function<void(const Term&)>& visit) {
    if (flavor.is_plain_powerset()) {
        std::vector<Term> pool(base.begin(), base.end());
        sort_unique(pool);
        std::size_t lo = 0, hi = pool.size();
        if (flavor.kind == Flavor::Kind::PotRange) {
            lo = flavor.lo;
            hi = std::min<std::size_t>(flavor.hi, pool.size());
            if (lo > hi) return;
        }
        for_each_subset(pool, lo, hi, {}, visit);
        return;
    }

    Layered layers = build_layers(base, flavor, bounds);
    for (const Term& t : layers.inner) visit(t);
    if (!layers.has_outer) return;
    const auto& inner = layers.inner;
    for_each_subset(layers.pool, 0, bounds.width, layers.keep, [&](const Term& s) {
        if (!std::binary_search(inner.begin(), inner.end(), s)) visit(s);
    });
}

std::vector<Term> atoms_as_terms(const AtomSet& universe) {
    std::vector<Term> out;
    out.reserve(universe.size());
    for (const AtomId& a : universe) out.push_back(Term::atom(a));
    return out;
}

std::vector<Term> enumerate(const AtomSet& universe, const Flavor& flavor, std::size_t depth_bound,
                            std::size_t width_bound) {
    const auto base = atoms_as_terms(universe);
    return enumerate_flavor(base, flavor, {depth_bound, width_bound, 0});
}

}  // namespace adhesia
