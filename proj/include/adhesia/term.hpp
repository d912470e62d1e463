#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <vector>

namespace adhesia {

using AtomId = std::string;
using AtomSet = std::set<AtomId>;

/// Constructor tag. The enumerator order is the first key of the canonical
/// term order.
enum class TermKind : std::uint8_t { Atom, Set, Pair, Seq, Unit };

/// Immutable nested term: an atom, a finite set of terms, a pair, a sequence
/// or the unit. Sets are stored duplicate-free and sorted by the canonical
/// order, so structural equality is extensional equality.
class Term {
public:
    /// The unit term.
    Term();

    static Term atom(AtomId name);
    /// Canonicalizing constructor: sorts and removes duplicates.
    static Term set(std::vector<Term> members);
    static Term pair(Term first, Term second);
    static Term seq(std::vector<Term> items);
    static Term unit();

    TermKind kind() const noexcept;
    bool is_atom() const noexcept { return kind() == TermKind::Atom; }
    bool is_set() const noexcept { return kind() == TermKind::Set; }
    bool is_pair() const noexcept { return kind() == TermKind::Pair; }
    bool is_seq() const noexcept { return kind() == TermKind::Seq; }
    bool is_unit() const noexcept { return kind() == TermKind::Unit; }

    /// Atom name; empty for non-atoms.
    const AtomId& name() const noexcept;
    /// Set members (canonical order), pair components, or sequence items.
    std::span<const Term> children() const noexcept;
    std::size_t size() const noexcept { return children().size(); }
    const Term& first() const;
    const Term& second() const;

    /// Set membership by binary search. False for non-sets.
    bool contains(const Term& member) const;

    /// np: atoms 0, empty set 1, nonempty set 1 + max member depth;
    /// pairs and sequences take the max over components; unit 0.
    std::size_t depth() const noexcept;
    /// Largest cardinality of any set occurring in the term (0 if none).
    std::size_t max_width() const noexcept;
    std::size_t hash() const noexcept;

    std::string to_string() const;

    friend std::strong_ordering operator<=>(const Term& a, const Term& b);
    friend bool operator==(const Term& a, const Term& b);

private:
    struct Node;
    explicit Term(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
    static Term make(TermKind kind, AtomId name, std::vector<Term> children);

    std::shared_ptr<const Node> node_;
};

struct TermHash {
    std::size_t operator()(const Term& t) const noexcept { return t.hash(); }
};

inline Term make_set(std::vector<Term> members) { return Term::set(std::move(members)); }
inline std::size_t depth(const Term& t) { return t.depth(); }

/// All atoms occurring at any nesting level.
AtomSet atoms_of(const Term& t);

/// Set-constructor flavors over a base set M.
struct Flavor {
    enum class Kind : std::uint8_t { Pot, PotFin, PotRange, PPa, PPb, PotOm };

    Kind kind = Kind::Pot;
    unsigned lo = 0;  ///< PotRange lower cardinality bound.
    unsigned hi = 0;  ///< PotRange upper cardinality bound.

    static Flavor pot() { return {Kind::Pot}; }
    static Flavor pot_fin() { return {Kind::PotFin}; }
    /// Throws InvalidInput when lo > hi.
    static Flavor pot_range(unsigned lo, unsigned hi);
    static Flavor ppa() { return {Kind::PPa}; }
    static Flavor ppb() { return {Kind::PPb}; }
    static Flavor pot_om() { return {Kind::PotOm}; }

    /// Pot, PotFin and PotRange: finite whenever the base is.
    bool is_plain_powerset() const noexcept {
        return kind == Kind::Pot || kind == Kind::PotFin || kind == Kind::PotRange;
    }

    std::string to_string() const;
    friend bool operator==(const Flavor&, const Flavor&) = default;
};

using BasePredicate = std::function<bool(const Term&)>;

/// Membership of t in flavor(M), where M is given by a predicate. Pair, Seq
/// and Unit are never members unless the base predicate accepts them.
bool in_flavor(const Term& t, const Flavor& flavor, const BasePredicate& in_base);

/// Membership of t in flavor(universe). Throws UnknownAtom if t mentions an
/// atom outside the universe.
bool member_of(const Term& t, const AtomSet& universe, const Flavor& flavor);

struct EnumBounds {
    std::size_t depth = 3;  ///< Maximum set-nesting added by a superpower flavor.
    std::size_t width = 3;  ///< Maximum cardinality of any generated set.
    std::size_t length = 3; ///< Maximum sequence length.
};

/// Every member of flavor(base) within the bounds, sorted canonically and
/// duplicate-free. Plain powerset flavors ignore the bounds (they are finite
/// for a finite base); the superpower flavors apply depth and width.
std::vector<Term> enumerate_flavor(std::span<const Term> base, const Flavor& flavor,
                                   const EnumBounds& bounds);

/// Streaming variant for large fragments: the outermost layer is generated
/// lazily and never materialized. Order is deterministic but not canonical.
/// Visits exactly the terms enumerate_flavor returns, each once.
void for_each_flavor_term(std::span<const Term> base, const Flavor& flavor,
                          const EnumBounds& bounds,
                          const std::function<void(const Term&)>& visit);

/// enumerate_flavor over a universe of atoms.
std::vector<Term> enumerate(const AtomSet& universe, const Flavor& flavor,
                            std::size_t depth_bound, std::size_t width_bound);

std::vector<Term> atoms_as_terms(const AtomSet& universe);

}  // namespace adhesia

template <>
struct std::hash<adhesia::Term> {
    std::size_t operator()(const adhesia::Term& t) const noexcept { return t.hash(); }
};
