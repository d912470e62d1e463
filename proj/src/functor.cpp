#include "adhesia/functor.hpp"

#include <algorithm>
#include <cctype>

#include "adhesia/error.hpp"

namespace adhesia {

struct FunctorExpr::Node {
    FunctorKind kind;
    Flavor flavor;
    unsigned n = 0;
    std::vector<FunctorExpr> args;
};

FunctorExpr::FunctorExpr() : FunctorExpr(final_()) {}

FunctorExpr FunctorExpr::sort_n() {
    static const FunctorExpr e(std::make_shared<Node>(Node{FunctorKind::SortN, {}, 0, {}}));
    return e;
}
FunctorExpr FunctorExpr::sort_e() {
    static const FunctorExpr e(std::make_shared<Node>(Node{FunctorKind::SortE, {}, 0, {}}));
    return e;
}
FunctorExpr FunctorExpr::id() {
    static const FunctorExpr e(std::make_shared<Node>(Node{FunctorKind::Id, {}, 0, {}}));
    return e;
}
FunctorExpr FunctorExpr::final_() {
    static const FunctorExpr e(std::make_shared<Node>(Node{FunctorKind::Final, {}, 0, {}}));
    return e;
}
FunctorExpr FunctorExpr::flavor(Flavor fl, FunctorExpr arg) {
    return FunctorExpr(std::make_shared<Node>(Node{FunctorKind::Flavor, fl, 0, {std::move(arg)}}));
}
FunctorExpr FunctorExpr::prod(FunctorExpr l, FunctorExpr r) {
    return FunctorExpr(
        std::make_shared<Node>(Node{FunctorKind::Prod, {}, 0, {std::move(l), std::move(r)}}));
}
FunctorExpr FunctorExpr::coprod(FunctorExpr l, FunctorExpr r) {
    return FunctorExpr(
        std::make_shared<Node>(Node{FunctorKind::Coprod, {}, 0, {std::move(l), std::move(r)}}));
}
FunctorExpr FunctorExpr::star(FunctorExpr arg) {
    return FunctorExpr(std::make_shared<Node>(Node{FunctorKind::Star, {}, 0, {std::move(arg)}}));
}
FunctorExpr FunctorExpr::copy(unsigned n, FunctorExpr arg) {
    if (n == 0) throw Error(ErrorCode::InvalidInput, "Copy needs at least one copy");
    return FunctorExpr(std::make_shared<Node>(Node{FunctorKind::Copy, {}, n, {std::move(arg)}}));
}

FunctorKind FunctorExpr::kind() const noexcept { return node_->kind; }
const Flavor& FunctorExpr::flavor() const noexcept { return node_->flavor; }
unsigned FunctorExpr::copies() const noexcept { return node_->n; }

const FunctorExpr& FunctorExpr::arg() const {
    if (node_->args.size() != 1) throw Error(ErrorCode::InvalidInput, "functor has no single argument");
    return node_->args[0];
}
const FunctorExpr& FunctorExpr::left() const {
    if (node_->args.size() != 2) throw Error(ErrorCode::InvalidInput, "functor is not binary");
    return node_->args[0];
}
const FunctorExpr& FunctorExpr::right() const {
    if (node_->args.size() != 2) throw Error(ErrorCode::InvalidInput, "functor is not binary");
    return node_->args[1];
}

bool FunctorExpr::uses_edges() const {
    if (kind() == FunctorKind::SortE) return true;
    return std::any_of(node_->args.begin(), node_->args.end(),
                       [](const FunctorExpr& a) { return a.uses_edges(); });
}

bool operator==(const FunctorExpr& a, const FunctorExpr& b) {
    if (a.node_ == b.node_) return true;
    if (a.kind() != b.kind() || a.copies() != b.copies()) return false;
    if (a.kind() == FunctorKind::Flavor && !(a.flavor() == b.flavor())) return false;
    return a.node_->args == b.node_->args;
}

// ---------------------------------------------------------------------------
// Printing

namespace {

int precedence(const FunctorExpr& e) {
    switch (e.kind()) {
        case FunctorKind::Coprod: return 1;
        case FunctorKind::Prod: return 2;
        default: return 3;
    }
}

void print(const FunctorExpr& e, std::string& out) {
    auto operand = [&](const FunctorExpr& sub, bool need_parens) {
        if (need_parens) out += '(';
        print(sub, out);
        if (need_parens) out += ')';
    };
    switch (e.kind()) {
        case FunctorKind::SortN: out += 'N'; return;
        case FunctorKind::SortE: out += 'E'; return;
        case FunctorKind::Id: out += 'X'; return;
        case FunctorKind::Final: out += '1'; return;
        case FunctorKind::Flavor: out += e.flavor().to_string(); break;
        case FunctorKind::Star: out += "Star"; break;
        case FunctorKind::Copy: out += "Copy" + std::to_string(e.copies()); break;
        case FunctorKind::Prod:
        case FunctorKind::Coprod: {
            const int p = precedence(e);
            operand(e.left(), precedence(e.left()) < p);
            out += e.kind() == FunctorKind::Prod ? " * " : " + ";
            operand(e.right(), precedence(e.right()) <= p);
            return;
        }
    }
    out += '(';
    print(e.arg(), out);
    out += ')';
}

}  // namespace

std::string FunctorExpr::to_string() const {
    std::string out;
    print(*this, out);
    return out;
}

// ---------------------------------------------------------------------------
// Parsing

namespace {

class Parser {
public:
    explicit Parser(std::string_view s) : s_(s) {}

    FunctorExpr parse() {
        FunctorExpr e = sum();
        skip_ws();
        if (pos_ != s_.size()) fail("unexpected '" + std::string(1, s_[pos_]) + "'");
        return e;
    }

private:
    std::string_view s_;
    std::size_t pos_ = 0;

    [[noreturn]] void fail(const std::string& msg) const { throw ParseError(pos_, msg); }

    void skip_ws() {
        while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    }

    bool accept(char c) {
        skip_ws();
        if (pos_ < s_.size() && s_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }

    void expect(char c) {
        if (!accept(c)) fail(std::string("expected '") + c + "'");
    }

    unsigned number() {
        skip_ws();
        const std::size_t start = pos_;
        unsigned v = 0;
        while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) {
            v = v * 10 + static_cast<unsigned>(s_[pos_] - '0');
            if (v > 1000000) fail("number too large");
            ++pos_;
        }
        if (pos_ == start) fail("expected a number");
        return v;
    }

    FunctorExpr sum() {
        FunctorExpr e = product();
        while (accept('+')) e = FunctorExpr::coprod(e, product());
        return e;
    }

    FunctorExpr product() {
        FunctorExpr e = primary();
        while (accept('*')) e = FunctorExpr::prod(e, primary());
        return e;
    }

    FunctorExpr parenthesized() {
        expect('(');
        FunctorExpr e = sum();
        expect(')');
        return e;
    }

    FunctorExpr primary() {
        skip_ws();
        if (pos_ >= s_.size()) fail("unexpected end of input");
        if (s_[pos_] == '(') return parenthesized();
        if (s_[pos_] == '1') {
            ++pos_;
            return FunctorExpr::final_();
        }
        const std::size_t start = pos_;
        while (pos_ < s_.size() && std::isalpha(static_cast<unsigned char>(s_[pos_]))) ++pos_;
        const std::string_view word = s_.substr(start, pos_ - start);
        if (word.empty()) fail("expected a functor");
        if (word == "N") return FunctorExpr::sort_n();
        if (word == "E") return FunctorExpr::sort_e();
        if (word == "X") return FunctorExpr::id();
        if (word == "Pot") {
            skip_ws();
            if (pos_ < s_.size() && s_[pos_] == '[') {
                ++pos_;
                const unsigned lo = number();
                expect(',');
                const unsigned hi = number();
                expect(']');
                if (lo > hi) fail("empty cardinality range");
                return FunctorExpr::flavor(Flavor::pot_range(lo, hi), parenthesized());
            }
            return FunctorExpr::flavor(Flavor::pot(), parenthesized());
        }
        if (word == "PotFin") return FunctorExpr::flavor(Flavor::pot_fin(), parenthesized());
        if (word == "PotDir") return FunctorExpr::flavor(Flavor::pot_range(1, 2), parenthesized());
        if (word == "PPa") return FunctorExpr::flavor(Flavor::ppa(), parenthesized());
        if (word == "PPb") return FunctorExpr::flavor(Flavor::ppb(), parenthesized());
        if (word == "PotOm") return FunctorExpr::flavor(Flavor::pot_om(), parenthesized());
        if (word == "Star") return FunctorExpr::star(parenthesized());
        if (word == "Copy") {
            const unsigned n = number();
            if (n == 0) fail("Copy needs at least one copy");
            return FunctorExpr::copy(n, parenthesized());
        }
        pos_ = start;
        fail("unknown functor '" + std::string(word) + "'");
    }
};

}  // namespace

FunctorExpr parse_functor(std::string_view text) { return Parser(text).parse(); }

// ---------------------------------------------------------------------------
// Semantics

SortedFunction SortedFunction::identity(const CarrierEnv& env) {
    return {FinFunction::identity(env.N), FinFunction::identity(env.E)};
}

SortedFunction compose(const SortedFunction& g, const SortedFunction& f) {
    return {compose(g.fN, f.fN), compose(g.fE, f.fE)};
}

bool element_of(const FunctorExpr& F, const CarrierEnv& env, const Term& t) {
    switch (F.kind()) {
        case FunctorKind::SortN:
        case FunctorKind::Id: return t.is_atom() && env.N.contains(t.name());
        case FunctorKind::SortE: return t.is_atom() && env.E.contains(t.name());
        case FunctorKind::Final: return t.is_unit();
        case FunctorKind::Flavor:
            return in_flavor(t, F.flavor(),
                             [&](const Term& x) { return element_of(F.arg(), env, x); });
        case FunctorKind::Prod:
            return t.is_pair() && element_of(F.left(), env, t.first()) &&
                   element_of(F.right(), env, t.second());
        case FunctorKind::Coprod:
            return element_of(F.left(), env, t) || element_of(F.right(), env, t);
        case FunctorKind::Star:
        case FunctorKind::Copy:
            if (!t.is_seq()) return false;
            if (F.kind() == FunctorKind::Copy && t.size() != F.copies()) return false;
            return std::all_of(t.children().begin(), t.children().end(),
                               [&](const Term& x) { return element_of(F.arg(), env, x); });
    }
    return false;
}

namespace {

template <class LookN, class LookE>
Term map_impl(const FunctorExpr& F, const CarrierEnv& dom, const LookN& look_n,
              const LookE& look_e, const Term& t) {
    auto shape_error = [&](const char* expected) {
        return Error(ErrorCode::NotAnElement,
                     "expected " + std::string(expected) + " for " + F.to_string() + ", got " +
                         t.to_string());
    };
    auto rec = [&](const FunctorExpr& G, const Term& x) {
        return map_impl(G, dom, look_n, look_e, x);
    };
    switch (F.kind()) {
        case FunctorKind::SortN:
        case FunctorKind::Id:
            if (!t.is_atom()) throw shape_error("an atom");
            return Term::atom(look_n(t.name()));
        case FunctorKind::SortE:
            if (!t.is_atom()) throw shape_error("an atom");
            return Term::atom(look_e(t.name()));
        case FunctorKind::Final: return Term::unit();
        case FunctorKind::Flavor: {
            if (!t.is_set() || element_of(F.arg(), dom, t)) return rec(F.arg(), t);
            std::vector<Term> members;
            members.reserve(t.size());
            for (const Term& m : t.children()) members.push_back(rec(F, m));
            return Term::set(std::move(members));
        }
        case FunctorKind::Prod:
            if (!t.is_pair()) throw shape_error("a pair");
            return Term::pair(rec(F.left(), t.first()), rec(F.right(), t.second()));
        case FunctorKind::Coprod:
            return element_of(F.left(), dom, t) ? rec(F.left(), t) : rec(F.right(), t);
        case FunctorKind::Star:
        case FunctorKind::Copy: {
            if (!t.is_seq()) throw shape_error("a sequence");
            std::vector<Term> items;
            items.reserve(t.size());
            for (const Term& x : t.children()) items.push_back(rec(F.arg(), x));
            return Term::seq(std::move(items));
        }
    }
    throw shape_error("a known functor");
}

const AtomId& lookup(const std::map<AtomId, AtomId>& table, const AtomId& x, const char* sort) {
    auto it = table.find(x);
    if (it == table.end()) {
        throw Error(ErrorCode::UnknownAtom, std::string(sort) + " atom '" + x + "' has no image");
    }
    return it->second;
}

}  // namespace

Term map_element(const FunctorExpr& F, const SortedFunction& f, const Term& t) {
    return map_element_partial(F, f.dom(), f.fN.table(), f.fE.table(), t);
}

Term map_element_partial(const FunctorExpr& F, const CarrierEnv& dom,
                         const std::map<AtomId, AtomId>& fN, const std::map<AtomId, AtomId>& fE,
                         const Term& t) {
    return map_impl(
        F, dom, [&](const AtomId& x) -> const AtomId& { return lookup(fN, x, "node"); },
        [&](const AtomId& x) -> const AtomId& { return lookup(fE, x, "edge"); }, t);
}

namespace {

void sort_unique(std::vector<Term>& v) {
    std::sort(v.begin(), v.end());
    v.erase(std::unique(v.begin(), v.end()), v.end());
}

void sequences(const std::vector<Term>& base, std::size_t len, std::vector<Term>& prefix,
               std::vector<Term>& out) {
    if (prefix.size() == len) {
        out.push_back(Term::seq(prefix));
        return;
    }
    for (const Term& b : base) {
        prefix.push_back(b);
        sequences(base, len, prefix, out);
        prefix.pop_back();
    }
}

}  // namespace

std::vector<Term> enumerate_functor(const FunctorExpr& F, const CarrierEnv& env,
                                    const EnumBounds& bounds) {
    std::vector<Term> out;
    switch (F.kind()) {
        case FunctorKind::SortN:
        case FunctorKind::Id:
            for (const auto& a : env.N) out.push_back(Term::atom(a));
            break;
        case FunctorKind::SortE:
            for (const auto& a : env.E) out.push_back(Term::atom(a));
            break;
        case FunctorKind::Final: out.push_back(Term::unit()); break;
        case FunctorKind::Flavor:
            out = enumerate_flavor(enumerate_functor(F.arg(), env, bounds), F.flavor(), bounds);
            break;
        case FunctorKind::Prod: {
            const auto ls = enumerate_functor(F.left(), env, bounds);
            const auto rs = enumerate_functor(F.right(), env, bounds);
            out.reserve(ls.size() * rs.size());
            for (const Term& l : ls)
                for (const Term& r : rs) out.push_back(Term::pair(l, r));
            break;
        }
        case FunctorKind::Coprod: {
            out = enumerate_functor(F.left(), env, bounds);
            const auto rs = enumerate_functor(F.right(), env, bounds);
            out.insert(out.end(), rs.begin(), rs.end());
            break;
        }
        case FunctorKind::Star:
        case FunctorKind::Copy: {
            const auto base = enumerate_functor(F.arg(), env, bounds);
            std::vector<Term> prefix;
            if (F.kind() == FunctorKind::Copy) {
                sequences(base, F.copies(), prefix, out);
            } else {
                for (std::size_t len = 0; len <= bounds.length; ++len) sequences(base, len, prefix, out);
            }
            break;
        }
    }
    sort_unique(out);
    return out;
}

}  // namespace adhesia
