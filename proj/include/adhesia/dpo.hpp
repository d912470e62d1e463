#pragma once

#include <map>
#include <string>
#include <vector>

#include "adhesia/category.hpp"

namespace adhesia {

/// L <-l- K -r-> R with injective l and r.
struct Rule {
    std::string name;
    CoalgGraph L;
    CoalgGraph K;
    CoalgGraph R;
    SortedFunction l;
    SortedFunction r;

    /// R <-r- K -l-> L.
    Rule inverse() const;
};

/// Throws InvalidInput or SignatureMismatch unless the rule is well formed.
void validate_rule(const Rule& rule);

/// All injective homomorphisms L -> G in canonical order.
std::vector<SortedFunction> find_matches(const Rule& rule, const CoalgGraph& G,
                                         Exec exec = Exec::Serial);

struct GluingReport {
    bool ok = true;
    /// Kept elements of G that mention a deleted element.
    std::vector<AtomId> dangling;
};

GluingReport gluing_check(const Rule& rule, const SortedFunction& match, const CoalgGraph& G);

struct RuleApplication {
    CoalgGraph D;
    CoalgGraph H;
    SortedFunction k_to_d;  ///< K -> D
    SortedFunction d_to_g;  ///< D -> G (inclusion)
    SortedFunction d_to_h;  ///< D -> H
    SortedFunction comatch; ///< R -> H
    bool left_square_is_pushout = false;
    bool right_square_is_pushout = false;
};

/// One DPO step. Throws GluingViolation when the match dangles and
/// InvalidInput when it is not an injective homomorphism.
RuleApplication apply_rule(const Rule& rule, const SortedFunction& match, const CoalgGraph& G);

struct DerivationStep {
    std::string rule;
    std::size_t match_index;
    SortedFunction match;
    CoalgGraph D;
    CoalgGraph H;
};

struct DerivationTrace {
    std::vector<DerivationStep> steps;
    CoalgGraph result;
};

/// Applies (rule name, match index) pairs in order. Throws NoSuchMatch for an
/// unknown rule or an out-of-range index, and GluingViolation; the message
/// names the failing step.
DerivationTrace derive(const CoalgGraph& G, const std::map<std::string, Rule>& rules,
                       const std::vector<std::pair<std::string, std::size_t>>& schedule);

}  // namespace adhesia
