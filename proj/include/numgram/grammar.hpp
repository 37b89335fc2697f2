#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "numgram/term.hpp"

namespace numgram {

enum class FeatureKind { Base, Selector, Licensor, Licensee };

/// One syntactic feature token: num, =num, +k, -k.
struct Feature {
    FeatureKind kind;
    std::string ident;

    bool operator==(const Feature&) const = default;
};

std::string to_string(const Feature& f);
Feature parse_feature(std::string_view token);  // throws GrammarError

enum class Category { Lexical, Derived };  // "::" and ":"

/// Category plus ordered feature string. Well-formed types match
/// (Selector|Licensor)* Base Licensee*.
struct SynType {
    Category category = Category::Lexical;
    std::vector<Feature> features;

    bool operator==(const SynType&) const = default;
};

bool validate_syntype(const SynType& t);

/// Chain tails produced mid-derivation consist of licensees only.
bool validate_chain_tail(const std::vector<Feature>& features);

std::string to_string(const SynType& t);

class GrammarError : public std::runtime_error {
public:
    explicit GrammarError(std::string msg) : std::runtime_error(std::move(msg)) {}
};

/// A linguistic sign: surface exponent (possibly empty), syntactic type,
/// semantic term. Two signs are equal when exponent and type match exactly
/// and the semantics are alpha-equivalent.
struct Sign {
    std::string exponent;
    SynType type;
    Term semantics = Term::number(0);
};

bool operator==(const Sign& a, const Sign& b);
std::string to_string(const Sign& s);

/// Non-empty sequence of signs; the first is the head, the rest are chains
/// still waiting for movement.
struct Expression {
    std::vector<Sign> signs;

    const Sign& head() const { return signs.front(); }
    std::size_t chain_count() const { return signs.size() - 1; }
};

bool operator==(const Expression& a, const Expression& b);
std::string to_string(const Expression& e);

/// Structural key (exponents, feature lists, alpha-keyed semantics of every
/// sign); the transducer deduplicates on it.
std::string expression_key(const Expression& e);

enum class RuleOutcome { Applied, NotApplicable, SmcViolation };

struct RuleApplication {
    RuleOutcome outcome = RuleOutcome::NotApplicable;
    std::string rule;  // merge-1 .. move-2 when applied
    std::optional<Expression> result;

    bool applied() const { return outcome == RuleOutcome::Applied; }
};

/// Feature-driven binary structure building. Exactly one of the three merge
/// cases applies to a pair that satisfies the selector/base precondition;
/// the resulting semantics of merge-1/2 is the beta-normal form of
/// apply(head1, head2). A result carrying two chains with the same leading
/// licensee is pruned as an SMC violation.
RuleApplication merge(const Expression& a, const Expression& b);

/// Movement: the head's leading licensor +f consumes the unique chain whose
/// leading feature is -f. Zero candidates: not applicable; two or more: SMC
/// violation.
RuleApplication move(const Expression& e);

/// True iff e is a single sign whose features are exactly [Base(start)].
bool is_complete(const Expression& e, const Feature& start);

/// SMC candidate invariant on an expression: every licensee heads at most
/// one chain.
bool satisfies_smc(const Expression& e);

}  // namespace numgram
