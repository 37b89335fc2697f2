#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "numgram/grammar.hpp"
#include "numgram/lexicon.hpp"

namespace numgram {

class ResourceLimitError : public std::runtime_error {
public:
    explicit ResourceLimitError(std::string msg) : std::runtime_error(std::move(msg)) {}
};

struct DerivationStep {
    std::string rule;
    std::vector<std::size_t> operands;  // node ids within the derivation
    std::size_t result;                 // node id produced by this step
};

/// One complete derivation. Nodes 0..leaf events are lexicon items; steps
/// build the remaining nodes bottom-up; the last node is the result.
/// Replaying the steps over the leaf expressions reproduces the result
/// expression exactly.
struct Derivation {
    std::vector<Expression> nodes;
    std::vector<std::size_t> leaves;  // (node id, implicit) lexicon indices, one per leaf node
    std::vector<std::size_t> leaf_nodes;
    std::vector<DerivationStep> steps;
    std::size_t leaf_count = 0;

    const Expression& result() const { return nodes.back(); }
};

struct TransducerOptions {
    int max_leaves = 5;
    std::size_t chart_cap = 100000;
    bool parallel = true;  // OpenMP wave expansion for large charts
};

/// All complete derivations over the lexicon using at most max_leaves
/// lexical items (reusable), in non-decreasing leaf-count order,
/// deduplicated by the structural expression key. Agenda-based chart
/// closure; deterministic regardless of the parallel flag.
std::vector<Derivation> enumerate_derivations(const Lexicon& lex, const Feature& start,
                                              const TransducerOptions& options = {});

/// Exponents of all complete derivations whose beta-normal semantics equals
/// the given meaning up to renaming; distinct, lexicographically sorted.
std::vector<std::string> generate(const Lexicon& lex, const Term& meaning,
                                  const TransducerOptions& options = {},
                                  const Feature& start = Feature{FeatureKind::Base, "num"});

/// Beta-normal semantics of all complete derivations with the given surface
/// exponent; duplicates removed, deterministic order.
std::vector<Term> parse_utterance(const Lexicon& lex, std::string_view exponent,
                                  const TransducerOptions& options = {},
                                  const Feature& start = Feature{FeatureKind::Base, "num"});

}  // namespace numgram
