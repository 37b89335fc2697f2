#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "numgram/lexicon.hpp"
#include "numgram/teacher.hpp"
#include "numgram/trace.hpp"
#include "numgram/transducer.hpp"

namespace numgram {

class LearnStuckError : public std::runtime_error {
public:
    explicit LearnStuckError(std::string msg) : std::runtime_error(std::move(msg)) {}
};

/// A morpheme family discovered by segmentation. Records survive the
/// rewriting of their lexicon entries, so later words can still be
/// decomposed against a known affix (fifteen after the teen entry has been
/// dissolved into the void operator).
struct AffixRecord {
    std::string exponent;
    bool suffix = true;  // affix follows the residual in the surface string
    Term context = Term::number(0);  // one-hole lambda over the residual slot
    std::string licensee;            // empty until punishment licensing
    std::vector<std::pair<std::string, Term>> residuals;
    bool reorganized = false;    // dissolved into a void operator entry
    bool reorg_blocked = false;  // a reorganization trial failed; do not retry
    std::vector<Sign> reorg_added;    // committed reorganization delta,
    std::vector<Sign> reorg_removed;  // kept so punishment can undo it
};

/// Outcome of the pattern-matching faculty for one incoming pair.
struct Detection {
    int affix_index = -1;  // registry index when the affix is already known
    std::string affix;
    bool suffix = true;
    Term context = Term::number(0);
    std::vector<std::pair<std::string, Term>> pairs;  // residual exponent -> term
};

struct LearnerState {
    Lexicon lexicon;
    int clock = 0;
    std::vector<Ump> history;  // observed utterance-meaning pairs, oldest first
    std::vector<AffixRecord> affixes;
    int next_licensee = 1;  // k, k2, k3, ...
};

struct TrainResult {
    Lexicon lexicon;
    std::vector<TraceEvent> trace;
    bool converged = false;
    std::string failure;
};

/// The learning agent: a mental lexicon plus four acquisition mechanisms —
/// rote addition, segmentation with lambda abstraction, punishment-driven
/// licensing, and operator factoring. All reorganizations are validated
/// against every utterance heard so far; a rewrite that would break an
/// already-rewarded reproduction is rolled back.
class Learner {
public:
    explicit Learner(TransducerOptions options = {},
                     Orthography orthography = Orthography::Paper);

    const LearnerState& state() const { return state_; }
    const std::vector<TraceEvent>& trace() const { return trace_; }

    /// Advances the clock and incorporates one teacher utterance, either by
    /// rote or through segmentation. Idempotent for already-known pairs.
    void observe(const Ump& ump);

    std::optional<Detection> detect_pattern(const Ump& ump) const;
    void segment_and_revise(const Detection& detection, const Ump& ump);

    /// Generate-judge loop for one utterance; punishments trigger licensing
    /// reorganization until only the correct exponent survives. Returns true
    /// when the lexicon changed. Throws LearnStuckError past the retry cap.
    bool reproduce_and_learn(const Ump& ump);

    void licensing_reorg(const std::string& offending, const Ump& ump);

    /// Last-resort repair: undo a committed operator factoring whose
    /// generality lets a wrong word order through. Returns true if some
    /// revert restored unique reproduction of everything heard so far.
    bool revert_reorganization(const Ump& ump);

    /// One pass of operator factoring over known affixes; each rewrite is
    /// committed only if every past utterance still reproduces uniquely.
    /// Returns true when the lexicon changed.
    bool semantic_reorg();

    /// Full loop: observe u_1..u_max, re-verify all earlier utterances after
    /// every step, reorganize eagerly.
    TrainResult train(int max_n);

    std::vector<std::string> reproduce(const Term& meaning);

    static constexpr int kRetryCap = 5;
    static constexpr int kSweepCap = 20;
    static constexpr std::size_t kMinAffixLength = 2;

private:
    void lex_add(const Sign& sign, std::vector<Sign>& added);
    void lex_remove(const Sign& sign, std::vector<Sign>& removed);
    void emit(EventKind kind, std::vector<Sign> added, std::vector<Sign> removed,
              std::optional<Ump> ump, std::string offending = "");
    bool is_free_word(const std::string& exponent) const;
    bool is_rote_entry(const Sign& entry) const;
    std::string fresh_licensee();
    void ensure_allomorph(const std::string& exponent, const Term& semantics,
                          const std::string& licensee, std::vector<Sign>& added,
                          std::vector<Sign>& removed);
    const std::vector<std::string>& cached_generate(const Term& meaning);
    bool regression_holds();

    LearnerState state_;
    std::vector<TraceEvent> trace_;
    TransducerOptions options_;
    Orthography orthography_;
    std::uint64_t lexicon_version_ = 0;
    // One chart enumeration per lexicon version serves every meaning query.
    struct EnumerationCache {
        std::uint64_t version = 0;
        std::map<std::string, std::vector<std::string>> exponents_by_meaning;
    };
    std::optional<EnumerationCache> enumeration_;
};

TrainResult train(const TeacherConfig& config, const TransducerOptions& options = {});

}  // namespace numgram
