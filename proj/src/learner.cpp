#include "numgram/learner.hpp"

#include <algorithm>

namespace numgram {

namespace {

const Feature kStart{FeatureKind::Base, "num"};

SynType plain_num() { return SynType{Category::Lexical, {kStart}}; }

SynType licensed_num(const std::string& licensee) {
    return SynType{Category::Lexical, {kStart, Feature{FeatureKind::Licensee, licensee}}};
}

std::string longest_common_suffix(const std::string& a, const std::string& b) {
    std::size_t n = 0;
    while (n < a.size() && n < b.size() && a[a.size() - 1 - n] == b[b.size() - 1 - n]) ++n;
    return a.substr(a.size() - n);
}

std::string longest_common_prefix(const std::string& a, const std::string& b) {
    std::size_t n = 0;
    while (n < a.size() && n < b.size() && a[n] == b[n]) ++n;
    return a.substr(0, n);
}

// The swapped-argument void operator used for decade-unit composition:
// lam x (lam y (op y x)).
Term swapped_operator(const Term& op_kind) {
    return Term::lambda(
        "x", Term::lambda("y", Term::apply(Term::apply(op_kind, Term::variable("y")),
                                           Term::variable("x"))));
}

}  // namespace

Learner::Learner(TransducerOptions options, Orthography orthography)
    : options_(options), orthography_(orthography) {}

void Learner::lex_add(const Sign& sign, std::vector<Sign>& added) {
    if (state_.lexicon.add(sign)) {
        added.push_back(sign);
        ++lexicon_version_;
    }
}

void Learner::lex_remove(const Sign& sign, std::vector<Sign>& removed) {
    Sign copy = sign;  // the argument may alias lexicon storage
    if (state_.lexicon.remove(copy)) {
        removed.push_back(std::move(copy));
        ++lexicon_version_;
    }
}

void Learner::emit(EventKind kind, std::vector<Sign> added, std::vector<Sign> removed,
                   std::optional<Ump> ump, std::string offending) {
    TraceEvent event;
    event.t = state_.clock;
    event.kind = kind;
    event.added = std::move(added);
    event.removed = std::move(removed);
    event.ump = std::move(ump);
    event.offending = std::move(offending);
    trace_.push_back(std::move(event));
}

bool Learner::is_free_word(const std::string& exponent) const {
    return std::any_of(state_.history.begin(), state_.history.end(),
                       [&](const Ump& u) { return u.exponent == exponent; });
}

bool Learner::is_rote_entry(const Sign& entry) const {
    if (entry.type.category != Category::Lexical || entry.type.features.size() != 1 ||
        entry.type.features.front() != kStart)
        return false;
    return std::any_of(state_.history.begin(), state_.history.end(), [&](const Ump& u) {
        return u.exponent == entry.exponent && alpha_equal(u.semantics, entry.semantics);
    });
}

std::string Learner::fresh_licensee() {
    for (;; ++state_.next_licensee) {
        std::string candidate =
            state_.next_licensee == 1 ? "k" : "k" + std::to_string(state_.next_licensee);
        bool taken = false;
        for (const auto& entry : state_.lexicon.entries())
            for (const auto& f : entry.type.features)
                if (f.ident == candidate) taken = true;
        for (const auto& rec : state_.affixes)
            if (rec.licensee == candidate) taken = true;
        if (!taken) {
            ++state_.next_licensee;
            return candidate;
        }
    }
}

const std::vector<std::string>& Learner::cached_generate(const Term& meaning) {
    if (!enumeration_ || enumeration_->version != lexicon_version_) {
        EnumerationCache fresh;
        fresh.version = lexicon_version_;
        for (const auto& d :
             enumerate_derivations(state_.lexicon, kStart, options_)) {
            fresh.exponents_by_meaning[alpha_key(d.result().head().semantics)].push_back(
                d.result().head().exponent);
        }
        for (auto& [key, exponents] : fresh.exponents_by_meaning) {
            std::sort(exponents.begin(), exponents.end());
            exponents.erase(std::unique(exponents.begin(), exponents.end()),
                            exponents.end());
        }
        enumeration_ = std::move(fresh);
    }
    static const std::vector<std::string> kNone;
    auto it = enumeration_->exponents_by_meaning.find(alpha_key(beta_reduce(meaning)));
    return it == enumeration_->exponents_by_meaning.end() ? kNone : it->second;
}

std::vector<std::string> Learner::reproduce(const Term& meaning) {
    return cached_generate(meaning);
}

// ---------------------------------------------------------------------------
// Pattern detection
// ---------------------------------------------------------------------------

std::optional<Detection> Learner::detect_pattern(const Ump& ump) const {
    // Known affixes first: a new word that decomposes as residual+affix (or
    // affix+residual) with matching one-hole semantics yields the residual
    // directly.
    for (std::size_t i = 0; i < state_.affixes.size(); ++i) {
        const AffixRecord& rec = state_.affixes[i];
        const std::string& e = ump.exponent;
        std::string residual;
        if (rec.suffix) {
            if (e.size() <= rec.exponent.size() ||
                e.compare(e.size() - rec.exponent.size(), rec.exponent.size(),
                          rec.exponent) != 0)
                continue;
            residual = e.substr(0, e.size() - rec.exponent.size());
        } else {
            if (e.size() <= rec.exponent.size() ||
                e.compare(0, rec.exponent.size(), rec.exponent) != 0)
                continue;
            residual = e.substr(rec.exponent.size());
        }
        auto rho = match_context(rec.context, ump.semantics);
        if (!rho) continue;
        Detection det;
        det.affix_index = static_cast<int>(i);
        det.affix = rec.exponent;
        det.suffix = rec.suffix;
        det.context = rec.context;
        det.pairs.emplace_back(residual, *rho);
        return det;
    }

    // Otherwise pair the incoming word against stored whole-word entries.
    // A candidate affix is accepted only when anchored: one of the residuals
    // must already name a known entry with the residual's semantics.
    for (const auto& entry : state_.lexicon.entries()) {
        if (!is_rote_entry(entry) || entry.exponent == ump.exponent) continue;
        if (alpha_equal(entry.semantics, ump.semantics)) continue;
        auto gen = [&]() -> std::optional<Generalization> {
            try {
                return anti_unify(entry.semantics, ump.semantics);
            } catch (const TermError&) {
                return std::nullopt;
            }
        }();
        if (!gen) continue;

        auto anchored = [&](const std::string& exponent, const Term& semantics) {
            return std::any_of(state_.lexicon.entries().begin(),
                               state_.lexicon.entries().end(), [&](const Sign& s) {
                                   return s.exponent == exponent &&
                                          alpha_equal(s.semantics, semantics);
                               });
        };

        struct CandidateAffix {
            std::string affix;
            bool suffix;
        };
        std::vector<CandidateAffix> candidates;
        std::string smax = longest_common_suffix(entry.exponent, ump.exponent);
        for (std::size_t len = smax.size(); len >= kMinAffixLength; --len) {
            if (len >= entry.exponent.size() || len >= ump.exponent.size()) continue;
            candidates.push_back({smax.substr(smax.size() - len), true});
        }
        std::string pmax = longest_common_prefix(entry.exponent, ump.exponent);
        for (std::size_t len = pmax.size(); len >= kMinAffixLength; --len) {
            if (len >= entry.exponent.size() || len >= ump.exponent.size()) continue;
            candidates.push_back({pmax.substr(0, len), false});
        }

        for (const auto& cand : candidates) {
            std::string r_stored, r_in;
            if (cand.suffix) {
                r_stored = entry.exponent.substr(0, entry.exponent.size() - cand.affix.size());
                r_in = ump.exponent.substr(0, ump.exponent.size() - cand.affix.size());
            } else {
                r_stored = entry.exponent.substr(cand.affix.size());
                r_in = ump.exponent.substr(cand.affix.size());
            }
            if (!anchored(r_in, gen->right) && !anchored(r_stored, gen->left)) continue;

            Detection det;
            det.affix = cand.affix;
            det.suffix = cand.suffix;
            det.context = gen->context;
            // Every stored whole word that decomposes against the new affix
            // contributes a residual; the incoming word comes last.
            for (const auto& other : state_.lexicon.entries()) {
                if (!is_rote_entry(other)) continue;
                const std::string& oe = other.exponent;
                if (oe.size() <= cand.affix.size()) continue;
                std::string r;
                if (cand.suffix) {
                    if (oe.compare(oe.size() - cand.affix.size(), cand.affix.size(),
                                   cand.affix) != 0)
                        continue;
                    r = oe.substr(0, oe.size() - cand.affix.size());
                } else {
                    if (oe.compare(0, cand.affix.size(), cand.affix) != 0) continue;
                    r = oe.substr(cand.affix.size());
                }
                auto rho = match_context(gen->context, other.semantics);
                if (rho) det.pairs.emplace_back(r, *rho);
            }
            det.pairs.emplace_back(r_in, gen->right);
            return det;
        }
    }
    return std::nullopt;
}

// ---------------------------------------------------------------------------
// Segmentation
// ---------------------------------------------------------------------------

void Learner::segment_and_revise(const Detection& detection, const Ump& ump) {
    std::vector<Sign> added, removed;

    if (detection.affix_index >= 0) {
        AffixRecord& rec = state_.affixes[static_cast<std::size_t>(detection.affix_index)];
        for (const auto& [residual, rho] : detection.pairs) {
            if (rec.licensee.empty()) {
                Sign plain{residual, plain_num(), rho};
                bool known = std::any_of(
                    state_.lexicon.entries().begin(), state_.lexicon.entries().end(),
                    [&](const Sign& s) {
                        return s.exponent == residual && alpha_equal(s.semantics, rho);
                    });
                if (!known) lex_add(plain, added);
            } else {
                ensure_allomorph(residual, rho, rec.licensee, added, removed);
            }
            if (std::none_of(rec.residuals.begin(), rec.residuals.end(),
                             [&](const auto& p) { return p.first == residual; }))
                rec.residuals.emplace_back(residual, rho);
        }
        if (!added.empty() || !removed.empty())
            emit(EventKind::SegmentationRevision, std::move(added), std::move(removed), ump);
        return;
    }

    // New affix: revise composite whole-word entries, then store the affix
    // and any missing residuals.
    AffixRecord rec;
    rec.exponent = detection.affix;
    rec.suffix = detection.suffix;
    rec.context = detection.context;
    rec.residuals = detection.pairs;

    std::vector<Sign> composites;
    for (const auto& entry : state_.lexicon.entries()) {
        if (!is_rote_entry(entry)) continue;
        const std::string& oe = entry.exponent;
        if (oe.size() <= detection.affix.size()) continue;
        bool matches = detection.suffix
                           ? oe.compare(oe.size() - detection.affix.size(),
                                        detection.affix.size(), detection.affix) == 0
                           : oe.compare(0, detection.affix.size(), detection.affix) == 0;
        if (matches && match_context(detection.context, entry.semantics))
            composites.push_back(entry);
    }
    for (const auto& entry : composites) lex_remove(entry, removed);

    Sign affix_entry;
    affix_entry.exponent = detection.affix;
    affix_entry.semantics = detection.context;
    // Suffix morphemes select to the left through merge-2 and keep the
    // derived category the revision produced them with; prefix morphemes
    // linearize through merge-1 and so are stored as lexical selectors.
    affix_entry.type.category = detection.suffix ? Category::Derived : Category::Lexical;
    affix_entry.type.features = {Feature{FeatureKind::Selector, "num"}, kStart};
    lex_add(affix_entry, added);

    for (const auto& [residual, rho] : detection.pairs) {
        bool known = std::any_of(state_.lexicon.entries().begin(),
                                 state_.lexicon.entries().end(), [&](const Sign& s) {
                                     return s.exponent == residual &&
                                            alpha_equal(s.semantics, rho);
                                 });
        if (!known) lex_add(Sign{residual, plain_num(), rho}, added);
    }

    state_.affixes.push_back(std::move(rec));
    emit(EventKind::SegmentationRevision, std::move(added), std::move(removed), ump);
}

void Learner::observe(const Ump& ump) {
    state_.clock += 1;
    bool seen = is_free_word(ump.exponent);
    if (!seen) state_.history.push_back(ump);

    if (auto detection = detect_pattern(ump)) {
        segment_and_revise(*detection, ump);
        return;
    }
    Sign entry{ump.exponent, plain_num(), ump.semantics};
    if (!state_.lexicon.contains(entry)) {
        std::vector<Sign> added;
        lex_add(entry, added);
        emit(EventKind::RoteAdd, std::move(added), {}, ump);
    }
}

// ---------------------------------------------------------------------------
// Licensing reorganization
// ---------------------------------------------------------------------------

void Learner::ensure_allomorph(const std::string& exponent, const Term& semantics,
                               const std::string& licensee, std::vector<Sign>& added,
                               std::vector<Sign>& removed) {
    Sign licensed{exponent, licensed_num(licensee), semantics};
    if (state_.lexicon.contains(licensed)) return;
    Sign plain{exponent, plain_num(), semantics};
    if (state_.lexicon.contains(plain) && !is_free_word(exponent))
        lex_remove(plain, removed);
    lex_add(licensed, added);
}

void Learner::licensing_reorg(const std::string& offending, const Ump& ump) {
    // Locate the ambiguous pair: entries B (the free filler, part of the
    // offending exponent) and A (the bound allomorph, part of the correct
    // one) with the same semantics and the same surrounding material.
    const Sign* filler = nullptr;
    const Sign* bound = nullptr;
    std::string before, after;
    for (const auto& b : state_.lexicon.entries()) {
        if (b.exponent.empty() || filler) continue;
        for (std::size_t pos = 0; (pos = offending.find(b.exponent, pos)) != std::string::npos;
             ++pos) {
            std::string p = offending.substr(0, pos);
            std::string s = offending.substr(pos + b.exponent.size());
            for (const auto& a : state_.lexicon.entries()) {
                if (a.exponent == b.exponent || a.exponent.empty()) continue;
                if (!alpha_equal(a.semantics, b.semantics)) continue;
                if (p + a.exponent + s == ump.exponent) {
                    filler = &b;
                    bound = &a;
                    before = p;
                    after = s;
                    break;
                }
            }
            if (filler) break;
        }
        if (filler) break;
    }
    if (!filler)
        throw LearnStuckError("punished exponent '" + offending +
                              "' admits no allomorph repair toward '" + ump.exponent + "'");

    // Two shapes of ambiguity: the free form filled an affix slot (the
    // surrounding material names the family, the bound side sits in the
    // correct exponent), or a bound allomorph surfaced on its own (the
    // offending exponent is itself a residual of some family).
    AffixRecord* rec = nullptr;
    const Sign* to_license = nullptr;
    for (auto& r : state_.affixes) {
        if ((r.suffix && before.empty() && after == r.exponent) ||
            (!r.suffix && after.empty() && before == r.exponent)) {
            rec = &r;
            to_license = bound;
            break;
        }
    }
    if (!rec && before.empty() && after.empty()) {
        for (auto& r : state_.affixes) {
            bool residual_of_family = std::any_of(
                r.residuals.begin(), r.residuals.end(), [&](const auto& p) {
                    return p.first == filler->exponent &&
                           alpha_equal(p.second, filler->semantics);
                });
            if (residual_of_family) {
                rec = &r;
                to_license = filler;
                break;
            }
        }
    }
    if (!rec)
        throw LearnStuckError("no affix family covers punished exponent '" + offending + "'");

    std::vector<Sign> added, removed;
    Sign bound_copy = *to_license;  // pointers invalidate on mutation

    if (rec->licensee.empty()) {
        rec->licensee = fresh_licensee();
        // Insert the licensor right after the selector of the affix entry.
        std::optional<Sign> affix_entry;
        for (const auto& entry : state_.lexicon.entries()) {
            if (entry.exponent != rec->exponent) continue;
            if (!alpha_equal(entry.semantics, rec->context)) continue;
            if (entry.type.features.empty() ||
                entry.type.features.front().kind != FeatureKind::Selector)
                continue;
            affix_entry = entry;
            break;
        }
        if (affix_entry) {
            Sign updated = *affix_entry;
            updated.type.features.insert(updated.type.features.begin() + 1,
                                         Feature{FeatureKind::Licensor, rec->licensee});
            lex_remove(*affix_entry, removed);
            lex_add(updated, added);
        }
    }

    ensure_allomorph(bound_copy.exponent, bound_copy.semantics, rec->licensee, added,
                     removed);
    for (const auto& [residual, rho] : rec->residuals)
        ensure_allomorph(residual, rho, rec->licensee, added, removed);
    if (std::none_of(rec->residuals.begin(), rec->residuals.end(),
                     [&](const auto& p) { return p.first == bound_copy.exponent; }))
        rec->residuals.emplace_back(bound_copy.exponent, bound_copy.semantics);

    emit(EventKind::LicensingReorg, std::move(added), std::move(removed), ump, offending);
}

// ---------------------------------------------------------------------------
// Reproduction loop
// ---------------------------------------------------------------------------

bool Learner::reproduce_and_learn(const Ump& ump) {
    bool changed = false;
    for (int attempt = 0; attempt <= kRetryCap; ++attempt) {
        const auto candidates = cached_generate(ump.semantics);
        auto feedback = judge(ump, candidates);
        std::string first_offender;
        for (const auto& fb : feedback) {
            if (fb.verdict == Feedback::Verdict::Reward)
                emit(EventKind::Reward, {}, {}, ump);
            else {
                emit(EventKind::Punish, {}, {}, ump, fb.offending);
                if (first_offender.empty() && !fb.offending.empty())
                    first_offender = fb.offending;
            }
        }
        if (candidates.size() == 1 && candidates.front() == ump.exponent) return changed;
        if (first_offender.empty())
            throw LearnStuckError("cannot reproduce '" + ump.exponent +
                                  "': no derivation yields the meaning");
        try {
            licensing_reorg(first_offender, ump);
        } catch (const LearnStuckError&) {
            if (!revert_reorganization(ump)) throw;
        }
        changed = true;
    }
    throw LearnStuckError("retry cap exceeded while relearning '" + ump.exponent + "'");
}

bool Learner::revert_reorganization(const Ump& ump) {
    for (std::size_t i = 0; i < state_.affixes.size(); ++i) {
        if (!state_.affixes[i].reorganized) continue;
        LearnerState snapshot = state_;
        AffixRecord& rec = state_.affixes[i];
        std::vector<Sign> added, removed;
        for (const auto& s : rec.reorg_added) lex_remove(s, removed);
        for (const auto& s : rec.reorg_removed) lex_add(s, added);
        rec.reorganized = false;
        rec.reorg_blocked = true;
        if (regression_holds()) {
            emit(EventKind::SemanticReorg, std::move(added), std::move(removed), ump);
            return true;
        }
        state_ = std::move(snapshot);
        ++lexicon_version_;
    }
    return false;
}

// ---------------------------------------------------------------------------
// Semantic reorganization
// ---------------------------------------------------------------------------

bool Learner::regression_holds() {
    for (const auto& ump : state_.history) {
        const auto& candidates = cached_generate(ump.semantics);
        if (candidates.size() != 1 || candidates.front() != ump.exponent) return false;
    }
    return true;
}

bool Learner::semantic_reorg() {
    for (std::size_t i = 0; i < state_.affixes.size(); ++i) {
        AffixRecord& rec = state_.affixes[i];
        if (rec.reorganized || rec.reorg_blocked) continue;

        const Sign* affix_entry = nullptr;
        for (const auto& entry : state_.lexicon.entries()) {
            if (entry.exponent == rec.exponent && !entry.type.features.empty() &&
                entry.type.features.front().kind == FeatureKind::Selector &&
                alpha_equal(entry.semantics, rec.context)) {
                affix_entry = &entry;
                break;
            }
        }
        if (!affix_entry) continue;
        auto split = factor_operator(affix_entry->semantics);
        if (!split) continue;

        LearnerState snapshot = state_;
        std::vector<Sign> added, removed;
        Sign old_entry = *affix_entry;
        lex_remove(old_entry, removed);

        if (rec.suffix) {
            // Void operator inherits the affix's remaining feature string.
            Sign op_entry;
            op_entry.exponent = "";
            op_entry.type.category = Category::Lexical;
            op_entry.type.features = {Feature{FeatureKind::Selector, "num"}};
            op_entry.type.features.insert(op_entry.type.features.end(),
                                          old_entry.type.features.begin(),
                                          old_entry.type.features.end());
            op_entry.semantics = split->op;
            lex_add(op_entry, added);
            lex_add(Sign{rec.exponent, plain_num(), split->residual}, added);
        } else {
            // Prefix affixes dissolve into the swapped-argument operator so
            // the residual carrier still linearizes to the left; the carrier
            // keeps a licensee for it.
            Term op_kind = split->op.body().body().fn().fn();
            Term swapped = swapped_operator(op_kind);
            std::string licensee;
            for (const auto& entry : state_.lexicon.entries()) {
                if (!entry.exponent.empty() || entry.type.features.size() != 4) continue;
                if (entry.type.features[2].kind == FeatureKind::Licensor &&
                    alpha_equal(entry.semantics, swapped)) {
                    licensee = entry.type.features[2].ident;
                    break;
                }
            }
            if (licensee.empty()) {
                licensee = fresh_licensee();
                Sign op_entry;
                op_entry.exponent = "";
                op_entry.type.category = Category::Lexical;
                op_entry.type.features = {Feature{FeatureKind::Selector, "num"},
                                          Feature{FeatureKind::Selector, "num"},
                                          Feature{FeatureKind::Licensor, licensee}, kStart};
                op_entry.semantics = swapped;
                lex_add(op_entry, added);
            }
            Sign carrier{rec.exponent, licensed_num(licensee), split->residual};
            if (!state_.lexicon.contains(carrier)) lex_add(carrier, added);
        }

        if (regression_holds()) {
            rec.reorganized = true;
            rec.reorg_added = added;
            rec.reorg_removed = removed;
            emit(EventKind::SemanticReorg, std::move(added), std::move(removed), std::nullopt);
            return true;
        }
        state_ = std::move(snapshot);
        ++lexicon_version_;  // invalidate cache entries of the trial state
        state_.affixes[i].reorg_blocked = true;
    }
    return false;
}

// ---------------------------------------------------------------------------
// Training loop
// ---------------------------------------------------------------------------

TrainResult Learner::train(int max_n) {
    TrainResult result;
    try {
        for (int t = 1; t <= max_n; ++t) {
            observe(ump_for(t, orthography_));
            bool settled = false;
            for (int sweep = 0; sweep < kSweepCap; ++sweep) {
                bool changed = false;
                for (const auto& ump : state_.history)
                    changed = reproduce_and_learn(ump) || changed;
                if (!changed) {
                    settled = true;
                    break;
                }
            }
            if (!settled)
                throw LearnStuckError("lexicon did not stabilize at step " +
                                      std::to_string(t));
            while (semantic_reorg()) {
            }
        }
        result.converged = true;
    } catch (const LearnStuckError& e) {
        result.converged = false;
        result.failure = e.what();
    }
    result.lexicon = state_.lexicon;
    result.trace = trace_;
    return result;
}

TrainResult train(const TeacherConfig& config, const TransducerOptions& options) {
    Learner learner(options, config.orthography);
    return learner.train(config.max_number);
}

}  // namespace numgram
