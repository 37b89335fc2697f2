#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "numgram/term.hpp"

namespace numgram {

enum class Orthography { Paper, Standard };

/// key=value text file: max_number, orthography = paper|standard.
struct TeacherConfig {
    int max_number = 99;
    Orthography orthography = Orthography::Paper;

    static TeacherConfig load(const std::filesystem::path& path);
};

/// Utterance-meaning pair: surface exponent plus arithmetic term.
struct Ump {
    std::string exponent;
    Term semantics = Term::number(0);
};

struct Feedback {
    enum class Verdict { Reward, Punish };
    Verdict verdict = Verdict::Reward;
    std::string offending;  // set for Punish (empty when nothing was produced)
};

/// Canonical decimal-expansion term for 1..9999; two-digit numbers take the
/// shapes the teacher utters (bare unit literals, 10 as the power literal).
Term term_for(int n);

/// Teacher utterance for 1..99 with concatenated orthography (thirteen,
/// twenty, fourtytwo, ...). Paper spelling keeps "fourty"; standard swaps in
/// "forty".
Ump ump_for(int n, Orthography orthography = Orthography::Paper);

/// Per-candidate verdicts: Reward iff the candidate equals the expected
/// exponent character for character. An empty candidate list yields a single
/// Punish with an empty offending exponent.
std::vector<Feedback> judge(const Ump& expected, const std::vector<std::string>& produced);

}  // namespace numgram
