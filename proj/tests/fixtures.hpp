#pragma once

#include <string>
#include <vector>

#include "numgram/lexicon.hpp"

namespace numgram::fixtures {

inline Lexicon from_lines(const std::vector<std::string>& lines) {
    Lexicon lex;
    for (const auto& line : lines) lex.add(Lexicon::parse_line(line));
    return lex;
}

/// Lexicon after the first twelve numerals have been learned by rote.
inline Lexicon simplex_lexicon() {
    return from_lines({
        "one :: num ; 1",
        "two :: num ; 2",
        "three :: num ; 3",
        "four :: num ; 4",
        "five :: num ; 5",
        "six :: num ; 6",
        "seven :: num ; 7",
        "eight :: num ; 8",
        "nine :: num ; 9",
        "ten :: num ; 10^1",
        "eleven :: num ; (add (mul 10^1 1) 1)",
        "twelve :: num ; (add (mul 10^1 1) 2)",
    });
}

/// Simplex lexicon plus the freshly abstracted teen morpheme and the thir
/// allomorph, before any licensing (the ambiguous stage).
inline Lexicon segmented_lexicon() {
    Lexicon lex = simplex_lexicon();
    lex.add(Lexicon::parse_line("teen : =num num ; (lam x (add (mul 10^1 1) x))"));
    lex.add(Lexicon::parse_line("thir :: num ; 3"));
    return lex;
}

/// Lexicon after punishment-driven licensing: allomorphs carry -k and teen
/// requires +k. The eighteen row uses the eigh allomorph with eight kept as
/// a plain numeral.
inline Lexicon licensed_lexicon() {
    return from_lines({
        "one :: num ; 1",
        "two :: num ; 2",
        "three :: num ; 3",
        "thir :: num -k ; 3",
        "four :: num -k ; 4",
        "five :: num ; 5",
        "fif :: num -k ; 5",
        "six :: num -k ; 6",
        "seven :: num -k ; 7",
        "eight :: num ; 8",
        "eigh :: num -k ; 8",
        "nine :: num -k ; 9",
        "ten :: num ; 10^1",
        "eleven :: num ; (add (mul 10^1 1) 1)",
        "twelve :: num ; (add (mul 10^1 1) 2)",
        "teen : =num +k num ; (lam x (add (mul 10^1 1) x))",
    });
}

/// Lexicon after semantic reorganization: the teen morpheme is split into
/// the phonetically void addition operator and a plain numeral.
inline Lexicon reorganized_lexicon() {
    return from_lines({
        "one :: num ; 1",
        "two :: num ; 2",
        "three :: num ; 3",
        "thir :: num -k ; 3",
        "four :: num -k ; 4",
        "five :: num ; 5",
        "fif :: num -k ; 5",
        "six :: num -k ; 6",
        "seven :: num -k ; 7",
        "eight :: num ; 8",
        "eigh :: num -k ; 8",
        "nine :: num -k ; 9",
        "ten :: num ; 10^1",
        "teen :: num ; (mul 10^1 1)",
        "eleven :: num ; (add (mul 10^1 1) 1)",
        "twelve :: num ; (add (mul 10^1 1) 2)",
        "@eps :: =num =num +k num ; (lam y (lam x (add y x)))",
    });
}

}  // namespace numgram::fixtures
