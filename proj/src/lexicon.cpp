#include "numgram/lexicon.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

namespace numgram {

bool Lexicon::add(Sign entry) {
    if (contains(entry)) return false;
    entries_.push_back(std::move(entry));
    return true;
}

bool Lexicon::remove(const Sign& entry) {
    auto it = std::find(entries_.begin(), entries_.end(), entry);
    if (it == entries_.end()) return false;
    entries_.erase(it);
    return true;
}

bool Lexicon::contains(const Sign& entry) const {
    return std::find(entries_.begin(), entries_.end(), entry) != entries_.end();
}

Sign Lexicon::parse_line(std::string_view line) {
    std::string text(line);
    std::istringstream in(text);
    std::string exponent, cat;
    if (!(in >> exponent >> cat)) throw LexiconError("truncated lexicon line: " + text);

    Sign sign;
    sign.exponent = exponent == "@eps" ? "" : exponent;
    if (cat == "::")
        sign.type.category = Category::Lexical;
    else if (cat == ":")
        sign.type.category = Category::Derived;
    else
        throw LexiconError("bad category '" + cat + "' in: " + text);

    std::string tok;
    bool saw_semicolon = false;
    while (in >> tok) {
        if (tok == ";") {
            saw_semicolon = true;
            break;
        }
        try {
            sign.type.features.push_back(parse_feature(tok));
        } catch (const GrammarError& e) {
            throw LexiconError(std::string(e.what()) + " in: " + text);
        }
    }
    if (!saw_semicolon) throw LexiconError("missing ';' in: " + text);
    if (sign.type.features.empty()) throw LexiconError("no features in: " + text);

    std::string term_text;
    std::getline(in, term_text);
    try {
        sign.semantics = parse_term(term_text);
    } catch (const TermError& e) {
        throw LexiconError(std::string(e.what()) + " in: " + text);
    }
    return sign;
}

std::string Lexicon::format_line(const Sign& entry) {
    std::string out = entry.exponent.empty() ? "@eps" : entry.exponent;
    out += ' ';
    out += to_string(entry.type);
    out += " ; ";
    out += format_term(entry.semantics);
    return out;
}

Lexicon Lexicon::parse(std::istream& in) {
    Lexicon lex;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#') continue;
        lex.add(parse_line(line));
    }
    return lex;
}

Lexicon Lexicon::load(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw LexiconError("cannot open lexicon file: " + path.string());
    return parse(in);
}

std::string Lexicon::to_text() const {
    std::string out;
    for (const auto& e : entries_) {
        out += format_line(e);
        out += '\n';
    }
    return out;
}

void Lexicon::save(const std::filesystem::path& path) const {
    std::ofstream out(path);
    if (!out) throw LexiconError("cannot write lexicon file: " + path.string());
    out << to_text();
}

}  // namespace numgram
