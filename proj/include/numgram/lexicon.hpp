#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "numgram/grammar.hpp"

namespace numgram {

class LexiconError : public std::runtime_error {
public:
    explicit LexiconError(std::string msg) : std::runtime_error(std::move(msg)) {}
};

/// Ordered set of lexical signs. Insertion order is preserved and is the
/// canonical serialization order; membership is sign equality (exponent,
/// type, alpha-equivalent semantics).
class Lexicon {
public:
    bool add(Sign entry);             // false if already present
    bool remove(const Sign& entry);   // false if absent
    bool contains(const Sign& entry) const;
    void clear() { entries_.clear(); }

    const std::vector<Sign>& entries() const { return entries_; }
    std::size_t size() const { return entries_.size(); }
    bool empty() const { return entries_.empty(); }

    /// One entry per line: `exponent cat feature+ ; term`, "@eps" for the
    /// empty exponent. Example: `thir :: num -k ; 3`.
    static Sign parse_line(std::string_view line);
    static std::string format_line(const Sign& entry);

    static Lexicon parse(std::istream& in);
    static Lexicon load(const std::filesystem::path& path);
    std::string to_text() const;
    void save(const std::filesystem::path& path) const;

private:
    std::vector<Sign> entries_;
};

}  // namespace numgram
