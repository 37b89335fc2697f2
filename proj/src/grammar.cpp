#include "numgram/grammar.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

namespace numgram {

std::string to_string(const Feature& f) {
    switch (f.kind) {
        case FeatureKind::Base:
            return f.ident;
        case FeatureKind::Selector:
            return "=" + f.ident;
        case FeatureKind::Licensor:
            return "+" + f.ident;
        case FeatureKind::Licensee:
            return "-" + f.ident;
    }
    return {};
}

namespace {

bool valid_ident(std::string_view s) {
    if (s.empty() || !std::islower(static_cast<unsigned char>(s[0]))) return false;
    return std::all_of(s.begin(), s.end(), [](unsigned char c) {
        return std::islower(c) || std::isdigit(c);
    });
}

}  // namespace

Feature parse_feature(std::string_view token) {
    if (token.empty()) throw GrammarError("empty feature token");
    FeatureKind kind = FeatureKind::Base;
    switch (token[0]) {
        case '=':
            kind = FeatureKind::Selector;
            token.remove_prefix(1);
            break;
        case '+':
            kind = FeatureKind::Licensor;
            token.remove_prefix(1);
            break;
        case '-':
            kind = FeatureKind::Licensee;
            token.remove_prefix(1);
            break;
        default:
            break;
    }
    if (!valid_ident(token))
        throw GrammarError("bad feature identifier '" + std::string(token) + "'");
    return Feature{kind, std::string(token)};
}

bool validate_syntype(const SynType& t) {
    std::size_t i = 0;
    const auto& fs = t.features;
    while (i < fs.size() && (fs[i].kind == FeatureKind::Selector ||
                             fs[i].kind == FeatureKind::Licensor))
        ++i;
    if (i >= fs.size() || fs[i].kind != FeatureKind::Base) return false;
    ++i;
    while (i < fs.size() && fs[i].kind == FeatureKind::Licensee) ++i;
    if (i != fs.size()) return false;
    return std::all_of(fs.begin(), fs.end(),
                       [](const Feature& f) { return valid_ident(f.ident); });
}

bool validate_chain_tail(const std::vector<Feature>& features) {
    return !features.empty() &&
           std::all_of(features.begin(), features.end(),
                       [](const Feature& f) { return f.kind == FeatureKind::Licensee; });
}

std::string to_string(const SynType& t) {
    std::string out = t.category == Category::Lexical ? "::" : ":";
    for (const auto& f : t.features) {
        out += ' ';
        out += to_string(f);
    }
    return out;
}

bool operator==(const Sign& a, const Sign& b) {
    return a.exponent == b.exponent && a.type == b.type &&
           alpha_equal(a.semantics, b.semantics);
}

std::string to_string(const Sign& s) {
    std::string out = "<";
    out += s.exponent.empty() ? "@eps" : s.exponent;
    out += ' ';
    out += to_string(s.type);
    out += " ; ";
    out += format_term(s.semantics);
    out += '>';
    return out;
}

bool operator==(const Expression& a, const Expression& b) {
    return a.signs.size() == b.signs.size() &&
           std::equal(a.signs.begin(), a.signs.end(), b.signs.begin());
}

std::string to_string(const Expression& e) {
    std::string out;
    for (std::size_t i = 0; i < e.signs.size(); ++i) {
        if (i) out += " | ";
        out += to_string(e.signs[i]);
    }
    return out;
}

std::string expression_key(const Expression& e) {
    std::ostringstream out;
    for (const auto& s : e.signs) {
        out << s.exponent << '\x1f' << to_string(s.type) << '\x1f'
            << alpha_key(s.semantics) << '\x1e';
    }
    return out.str();
}

bool satisfies_smc(const Expression& e) {
    for (std::size_t i = 1; i < e.signs.size(); ++i) {
        const auto& fi = e.signs[i].type.features;
        if (fi.empty() || fi.front().kind != FeatureKind::Licensee) continue;
        for (std::size_t j = i + 1; j < e.signs.size(); ++j) {
            const auto& fj = e.signs[j].type.features;
            if (!fj.empty() && fj.front().kind == FeatureKind::Licensee &&
                fj.front().ident == fi.front().ident)
                return false;
        }
    }
    return true;
}

namespace {

std::vector<Feature> drop_first(const std::vector<Feature>& fs) {
    return {fs.begin() + 1, fs.end()};
}

Term combine(const Term& fn_sem, const Term& arg_sem) {
    return beta_reduce(Term::apply(fn_sem, arg_sem));
}

RuleApplication finish(std::string rule, Expression result) {
    if (!satisfies_smc(result))
        return {RuleOutcome::SmcViolation, std::move(rule), std::nullopt};
    return {RuleOutcome::Applied, std::move(rule), std::move(result)};
}

}  // namespace

RuleApplication merge(const Expression& a, const Expression& b) {
    const Sign& h1 = a.head();
    const Sign& h2 = b.head();
    if (h1.type.features.empty() || h2.type.features.empty()) return {};
    const Feature& sel = h1.type.features.front();
    const Feature& base = h2.type.features.front();
    if (sel.kind != FeatureKind::Selector || base.kind != FeatureKind::Base ||
        sel.ident != base.ident)
        return {};

    std::vector<Feature> rest1 = drop_first(h1.type.features);
    std::vector<Feature> rest2 = drop_first(h2.type.features);
    std::vector<Sign> tail1(a.signs.begin() + 1, a.signs.end());
    std::vector<Sign> tail2(b.signs.begin() + 1, b.signs.end());

    if (!rest2.empty()) {
        // merge-3: the selected sign keeps pending features and joins the
        // chain list; semantics stay separate until movement.
        Expression out;
        out.signs.push_back(Sign{h1.exponent, SynType{Category::Derived, rest1}, h1.semantics});
        out.signs.insert(out.signs.end(), tail1.begin(), tail1.end());
        out.signs.push_back(Sign{h2.exponent, SynType{Category::Derived, rest2}, h2.semantics});
        out.signs.insert(out.signs.end(), tail2.begin(), tail2.end());
        return finish("merge-3", std::move(out));
    }

    Term sem = combine(h1.semantics, h2.semantics);
    if (h1.type.category == Category::Lexical) {
        // merge-1: complement to the right.
        Expression out;
        out.signs.push_back(
            Sign{h1.exponent + h2.exponent, SynType{Category::Derived, rest1}, sem});
        out.signs.insert(out.signs.end(), tail1.begin(), tail1.end());
        out.signs.insert(out.signs.end(), tail2.begin(), tail2.end());
        return finish("merge-1", std::move(out));
    }
    // merge-2: specifier to the left.
    Expression out;
    out.signs.push_back(
        Sign{h2.exponent + h1.exponent, SynType{Category::Derived, rest1}, sem});
    out.signs.insert(out.signs.end(), tail1.begin(), tail1.end());
    out.signs.insert(out.signs.end(), tail2.begin(), tail2.end());
    return finish("merge-2", std::move(out));
}

RuleApplication move(const Expression& e) {
    const Sign& head = e.head();
    if (head.type.features.empty()) return {};
    const Feature& lic = head.type.features.front();
    if (lic.kind != FeatureKind::Licensor) return {};

    std::size_t match = 0, count = 0;
    for (std::size_t i = 1; i < e.signs.size(); ++i) {
        const auto& fs = e.signs[i].type.features;
        if (!fs.empty() && fs.front().kind == FeatureKind::Licensee &&
            fs.front().ident == lic.ident) {
            match = i;
            ++count;
        }
    }
    if (count == 0) return {};
    if (count > 1) return {RuleOutcome::SmcViolation, "move", std::nullopt};

    const Sign& mover = e.signs[match];
    std::vector<Feature> head_rest = drop_first(head.type.features);
    std::vector<Feature> mover_rest = drop_first(mover.type.features);

    if (mover_rest.empty()) {
        // move-1: the chain's exponent lands to the left of the head and its
        // semantics is consumed.
        Expression out;
        out.signs.push_back(Sign{mover.exponent + head.exponent,
                                 SynType{Category::Derived, head_rest},
                                 combine(head.semantics, mover.semantics)});
        for (std::size_t i = 1; i < e.signs.size(); ++i)
            if (i != match) out.signs.push_back(e.signs[i]);
        return finish("move-1", std::move(out));
    }
    // move-2: both keep exponents and semantics; one licensing pair is spent.
    Expression out;
    out.signs.push_back(Sign{head.exponent, SynType{Category::Derived, head_rest},
                             head.semantics});
    for (std::size_t i = 1; i < e.signs.size(); ++i) {
        if (i == match)
            out.signs.push_back(Sign{mover.exponent, SynType{Category::Derived, mover_rest},
                                     mover.semantics});
        else
            out.signs.push_back(e.signs[i]);
    }
    return finish("move-2", std::move(out));
}

bool is_complete(const Expression& e, const Feature& start) {
    if (e.signs.size() != 1) return false;
    const auto& fs = e.head().type.features;
    return fs.size() == 1 && fs.front().kind == FeatureKind::Base &&
           fs.front().ident == start.ident;
}

}  // namespace numgram
