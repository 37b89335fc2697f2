#include <filesystem>
#include <iostream>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "numgram/learner.hpp"
#include "numgram/lexicon.hpp"
#include "numgram/teacher.hpp"
#include "numgram/trace.hpp"
#include "numgram/transducer.hpp"

namespace {

using namespace numgram;

constexpr int kExitOk = 0;
constexpr int kExitNoResult = 1;
constexpr int kExitStuck = 2;
constexpr int kExitBadLexicon = 3;
constexpr int kExitAmbiguousKey = 4;

Lexicon load_lexicon_or_exit(const std::string& path) {
    try {
        return Lexicon::load(path);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        std::exit(kExitBadLexicon);
    }
}

int cmd_train(int max_number, const std::string& orthography, int max_leaves,
              std::size_t chart_cap, const std::string& lexicon_out,
              const std::string& trace_out, const std::string& config_path) {
    TeacherConfig config;
    if (!config_path.empty()) {
        try {
            config = TeacherConfig::load(config_path);
        } catch (const std::exception& e) {
            std::cerr << "error: " << e.what() << '\n';
            return kExitBadLexicon;
        }
    }
    if (max_number > 0) config.max_number = max_number;
    if (!orthography.empty())
        config.orthography =
            orthography == "standard" ? Orthography::Standard : Orthography::Paper;

    TransducerOptions options;
    options.max_leaves = max_leaves;
    options.chart_cap = chart_cap;

    TrainResult result = train(config, options);

    if (!lexicon_out.empty()) result.lexicon.save(lexicon_out);
    if (!trace_out.empty()) save_trace(result.trace, trace_out);

    int correct = 0;
    if (result.converged) {
        for (int n = 1; n <= config.max_number; ++n) {
            Ump expected = ump_for(n, config.orthography);
            auto produced = generate(result.lexicon, expected.semantics, options);
            if (produced.size() == 1 && produced.front() == expected.exponent) ++correct;
        }
    }
    std::cout << "entries: " << result.lexicon.size() << '\n';
    std::cout << "events: " << result.trace.size() << '\n';
    std::cout << "round-trip: " << correct << '/' << config.max_number << '\n';
    if (!result.converged) {
        std::cerr << "learning stuck: " << result.failure << '\n';
        return kExitStuck;
    }
    return kExitOk;
}

int cmd_generate(const std::string& lexicon_path, int value, int max_leaves) {
    Lexicon lex = load_lexicon_or_exit(lexicon_path);
    TransducerOptions options;
    options.max_leaves = max_leaves;
    Term meaning = Term::number(0);
    try {
        meaning = term_for(value);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitNoResult;
    }
    auto exponents = generate(lex, meaning, options);
    for (const auto& e : exponents) std::cout << e << '\n';
    return exponents.empty() ? kExitNoResult : kExitOk;
}

int cmd_parse(const std::string& lexicon_path, const std::string& utterance,
              int max_leaves) {
    Lexicon lex = load_lexicon_or_exit(lexicon_path);
    TransducerOptions options;
    options.max_leaves = max_leaves;
    auto meanings = parse_utterance(lex, utterance, options);
    for (const auto& term : meanings) {
        std::cout << format_term(term);
        try {
            std::cout << " = " << evaluate(term);
        } catch (const TermError&) {
            // non-numeric semantics, print the bare term
        }
        std::cout << '\n';
    }
    return meanings.empty() ? kExitNoResult : kExitOk;
}

std::vector<std::string> split_keys(const std::string& items) {
    std::vector<std::string> keys;
    std::string current;
    for (char c : items) {
        if (c == ',') {
            if (!current.empty()) keys.push_back(current);
            current.clear();
        } else {
            current += c;
        }
    }
    if (!current.empty()) keys.push_back(current);
    return keys;
}

// Keys are `exponent` or `exponent#i` (1-based, file order); ε entries go by
// "eps" or "@eps".
std::optional<Sign> resolve_key(const Lexicon& lex, const std::string& key, bool& ambiguous) {
    std::string exponent = key;
    int index = -1;
    if (auto hash = key.find('#'); hash != std::string::npos) {
        exponent = key.substr(0, hash);
        try {
            index = std::stoi(key.substr(hash + 1));
        } catch (const std::exception&) {
            return std::nullopt;
        }
    }
    if (exponent == "eps" || exponent == "@eps") exponent = "";
    std::vector<Sign> matches;
    for (const auto& entry : lex.entries())
        if (entry.exponent == exponent) matches.push_back(entry);
    if (matches.empty()) return std::nullopt;
    if (index >= 1 && static_cast<std::size_t>(index) <= matches.size())
        return matches[static_cast<std::size_t>(index) - 1];
    if (index == -1 && matches.size() == 1) return matches.front();
    ambiguous = index == -1 && matches.size() > 1;
    return std::nullopt;
}

struct DeriveStep {
    std::string rule;
    std::string premises;
    std::string conclusion;
};

bool derive_dfs(std::vector<Expression> items, std::vector<DeriveStep>& steps,
                std::vector<DeriveStep>& best, Expression& final_expr) {
    if (steps.size() > best.size()) best = steps;
    if (items.size() == 1 && is_complete(items[0], Feature{FeatureKind::Base, "num"})) {
        final_expr = items[0];
        best = steps;
        return true;
    }
    for (std::size_t i = 0; i < items.size(); ++i) {
        for (std::size_t j = 0; j < items.size(); ++j) {
            if (i == j) continue;
            auto res = merge(items[i], items[j]);
            if (!res.applied()) continue;
            std::vector<Expression> next;
            for (std::size_t k = 0; k < items.size(); ++k)
                if (k != i && k != j) next.push_back(items[k]);
            next.push_back(*res.result);
            steps.push_back({res.rule, to_string(items[i]) + " + " + to_string(items[j]),
                             to_string(*res.result)});
            if (derive_dfs(std::move(next), steps, best, final_expr)) return true;
            steps.pop_back();
        }
    }
    for (std::size_t i = 0; i < items.size(); ++i) {
        auto res = move(items[i]);
        if (!res.applied()) continue;
        std::vector<Expression> next;
        for (std::size_t k = 0; k < items.size(); ++k)
            if (k != i) next.push_back(items[k]);
        next.push_back(*res.result);
        steps.push_back({res.rule, to_string(items[i]), to_string(*res.result)});
        if (derive_dfs(std::move(next), steps, best, final_expr)) return true;
        steps.pop_back();
    }
    return false;
}

int cmd_derive(const std::string& lexicon_path, const std::string& items, bool show_steps) {
    Lexicon lex = load_lexicon_or_exit(lexicon_path);
    std::vector<Expression> leaves;
    for (const auto& key : split_keys(items)) {
        bool ambiguous = false;
        auto entry = resolve_key(lex, key, ambiguous);
        if (ambiguous) {
            std::cerr << "error: ambiguous entry key '" << key << "' (use exponent#i)\n";
            return kExitAmbiguousKey;
        }
        if (!entry) {
            std::cerr << "error: no lexicon entry for key '" << key << "'\n";
            return kExitAmbiguousKey;
        }
        leaves.push_back(Expression{{*entry}});
    }
    if (leaves.empty()) {
        std::cerr << "error: --items is empty\n";
        return kExitAmbiguousKey;
    }

    std::vector<DeriveStep> steps, best;
    Expression final_expr;
    bool ok = derive_dfs(leaves, steps, best, final_expr);
    if (show_steps)
        for (const auto& s : best)
            std::cout << s.rule << ": " << s.premises << " => " << s.conclusion << '\n';
    if (!ok) {
        std::cerr << "stuck: the items admit no complete derivation\n";
        return kExitNoResult;
    }
    std::cout << "result: " << to_string(final_expr) << '\n';
    return kExitOk;
}

int cmd_lexicon_show(const std::string& lexicon_path) {
    Lexicon lex = load_lexicon_or_exit(lexicon_path);
    std::cout << lex.to_text();
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Minimalist numeral grammar workbench"};
    app.require_subcommand(1);

    int max_number = 0;
    std::string orthography;
    int max_leaves = 5;
    std::size_t chart_cap = 100000;
    std::string lexicon_path, trace_path, config_path, utterance, items;
    int value = 0;
    bool show_steps = false;

    auto* train_cmd = app.add_subcommand("train", "run the teacher/learner loop");
    train_cmd->add_option("--max", max_number, "highest number to teach (default 99)");
    train_cmd->add_option("--orthography", orthography, "paper|standard");
    train_cmd->add_option("--max-leaves", max_leaves, "derivation size bound");
    train_cmd->add_option("--chart-cap", chart_cap, "chart item cap");
    train_cmd->add_option("--lexicon", lexicon_path, "lexicon output file");
    train_cmd->add_option("--trace", trace_path, "JSONL trace output file");
    train_cmd->add_option("--config", config_path, "key=value teacher config file");

    auto* generate_cmd = app.add_subcommand("generate", "meaning to exponents");
    generate_cmd->add_option("--lexicon", lexicon_path, "lexicon file")->required();
    generate_cmd->add_option("--value", value, "number to express")->required();
    generate_cmd->add_option("--max-leaves", max_leaves, "derivation size bound");

    auto* parse_cmd = app.add_subcommand("parse", "exponent to meanings");
    parse_cmd->add_option("--lexicon", lexicon_path, "lexicon file")->required();
    parse_cmd->add_option("--utterance", utterance, "surface string")->required();
    parse_cmd->add_option("--max-leaves", max_leaves, "derivation size bound");

    auto* derive_cmd = app.add_subcommand("derive", "replay a derivation from entries");
    derive_cmd->add_option("--lexicon", lexicon_path, "lexicon file")->required();
    derive_cmd->add_option("--items", items, "comma separated entry keys")->required();
    derive_cmd->add_flag("--show-steps", show_steps, "print every inference step");

    auto* show_cmd = app.add_subcommand("lexicon-show", "print a lexicon canonically");
    show_cmd->add_option("--lexicon", lexicon_path, "lexicon file")->required();

    CLI11_PARSE(app, argc, argv);

    try {
        if (train_cmd->parsed())
            return cmd_train(max_number, orthography, max_leaves, chart_cap, lexicon_path,
                             trace_path, config_path);
        if (generate_cmd->parsed()) return cmd_generate(lexicon_path, value, max_leaves);
        if (parse_cmd->parsed()) return cmd_parse(lexicon_path, utterance, max_leaves);
        if (derive_cmd->parsed()) return cmd_derive(lexicon_path, items, show_steps);
        if (show_cmd->parsed()) return cmd_lexicon_show(lexicon_path);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitBadLexicon;
    }
    return kExitOk;
}
