#include "numgram/transducer.hpp"

#include <algorithm>
#include <map>
#include <optional>
#include <unordered_map>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace numgram {

namespace {

// Wave expansion below the threshold runs serially; the parallel and serial
// paths insert candidates in identical order, so results are bit-identical.
constexpr std::size_t kParallelThreshold = 128;

struct ChartItem {
    Expression expr;
    int leaf_count = 0;
    std::string rule;                 // empty for leaves
    std::size_t op1 = 0, op2 = 0;     // chart ids (op2 unused for move)
    bool binary = false;
    std::size_t lex_index = 0;        // leaves only
};

struct Candidate {
    Expression expr;
    std::string key;  // structural dedup key, computed inside the wave
    std::string rule;
    std::size_t op1 = 0, op2 = 0;
    bool binary = false;
};

class Chart {
public:
    explicit Chart(const TransducerOptions& options) : options_(options) {}

    std::size_t size() const { return items_.size(); }
    const ChartItem& operator[](std::size_t i) const { return items_[i]; }

    // Returns the id of the inserted item, or nullopt when the expression is
    // already known (possibly at a lower leaf count).
    std::optional<std::size_t> insert(ChartItem item, std::string key) {
        if (index_.count(key)) return std::nullopt;
        if (items_.size() >= options_.chart_cap)
            throw ResourceLimitError("transducer chart exceeded " +
                                     std::to_string(options_.chart_cap) + " items");
        index_.emplace(std::move(key), items_.size());
        items_.push_back(std::move(item));
        return items_.size() - 1;
    }

private:
    TransducerOptions options_;
    std::vector<ChartItem> items_;
    std::unordered_map<std::string, std::size_t> index_;
};

template <typename Fn>
std::vector<std::optional<Candidate>> map_wave(std::size_t count, bool parallel, Fn&& fn) {
    std::vector<std::optional<Candidate>> out(count);
    std::string error;
#ifdef _OPENMP
    if (parallel && count >= kParallelThreshold) {
#pragma omp parallel for schedule(static)
        for (std::ptrdiff_t i = 0; i < static_cast<std::ptrdiff_t>(count); ++i) {
            try {
                out[static_cast<std::size_t>(i)] = fn(static_cast<std::size_t>(i));
            } catch (const std::exception& e) {
#pragma omp critical
                error = e.what();
            }
        }
        if (!error.empty()) throw ResourceLimitError("wave expansion failed: " + error);
        return out;
    }
#endif
    (void)parallel;
    for (std::size_t i = 0; i < count; ++i) out[i] = fn(i);
    if (!error.empty()) throw ResourceLimitError("wave expansion failed: " + error);
    return out;
}

// Exhausts move applications starting from the given fresh items; inserted
// results have the same leaf count as their source.
void close_under_move(Chart& chart, std::vector<std::size_t> fresh, int leaf_count,
                      const TransducerOptions& options,
                      std::vector<std::size_t>& inserted) {
    while (!fresh.empty()) {
        auto wave = map_wave(fresh.size(), options.parallel,
                             [&](std::size_t i) -> std::optional<Candidate> {
                                 auto res = move(chart[fresh[i]].expr);
                                 if (!res.applied()) return std::nullopt;
                                 std::string key = expression_key(*res.result);
                                 return Candidate{std::move(*res.result), std::move(key),
                                                  res.rule, fresh[i], 0, false};
                             });
        std::vector<std::size_t> next;
        for (auto& cand : wave) {
            if (!cand) continue;
            ChartItem item;
            item.expr = std::move(cand->expr);
            item.leaf_count = leaf_count;
            item.rule = cand->rule;
            item.op1 = cand->op1;
            if (auto id = chart.insert(std::move(item), std::move(cand->key))) {
                next.push_back(*id);
                inserted.push_back(*id);
            }
        }
        fresh = std::move(next);
    }
}

// Unfolds the shared chart into a tree-shaped derivation record; a chart
// item reached twice becomes two leaf instances.
void build_derivation(const Chart& chart, std::size_t id, Derivation& out) {
    const ChartItem& item = chart[id];
    if (item.rule.empty()) {
        out.nodes.push_back(item.expr);
        out.leaves.push_back(item.lex_index);
        out.leaf_nodes.push_back(out.nodes.size() - 1);
        return;
    }
    if (item.binary) {
        build_derivation(chart, item.op1, out);
        std::size_t left = out.nodes.size() - 1;
        build_derivation(chart, item.op2, out);
        std::size_t right = out.nodes.size() - 1;
        out.nodes.push_back(item.expr);
        out.steps.push_back({item.rule, {left, right}, out.nodes.size() - 1});
        return;
    }
    build_derivation(chart, item.op1, out);
    std::size_t operand = out.nodes.size() - 1;
    out.nodes.push_back(item.expr);
    out.steps.push_back({item.rule, {operand}, out.nodes.size() - 1});
}

}  // namespace

std::vector<Derivation> enumerate_derivations(const Lexicon& lex, const Feature& start,
                                              const TransducerOptions& options) {
    if (options.max_leaves < 1) return {};
    Chart chart(options);
    // level -> chart ids with that leaf count
    std::vector<std::vector<std::size_t>> levels(
        static_cast<std::size_t>(options.max_leaves) + 1);
    std::vector<std::size_t> complete;

    for (std::size_t i = 0; i < lex.entries().size(); ++i) {
        ChartItem item;
        item.expr = Expression{{lex.entries()[i]}};
        item.leaf_count = 1;
        item.lex_index = i;
        std::string key = expression_key(item.expr);
        if (auto id = chart.insert(std::move(item), std::move(key)))
            levels[1].push_back(*id);
    }
    close_under_move(chart, levels[1], 1, options, levels[1]);

    for (int n = 2; n <= options.max_leaves; ++n) {
        std::vector<std::pair<std::size_t, std::size_t>> pairs;
        for (int li = 1; li < n; ++li) {
            int lj = n - li;
            for (std::size_t a : levels[static_cast<std::size_t>(li)])
                for (std::size_t b : levels[static_cast<std::size_t>(lj)])
                    pairs.emplace_back(a, b);
        }
        auto wave = map_wave(pairs.size(), options.parallel,
                             [&](std::size_t i) -> std::optional<Candidate> {
                                 auto [a, b] = pairs[i];
                                 auto res = merge(chart[a].expr, chart[b].expr);
                                 if (!res.applied()) return std::nullopt;
                                 std::string key = expression_key(*res.result);
                                 return Candidate{std::move(*res.result), std::move(key),
                                                  res.rule, a, b, true};
                             });
        std::vector<std::size_t> fresh;
        for (auto& cand : wave) {
            if (!cand) continue;
            ChartItem item;
            item.expr = std::move(cand->expr);
            item.leaf_count = n;
            item.rule = cand->rule;
            item.op1 = cand->op1;
            item.op2 = cand->op2;
            item.binary = true;
            if (auto id = chart.insert(std::move(item), std::move(cand->key))) {
                fresh.push_back(*id);
                levels[static_cast<std::size_t>(n)].push_back(*id);
            }
        }
        close_under_move(chart, fresh, n, options, levels[static_cast<std::size_t>(n)]);
    }

    for (int n = 1; n <= options.max_leaves; ++n)
        for (std::size_t id : levels[static_cast<std::size_t>(n)])
            if (is_complete(chart[id].expr, start)) complete.push_back(id);

    std::vector<Derivation> out;
    out.reserve(complete.size());
    for (std::size_t id : complete) {
        Derivation d;
        build_derivation(chart, id, d);
        d.leaf_count = d.leaves.size();
        out.push_back(std::move(d));
    }
    std::stable_sort(out.begin(), out.end(), [](const Derivation& x, const Derivation& y) {
        if (x.leaf_count != y.leaf_count) return x.leaf_count < y.leaf_count;
        if (x.result().head().exponent != y.result().head().exponent)
            return x.result().head().exponent < y.result().head().exponent;
        return expression_key(x.result()) < expression_key(y.result());
    });
    return out;
}

std::vector<std::string> generate(const Lexicon& lex, const Term& meaning,
                                  const TransducerOptions& options, const Feature& start) {
    Term normal = beta_reduce(meaning);
    std::vector<std::string> out;
    for (const auto& d : enumerate_derivations(lex, start, options)) {
        if (alpha_equal(d.result().head().semantics, normal))
            out.push_back(d.result().head().exponent);
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

std::vector<Term> parse_utterance(const Lexicon& lex, std::string_view exponent,
                                  const TransducerOptions& options, const Feature& start) {
    std::map<std::string, Term> by_alpha;  // dedupe up to renaming
    for (const auto& d : enumerate_derivations(lex, start, options)) {
        if (d.result().head().exponent == exponent) {
            Term sem = d.result().head().semantics;
            by_alpha.emplace(alpha_key(sem), std::move(sem));
        }
    }
    std::vector<Term> out;
    for (auto& [key, term] : by_alpha) out.push_back(term);
    std::sort(out.begin(), out.end(), [](const Term& a, const Term& b) {
        return format_term(a) < format_term(b);
    });
    return out;
}

}  // namespace numgram
