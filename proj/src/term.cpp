#include "numgram/term.hpp"

#include <cctype>
#include <map>
#include <set>
#include <sstream>
#include <vector>

namespace numgram {

struct Term::Node {
    Kind kind;
    long long number = 0;       // Number value or BasePower exponent
    std::string name;           // Variable name / Lambda binder
    std::shared_ptr<const Node> a;  // Lambda body / Apply fn
    std::shared_ptr<const Node> b;  // Apply arg
};

Term Term::number(long long value) {
    auto n = std::make_shared<Node>();
    n->kind = Kind::Number;
    n->number = value;
    return Term(std::move(n));
}

Term Term::base_power(int exponent) {
    auto n = std::make_shared<Node>();
    n->kind = Kind::BasePower;
    n->number = exponent;
    return Term(std::move(n));
}

Term Term::add_op() {
    auto n = std::make_shared<Node>();
    n->kind = Kind::AddOp;
    return Term(std::move(n));
}

Term Term::mul_op() {
    auto n = std::make_shared<Node>();
    n->kind = Kind::MulOp;
    return Term(std::move(n));
}

Term Term::variable(std::string name) {
    auto n = std::make_shared<Node>();
    n->kind = Kind::Variable;
    n->name = std::move(name);
    return Term(std::move(n));
}

Term Term::lambda(std::string var, Term body) {
    auto n = std::make_shared<Node>();
    n->kind = Kind::Lambda;
    n->name = std::move(var);
    n->a = body.node_;
    return Term(std::move(n));
}

Term Term::apply(Term fn, Term arg) {
    auto n = std::make_shared<Node>();
    n->kind = Kind::Apply;
    n->a = fn.node_;
    n->b = arg.node_;
    return Term(std::move(n));
}

Term Term::add(Term a, Term b) { return apply(apply(add_op(), std::move(a)), std::move(b)); }
Term Term::mul(Term a, Term b) { return apply(apply(mul_op(), std::move(a)), std::move(b)); }

Term::Kind Term::kind() const { return node_->kind; }
long long Term::value() const { return node_->number; }
int Term::exponent() const { return static_cast<int>(node_->number); }
const std::string& Term::name() const { return node_->name; }

Term Term::body() const { return Term(node_->a); }
Term Term::fn() const { return Term(node_->a); }
Term Term::arg() const { return Term(node_->b); }

bool Term::operator==(const Term& other) const {
    const Node* x = node_.get();
    const Node* y = other.node_.get();
    if (x == y) return true;
    if (x->kind != y->kind) return false;
    switch (x->kind) {
        case Kind::Number:
        case Kind::BasePower:
            return x->number == y->number;
        case Kind::AddOp:
        case Kind::MulOp:
            return true;
        case Kind::Variable:
            return x->name == y->name;
        case Kind::Lambda:
            return x->name == y->name && Term(x->a) == Term(y->a);
        case Kind::Apply:
            return Term(x->a) == Term(y->a) && Term(x->b) == Term(y->b);
    }
    return false;
}

namespace {

void free_vars(const Term& t, std::set<std::string>& bound, std::set<std::string>& out) {
    switch (t.kind()) {
        case Term::Kind::Variable:
            if (!bound.count(t.name())) out.insert(t.name());
            return;
        case Term::Kind::Lambda: {
            bool fresh = bound.insert(t.name()).second;
            Term body = t.body();
            free_vars(body, bound, out);
            if (fresh) bound.erase(t.name());
            return;
        }
        case Term::Kind::Apply: {
            Term f = t.fn(), a = t.arg();
            free_vars(f, bound, out);
            free_vars(a, bound, out);
            return;
        }
        default:
            return;
    }
}

std::set<std::string> free_vars(const Term& t) {
    std::set<std::string> bound, out;
    free_vars(t, bound, out);
    return out;
}

void collect_names(const Term& t, std::set<std::string>& out) {
    switch (t.kind()) {
        case Term::Kind::Variable:
            out.insert(t.name());
            return;
        case Term::Kind::Lambda: {
            out.insert(t.name());
            Term body = t.body();
            collect_names(body, out);
            return;
        }
        case Term::Kind::Apply: {
            Term f = t.fn(), a = t.arg();
            collect_names(f, out);
            collect_names(a, out);
            return;
        }
        default:
            return;
    }
}

std::string fresh_name(const std::string& base, const std::set<std::string>& taken) {
    for (int i = 1;; ++i) {
        std::string candidate = base + std::to_string(i);
        if (!taken.count(candidate)) return candidate;
    }
}

// Capture-avoiding substitution t[var := repl].
Term substitute(const Term& t, const std::string& var, const Term& repl) {
    switch (t.kind()) {
        case Term::Kind::Variable:
            return t.name() == var ? repl : t;
        case Term::Kind::Lambda: {
            if (t.name() == var) return t;  // shadowed
            Term body = t.body();
            std::set<std::string> fv = free_vars(repl);
            if (fv.count(t.name())) {
                std::set<std::string> taken = fv;
                collect_names(body, taken);
                taken.insert(var);
                std::string nn = fresh_name(t.name(), taken);
                Term renamed = substitute(body, t.name(), Term::variable(nn));
                return Term::lambda(nn, substitute(renamed, var, repl));
            }
            return Term::lambda(t.name(), substitute(body, var, repl));
        }
        case Term::Kind::Apply:
            return Term::apply(substitute(t.fn(), var, repl), substitute(t.arg(), var, repl));
        default:
            return t;
    }
}

// One reduction step; nullopt when t is normal.
std::optional<Term> step(const Term& t, ReductionOrder order) {
    switch (t.kind()) {
        case Term::Kind::Apply: {
            Term f = t.fn(), a = t.arg();
            if (order == ReductionOrder::Applicative) {
                if (auto fa = step(f, order)) return Term::apply(*fa, a);
                if (auto aa = step(a, order)) return Term::apply(f, *aa);
                if (f.kind() == Term::Kind::Lambda) return substitute(f.body(), f.name(), a);
                return std::nullopt;
            }
            if (f.kind() == Term::Kind::Lambda) return substitute(f.body(), f.name(), a);
            if (auto fa = step(f, order)) return Term::apply(*fa, a);
            if (auto aa = step(a, order)) return Term::apply(f, *aa);
            return std::nullopt;
        }
        case Term::Kind::Lambda: {
            Term body = t.body();
            if (auto ba = step(body, order)) return Term::lambda(t.name(), *ba);
            return std::nullopt;
        }
        default:
            return std::nullopt;
    }
}

void alpha_key_rec(const Term& t, std::vector<std::string>& binders, std::ostringstream& out) {
    switch (t.kind()) {
        case Term::Kind::Number:
            out << 'n' << t.value() << ';';
            return;
        case Term::Kind::BasePower:
            out << 'p' << t.exponent() << ';';
            return;
        case Term::Kind::AddOp:
            out << "+;";
            return;
        case Term::Kind::MulOp:
            out << "*;";
            return;
        case Term::Kind::Variable: {
            for (std::size_t i = binders.size(); i-- > 0;) {
                if (binders[i] == t.name()) {
                    out << 'v' << (binders.size() - 1 - i) << ';';
                    return;
                }
            }
            out << 'f' << t.name() << ';';
            return;
        }
        case Term::Kind::Lambda: {
            out << "L(";
            binders.push_back(t.name());
            alpha_key_rec(t.body(), binders, out);
            binders.pop_back();
            out << ')';
            return;
        }
        case Term::Kind::Apply:
            out << "A(";
            alpha_key_rec(t.fn(), binders, out);
            alpha_key_rec(t.arg(), binders, out);
            out << ')';
            return;
    }
}

}  // namespace

bool is_closed(const Term& t) { return free_vars(t).empty(); }

std::string alpha_key(const Term& t) {
    std::ostringstream out;
    std::vector<std::string> binders;
    alpha_key_rec(t, binders, out);
    return out.str();
}

bool alpha_equal(const Term& a, const Term& b) { return alpha_key(a) == alpha_key(b); }

Term beta_reduce(const Term& t, ReductionOrder order, int max_steps) {
    if (!is_closed(t))
        throw TermError(TermError::Code::UnboundVariable,
                        "beta_reduce: term has unbound variables");
    Term current = t;
    for (int i = 0; i < max_steps; ++i) {
        auto next = step(current, order);
        if (!next) return current;
        current = *next;
    }
    throw TermError(TermError::Code::NonTermination, "beta_reduce: step budget exceeded");
}

namespace {

long long checked_pow10(int k) {
    if (k < 0 || k > 18)
        throw TermError(TermError::Code::Overflow, "evaluate: power of ten out of range");
    long long v = 1;
    for (int i = 0; i < k; ++i) v *= 10;
    return v;
}

long long eval_normal(const Term& t) {
    switch (t.kind()) {
        case Term::Kind::Number:
            return t.value();
        case Term::Kind::BasePower:
            return checked_pow10(t.exponent());
        case Term::Kind::Apply: {
            // Curried binary use: apply(apply(op, a), b).
            Term inner = t.fn();
            if (inner.kind() == Term::Kind::Apply) {
                Term op = inner.fn();
                if (op.kind() == Term::Kind::AddOp)
                    return eval_normal(t.arg()) + eval_normal(inner.arg());
                if (op.kind() == Term::Kind::MulOp)
                    return eval_normal(t.arg()) * eval_normal(inner.arg());
            }
            throw TermError(TermError::Code::NotANumber, "evaluate: stuck application");
        }
        default:
            throw TermError(TermError::Code::NotANumber,
                            "evaluate: residual lambda, variable or bare operator");
    }
}

}  // namespace

long long evaluate(const Term& t) { return eval_normal(beta_reduce(t)); }

namespace {

struct DiffCollector {
    std::vector<std::pair<Term, Term>> diffs;
    std::string hole;

    Term walk(const Term& a, const Term& b) {
        if (a == b) return a;
        if (a.kind() == b.kind()) {
            switch (a.kind()) {
                case Term::Kind::Lambda:
                    if (a.name() == b.name())
                        return Term::lambda(a.name(), walk(a.body(), b.body()));
                    break;
                case Term::Kind::Apply:
                    return Term::apply(walk(a.fn(), b.fn()), walk(a.arg(), b.arg()));
                default:
                    break;
            }
        }
        diffs.emplace_back(a, b);
        return Term::variable(hole);
    }
};

}  // namespace

std::optional<Generalization> anti_unify(const Term& a, const Term& b) {
    if (a == b)
        throw TermError(TermError::Code::NoAbstraction, "anti_unify: terms are identical");
    std::set<std::string> taken;
    collect_names(a, taken);
    collect_names(b, taken);
    DiffCollector dc;
    dc.hole = taken.count("x") ? fresh_name("x", taken) : "x";
    Term ctx = dc.walk(a, b);
    if (ctx.kind() == Term::Kind::Variable && ctx.name() == dc.hole)
        return std::nullopt;  // no shared head structure at all
    const auto& first = dc.diffs.front();
    for (const auto& d : dc.diffs) {
        if (d.first != first.first || d.second != first.second) return std::nullopt;
    }
    if (!is_closed(first.first) || !is_closed(first.second)) return std::nullopt;
    return Generalization{Term::lambda(dc.hole, ctx), first.first, first.second};
}

std::optional<OperatorSplit> factor_operator(const Term& t) {
    if (t.kind() != Term::Kind::Lambda) return std::nullopt;
    Term body = t.body();
    if (body.kind() != Term::Kind::Apply) return std::nullopt;
    Term outer_arg = body.arg();
    if (outer_arg.kind() != Term::Kind::Variable || outer_arg.name() != t.name())
        return std::nullopt;
    Term inner = body.fn();
    if (inner.kind() != Term::Kind::Apply) return std::nullopt;
    Term op = inner.fn();
    if (op.kind() != Term::Kind::AddOp && op.kind() != Term::Kind::MulOp) return std::nullopt;
    Term residual = inner.arg();
    if (!is_closed(residual)) return std::nullopt;
    Term bare = Term::lambda(
        "y", Term::lambda("x", Term::apply(Term::apply(op, Term::variable("y")),
                                           Term::variable("x"))));
    return OperatorSplit{std::move(bare), std::move(residual)};
}

namespace {

// body has holes named `hole`; bind them against target.
bool match_rec(const Term& body, const Term& target, const std::string& hole,
               std::optional<Term>& binding) {
    if (body.kind() == Term::Kind::Variable && body.name() == hole) {
        if (binding) return *binding == target;
        binding = target;
        return true;
    }
    if (body.kind() != target.kind()) return false;
    switch (body.kind()) {
        case Term::Kind::Number:
        case Term::Kind::BasePower:
            return body.value() == target.value();
        case Term::Kind::AddOp:
        case Term::Kind::MulOp:
            return true;
        case Term::Kind::Variable:
            return body.name() == target.name();
        case Term::Kind::Lambda:
            if (body.name() != target.name()) return false;
            if (body.name() == hole) return body == target;  // hole shadowed inside
            return match_rec(body.body(), target.body(), hole, binding);
        case Term::Kind::Apply:
            return match_rec(body.fn(), target.fn(), hole, binding) &&
                   match_rec(body.arg(), target.arg(), hole, binding);
    }
    return false;
}

}  // namespace

std::optional<Term> match_context(const Term& context, const Term& target) {
    if (context.kind() != Term::Kind::Lambda) return std::nullopt;
    std::optional<Term> binding;
    if (!match_rec(context.body(), target, context.name(), binding)) return std::nullopt;
    if (!binding) return std::nullopt;  // context ignores its argument
    if (!is_closed(*binding)) return std::nullopt;
    return binding;
}

// ---------------------------------------------------------------------------
// Text form. Grammar (whitespace separated):
//   term := INT | "10^" INT | VAR | "(" "lam" VAR term ")"
//         | "(" "add" term term ")" | "(" "mul" term term ")"
//         | "(" "app" term term ")"
// Bare "add"/"mul" atoms are additionally accepted inside "(app ...)" so that
// every constructible term round-trips.
// ---------------------------------------------------------------------------

namespace {

struct Tokenizer {
    std::string_view text;
    std::size_t pos = 0;

    void skip_ws() {
        while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
    }

    std::optional<std::string_view> next() {
        skip_ws();
        if (pos >= text.size()) return std::nullopt;
        std::size_t start = pos;
        if (text[pos] == '(' || text[pos] == ')') {
            ++pos;
            return text.substr(start, 1);
        }
        while (pos < text.size() && !std::isspace(static_cast<unsigned char>(text[pos])) &&
               text[pos] != '(' && text[pos] != ')')
            ++pos;
        return text.substr(start, pos - start);
    }
};

[[noreturn]] void syntax_error(const std::string& msg, std::size_t pos) {
    throw TermError(TermError::Code::Syntax, msg + " at position " + std::to_string(pos), pos);
}

bool is_integer(std::string_view s) {
    if (s.empty()) return false;
    for (char c : s)
        if (!std::isdigit(static_cast<unsigned char>(c))) return false;
    return true;
}

bool is_identifier(std::string_view s) {
    if (s.empty() || !std::islower(static_cast<unsigned char>(s[0]))) return false;
    for (char c : s)
        if (!std::islower(static_cast<unsigned char>(c)) &&
            !std::isdigit(static_cast<unsigned char>(c)))
            return false;
    return true;
}

Term parse_one(Tokenizer& tz);

Term parse_atom(std::string_view tok, std::size_t pos) {
    if (is_integer(tok)) return Term::number(std::stoll(std::string(tok)));
    if (tok.size() > 3 && tok.substr(0, 3) == "10^" && is_integer(tok.substr(3)))
        return Term::base_power(std::stoi(std::string(tok.substr(3))));
    if (tok == "add") return Term::add_op();
    if (tok == "mul") return Term::mul_op();
    if (tok == "lam" || tok == "app")
        syntax_error("reserved word '" + std::string(tok) + "'", pos);
    if (is_identifier(tok)) return Term::variable(std::string(tok));
    syntax_error("unknown token '" + std::string(tok) + "'", pos);
}

Term parse_one(Tokenizer& tz) {
    std::size_t at = tz.pos;
    auto tok = tz.next();
    if (!tok) syntax_error("unexpected end of input", tz.pos);
    if (*tok == ")") syntax_error("unexpected ')'", at);
    if (*tok != "(") return parse_atom(*tok, at);

    std::size_t head_at = tz.pos;
    auto head = tz.next();
    if (!head) syntax_error("unexpected end of input", tz.pos);
    Term result = Term::number(0);
    if (*head == "lam") {
        std::size_t var_at = tz.pos;
        auto var = tz.next();
        if (!var || !is_identifier(*var)) syntax_error("expected variable after 'lam'", var_at);
        Term body = parse_one(tz);
        result = Term::lambda(std::string(*var), std::move(body));
    } else if (*head == "add" || *head == "mul") {
        Term a = parse_one(tz);
        Term b = parse_one(tz);
        result = (*head == "add") ? Term::add(std::move(a), std::move(b))
                                  : Term::mul(std::move(a), std::move(b));
    } else if (*head == "app") {
        Term f = parse_one(tz);
        Term a = parse_one(tz);
        result = Term::apply(std::move(f), std::move(a));
    } else {
        syntax_error("expected 'lam', 'add', 'mul' or 'app'", head_at);
    }
    std::size_t close_at = tz.pos;
    auto close = tz.next();
    if (!close || *close != ")") syntax_error("expected ')'", close_at);
    return result;
}

void format_rec(const Term& t, std::ostringstream& out) {
    switch (t.kind()) {
        case Term::Kind::Number:
            out << t.value();
            return;
        case Term::Kind::BasePower:
            out << "10^" << t.exponent();
            return;
        case Term::Kind::AddOp:
            out << "add";
            return;
        case Term::Kind::MulOp:
            out << "mul";
            return;
        case Term::Kind::Variable:
            out << t.name();
            return;
        case Term::Kind::Lambda:
            out << "(lam " << t.name() << ' ';
            format_rec(t.body(), out);
            out << ')';
            return;
        case Term::Kind::Apply: {
            Term inner = t.fn();
            if (inner.kind() == Term::Kind::Apply) {
                Term op = inner.fn();
                if (op.kind() == Term::Kind::AddOp || op.kind() == Term::Kind::MulOp) {
                    out << (op.kind() == Term::Kind::AddOp ? "(add " : "(mul ");
                    format_rec(inner.arg(), out);
                    out << ' ';
                    format_rec(t.arg(), out);
                    out << ')';
                    return;
                }
            }
            out << "(app ";
            format_rec(t.fn(), out);
            out << ' ';
            format_rec(t.arg(), out);
            out << ')';
            return;
        }
    }
}

}  // namespace

Term parse_term(std::string_view text) {
    Tokenizer tz{text};
    Term t = parse_one(tz);
    std::size_t at = tz.pos;
    if (tz.next()) syntax_error("trailing input", at);
    return t;
}

std::string format_term(const Term& t) {
    std::ostringstream out;
    format_rec(t, out);
    return out.str();
}

}  // namespace numgram
