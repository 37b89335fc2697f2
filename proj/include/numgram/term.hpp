#pragma once

#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace numgram {

/// Error raised by term operations (reduction, evaluation, parsing).
class TermError : public std::runtime_error {
public:
    enum class Code {
        NonTermination,   // reduction step budget exhausted
        UnboundVariable,  // free variable where a closed term is required
        NotANumber,       // residual lambda/variable under evaluation
        NoAbstraction,    // anti-unification of identical terms
        Syntax,           // parse error
        Overflow,         // numeric overflow during evaluation
    };

    TermError(Code code, std::string msg, std::size_t position = 0)
        : std::runtime_error(std::move(msg)), code_(code), position_(position) {}

    Code code() const { return code_; }
    std::size_t position() const { return position_; }

private:
    Code code_;
    std::size_t position_;
};

/// Immutable arithmetic/lambda term. Curried binary operators: the sugared
/// add(a, b) stands for apply(apply(add_op(), a), b), likewise mul.
/// Power-of-ten literals are atomic (base_power(k) denotes 10^k), they are
/// not sugar for multiplication chains.
class Term {
public:
    enum class Kind { Number, BasePower, AddOp, MulOp, Variable, Lambda, Apply };

    static Term number(long long value);
    static Term base_power(int exponent);
    static Term add_op();
    static Term mul_op();
    static Term variable(std::string name);
    static Term lambda(std::string var, Term body);
    static Term apply(Term fn, Term arg);
    static Term add(Term a, Term b);
    static Term mul(Term a, Term b);

    Kind kind() const;
    long long value() const;        // Number
    int exponent() const;           // BasePower
    const std::string& name() const;  // Variable / Lambda binder
    Term body() const;              // Lambda
    Term fn() const;                // Apply
    Term arg() const;               // Apply

    /// Structural equality; variable names matter (see alpha_equal).
    bool operator==(const Term& other) const;
    bool operator!=(const Term& other) const { return !(*this == other); }

private:
    struct Node;
    explicit Term(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
    std::shared_ptr<const Node> node_;
};

bool alpha_equal(const Term& a, const Term& b);
bool is_closed(const Term& t);

/// Canonical key: serialization with de Bruijn indices, used wherever terms
/// are deduplicated up to renaming.
std::string alpha_key(const Term& t);

enum class ReductionOrder { Normal, Applicative };

/// Beta-normal form under capture-avoiding substitution. The step budget is
/// a safety net; every term in this domain terminates quickly.
Term beta_reduce(const Term& t, ReductionOrder order = ReductionOrder::Normal,
                 int max_steps = 10000);

/// Integer value of a (reducible-to-)operator/literal term.
long long evaluate(const Term& t);

struct Generalization {
    Term context;  // lambda with a single hole variable
    Term left;
    Term right;
};

/// Least general generalization with one hole. Returns nullopt when the two
/// terms share no head structure or the differences cannot be captured by a
/// single variable. Identical inputs are an error (nothing varies).
std::optional<Generalization> anti_unify(const Term& a, const Term& b);

struct OperatorSplit {
    Term op;        // lam y (lam x (op y x))
    Term residual;  // the closed first operand
};

/// Splits lam x (op G x) into the bare curried operator and G.
std::optional<OperatorSplit> factor_operator(const Term& t);

/// Inverse of single substitution: given context = lam h (body) find the
/// closed term r with body[h := r] structurally equal to target.
std::optional<Term> match_context(const Term& context, const Term& target);

Term parse_term(std::string_view text);
std::string format_term(const Term& t);

}  // namespace numgram
