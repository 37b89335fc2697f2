#include <doctest.h>

#include <random>

#include "numgram/grammar.hpp"

using namespace numgram;

namespace {

SynType type_of(Category cat, std::initializer_list<const char*> tokens) {
    SynType t;
    t.category = cat;
    for (const char* tok : tokens) t.features.push_back(parse_feature(tok));
    return t;
}

Sign sign(const std::string& exp, Category cat, std::initializer_list<const char*> tokens,
          Term sem) {
    return Sign{exp, type_of(cat, tokens), std::move(sem)};
}

Expression unit(Sign s) { return Expression{{std::move(s)}}; }

Term teen_context() {
    return Term::lambda("x", Term::add(Term::mul(Term::base_power(1), Term::number(1)),
                                       Term::variable("x")));
}

Term void_add_op() {
    return Term::lambda(
        "y", Term::lambda("x", Term::add(Term::variable("y"), Term::variable("x"))));
}

const Feature kNum{FeatureKind::Base, "num"};

}  // namespace

TEST_CASE("feature tokens render and parse") {
    CHECK(to_string(Feature{FeatureKind::Base, "num"}) == "num");
    CHECK(to_string(Feature{FeatureKind::Selector, "num"}) == "=num");
    CHECK(to_string(Feature{FeatureKind::Licensor, "k"}) == "+k");
    CHECK(to_string(Feature{FeatureKind::Licensee, "k"}) == "-k");
    CHECK(parse_feature("=num") == Feature{FeatureKind::Selector, "num"});
    CHECK(parse_feature("-k2") == Feature{FeatureKind::Licensee, "k2"});
    CHECK_THROWS_AS(parse_feature("="), GrammarError);
    CHECK_THROWS_AS(parse_feature("Num"), GrammarError);
}

TEST_CASE("type well-formedness follows the selector/licensor-base-licensee shape") {
    CHECK(validate_syntype(type_of(Category::Lexical, {"=num", "=num", "+k", "num"})));
    CHECK(validate_syntype(type_of(Category::Lexical, {"num", "-k"})));
    CHECK_FALSE(validate_syntype(type_of(Category::Lexical, {"-k", "num"})));
    CHECK_FALSE(validate_syntype(type_of(Category::Lexical, {"=num", "+k"})));
    CHECK_FALSE(validate_syntype(type_of(Category::Derived, {"num", "num"})));
    CHECK_FALSE(validate_syntype(SynType{Category::Lexical, {}}));
    CHECK(validate_chain_tail({Feature{FeatureKind::Licensee, "k"}}));
    CHECK_FALSE(validate_chain_tail({kNum}));
}

TEST_CASE("merge-2 derives thirteen from the derived teen entry") {
    Expression teen = unit(sign("teen", Category::Derived, {"=num", "num"}, teen_context()));
    Expression thir = unit(sign("thir", Category::Lexical, {"num"}, Term::number(3)));
    auto res = merge(teen, thir);
    REQUIRE(res.applied());
    CHECK(res.rule == "merge-2");
    CHECK(res.result->signs.size() == 1);
    CHECK(res.result->head().exponent == "thirteen");
    CHECK(res.result->head().type == type_of(Category::Derived, {"num"}));
    CHECK(res.result->head().semantics ==
          Term::add(Term::mul(Term::base_power(1), Term::number(1)), Term::number(3)));
    CHECK(is_complete(*res.result, kNum));
}

TEST_CASE("merge-1 lets the void operator select its complement to the right") {
    Expression op = unit(
        sign("", Category::Lexical, {"=num", "=num", "+k", "num"}, void_add_op()));
    Expression teen = unit(sign("teen", Category::Lexical, {"num"},
                                Term::mul(Term::base_power(1), Term::number(1))));
    auto res = merge(op, teen);
    REQUIRE(res.applied());
    CHECK(res.rule == "merge-1");
    CHECK(res.result->head().exponent == "teen");
    CHECK(res.result->head().type == type_of(Category::Derived, {"=num", "+k", "num"}));
    CHECK(alpha_equal(res.result->head().semantics, teen_context()));
}

TEST_CASE("merge-3 parks the selected sign as a moving chain") {
    Expression teen =
        unit(sign("teen", Category::Derived, {"=num", "+k", "num"}, teen_context()));
    Expression thir = unit(sign("thir", Category::Lexical, {"num", "-k"}, Term::number(3)));
    auto res = merge(teen, thir);
    REQUIRE(res.applied());
    CHECK(res.rule == "merge-3");
    REQUIRE(res.result->signs.size() == 2);
    CHECK(res.result->head().exponent == "teen");
    CHECK(res.result->head().type == type_of(Category::Derived, {"+k", "num"}));
    CHECK(alpha_equal(res.result->head().semantics, teen_context()));
    CHECK(res.result->signs[1].exponent == "thir");
    CHECK(res.result->signs[1].type == type_of(Category::Derived, {"-k"}));
    CHECK(res.result->signs[1].semantics == Term::number(3));

    SUBCASE("move-1 completes the derivation") {
        auto moved = move(*res.result);
        REQUIRE(moved.applied());
        CHECK(moved.rule == "move-1");
        CHECK(moved.result->head().exponent == "thirteen");
        CHECK(moved.result->head().semantics ==
              Term::add(Term::mul(Term::base_power(1), Term::number(1)), Term::number(3)));
        CHECK(is_complete(*moved.result, kNum));
    }
}

TEST_CASE("merge preconditions") {
    Expression one = unit(sign("one", Category::Lexical, {"num"}, Term::number(1)));
    Expression two = unit(sign("two", Category::Lexical, {"num"}, Term::number(2)));
    CHECK(merge(one, two).outcome == RuleOutcome::NotApplicable);
    Expression wrong_base =
        unit(sign("h", Category::Lexical, {"=num", "num"}, void_add_op()));
    Expression other = unit(sign("w", Category::Lexical, {"foo"}, Term::number(1)));
    CHECK(merge(wrong_base, other).outcome == RuleOutcome::NotApplicable);
}

TEST_CASE("merge prunes results that would stack two equal licensees") {
    // The head selects twice; both arguments still carry -k.
    Expression op = unit(
        sign("", Category::Lexical, {"=num", "=num", "+k", "num"}, void_add_op()));
    Expression a = unit(sign("a", Category::Lexical, {"num", "-k"}, Term::number(1)));
    Expression b = unit(sign("b", Category::Lexical, {"num", "-k"}, Term::number(2)));
    auto first = merge(op, a);
    REQUIRE(first.applied());
    auto second = merge(*first.result, b);
    CHECK(second.outcome == RuleOutcome::SmcViolation);
}

TEST_CASE("move handles the SMC and the two-chain cases") {
    Sign head = sign("h", Category::Derived, {"+k", "num"}, void_add_op());
    Sign chain_a = sign("a", Category::Derived, {"-k"}, Term::number(1));
    Sign chain_b = sign("b", Category::Derived, {"-k"}, Term::number(2));

    Expression two_chains{{head, chain_a, chain_b}};
    CHECK(move(two_chains).outcome == RuleOutcome::SmcViolation);

    Expression no_chain{{head}};
    CHECK(move(no_chain).outcome == RuleOutcome::NotApplicable);
}

TEST_CASE("move-2 spends the licensing pair but keeps the chain") {
    Sign head = sign("h", Category::Derived, {"+w", "num"}, Term::number(0));
    Sign mover = sign("m", Category::Derived, {"-w", "-k"}, Term::number(5));
    Expression e{{head, mover}};
    auto res = move(e);
    REQUIRE(res.applied());
    CHECK(res.rule == "move-2");
    CHECK(res.result->head().exponent == "h");
    CHECK(res.result->head().type == type_of(Category::Derived, {"num"}));
    CHECK(res.result->head().semantics == Term::number(0));  // unchanged
    REQUIRE(res.result->signs.size() == 2);
    CHECK(res.result->signs[1].exponent == "m");
    CHECK(res.result->signs[1].type == type_of(Category::Derived, {"-k"}));
}

TEST_CASE("completeness requires a lone sign with the bare start feature") {
    CHECK(is_complete(unit(sign("thirteen", Category::Derived, {"num"}, Term::number(13))),
                      kNum));
    CHECK(is_complete(unit(sign("one", Category::Lexical, {"num"}, Term::number(1))), kNum));
    Sign pending = sign("teen", Category::Derived, {"+k", "num"}, Term::number(0));
    Sign chain = sign("thir", Category::Derived, {"-k"}, Term::number(3));
    CHECK_FALSE(is_complete(Expression{{pending, chain}}, kNum));
    CHECK_FALSE(is_complete(unit(pending), kNum));
}

TEST_CASE("exactly one merge case applies and features shrink by two") {
    std::mt19937 rng(11);
    std::uniform_int_distribution<int> coin(0, 1);
    std::uniform_int_distribution<int> sels(0, 2);
    for (int i = 0; i < 500; ++i) {
        SynType t1;
        t1.category = coin(rng) ? Category::Lexical : Category::Derived;
        t1.features.push_back(Feature{FeatureKind::Selector, "num"});
        int extra = sels(rng);
        for (int s = 0; s < extra; ++s)
            t1.features.push_back(Feature{FeatureKind::Selector, "num"});
        if (coin(rng)) t1.features.push_back(Feature{FeatureKind::Licensor, "k"});
        t1.features.push_back(kNum);

        SynType t2;
        t2.category = coin(rng) ? Category::Lexical : Category::Derived;
        t2.features.push_back(kNum);
        if (coin(rng)) t2.features.push_back(Feature{FeatureKind::Licensee, "k"});

        Expression a{{Sign{"a", t1, Term::number(1)}}};
        Expression b{{Sign{"b", t2, Term::number(2)}}};
        auto res = merge(a, b);
        REQUIRE(res.applied());
        int before = static_cast<int>(t1.features.size() + t2.features.size());
        int after = 0;
        for (const auto& s : res.result->signs)
            after += static_cast<int>(s.type.features.size());
        CHECK(before - after == 2);
        // dispatch is a partition: merge-3 iff the selected sign keeps
        // features, otherwise merge-1/2 split on the selector's category
        bool rest2 = t2.features.size() > 1;
        if (rest2)
            CHECK(res.rule == "merge-3");
        else if (t1.category == Category::Lexical)
            CHECK(res.rule == "merge-1");
        else
            CHECK(res.rule == "merge-2");
        CHECK(satisfies_smc(*res.result));
    }
}
