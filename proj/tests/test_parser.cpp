#include <catch2/catch_amalgamated.hpp>

#include "helpers.hpp"

using namespace aspc;

TEST_CASE("facts, rules, and comments parse") {
    const Program p = parse_program(
        "% a comment\n"
        "num(3). num(7).\n"
        "smaller(X) :- num(X), num(Y), X < Y. % trailing comment\n");
    REQUIRE(p.rules.size() == 3);
    REQUIRE(p.rules[0].is_fact());
    REQUIRE(p.rules[0].head->pred == "num");
    REQUIRE(p.rules[2].head->pred == "smaller");
    REQUIRE(p.rules[2].body.size() == 3);
    REQUIRE(p.rules[2].body[2].is_cmp());
    REQUIRE(p.rules[2].body[2].op == CmpOp::Lt);
}

TEST_CASE("propositional atoms parse without parentheses") {
    const Program p = parse_program("p :- not q.\nq :- not p.\n");
    REQUIRE(p.rules.size() == 2);
    REQUIRE(p.rules[0].head->args.empty());
    REQUIRE(p.rules[0].body[0].negated());
    REQUIRE(p.rules[0].body[0].atom.pred == "q");
}

TEST_CASE("all comparison operators parse") {
    const Program p = parse_program(
        "d(1). d(2).\n"
        "a(X) :- d(X), d(Y), X < Y.\n"
        "b(X) :- d(X), d(Y), X > Y.\n"
        "c(X) :- d(X), d(Y), X =< Y.\n"
        "e(X) :- d(X), d(Y), X >= Y.\n"
        "f(X) :- d(X), d(Y), X = Y.\n"
        "g(X) :- d(X), d(Y), X != Y.\n");
    const CmpOp expected[] = {CmpOp::Lt, CmpOp::Gt, CmpOp::Le,
                              CmpOp::Ge, CmpOp::Eq, CmpOp::Ne};
    for (std::size_t i = 0; i < 6; ++i)
        REQUIRE(p.rules[2 + i].body[2].op == expected[i]);
}

TEST_CASE("negative integers and symbolic constants parse") {
    const Program p = parse_program("d(-3). d(0). d(abc).\n");
    REQUIRE(p.rules[0].head->args[0].name == "-3");
    REQUIRE(p.rules[2].head->args[0].name == "abc");
}

TEST_CASE("constraints parse as head-less rules") {
    const Program p = parse_program("d(1).\n:- d(X).\n");
    REQUIRE(p.rules[1].is_constraint());
    REQUIRE(p.rules[1].body.size() == 1);
}

TEST_CASE("render then reparse is a fixpoint") {
    for (const auto& name : th::corpus_names()) {
        const Program p = parse_program(th::corpus_text(name));
        const std::string once = render(p);
        const std::string twice = render(parse_program(once));
        REQUIRE(once == twice);
    }
}

TEST_CASE("parse errors carry position information") {
    using Catch::Matchers::ContainsSubstring;
    REQUIRE_THROWS_AS(parse_program("p(X) :- q(X)"), ParseError);
    REQUIRE_THROWS_WITH(parse_program("p(X)\nq(Y)."),
                        ContainsSubstring("line 2"));
    REQUIRE_THROWS_AS(parse_program("p(f(X)) :- q(X)."), ParseError);
}

TEST_CASE("the reserved prefix is refused") {
    REQUIRE_THROWS_AS(parse_program("__p(1)."), ParseError);
    REQUIRE_THROWS_AS(parse_program("p(1). q :- __p(1)."), ParseError);
}

TEST_CASE("queries parse as single literals") {
    const Literal q = parse_query("max(X)");
    REQUIRE(q.atom.pred == "max");
    REQUIRE(q.atom.args[0].is_var());
    const Literal n = parse_query("not smaller(7)");
    REQUIRE(n.negated());
    REQUIRE_THROWS_AS(parse_query("p(X), q(X)"), ParseError);
}
