#include "doctest.h"
#include "approx.hpp"

#include "ebsg/expression.hpp"

#include <cmath>
#include <numbers>

using namespace ebsg;
using ebsg::test::rel;

TEST_CASE("arithmetic, precedence and associativity")
{
    CHECK(Expression::parse("1 + 2 * 3")(0.0) == 7.0);
    CHECK(Expression::parse("(1 + 2) * 3")(0.0) == 9.0);
    CHECK(Expression::parse("2 ^ 3 ^ 2")(0.0) == 512.0);
    CHECK(Expression::parse("-2 ^ 2")(0.0) == -4.0);
    CHECK(Expression::parse("8 / 4 / 2")(0.0) == 1.0);
    CHECK(Expression::parse("10 - 4 - 3")(0.0) == 3.0);
    CHECK(Expression::parse("1.5e2 + .5")(0.0) == 150.5);
}

TEST_CASE("variables, constants and functions")
{
    const Expression e = Expression::parse("exp(-(x - 1 - 0.8*t)^2 / (0.005*(4*t + 1))) / sqrt(4*t + 1)");
    CHECK(e(1.0, 0.0) == 1.0);
    CHECK(e(5.0, 5.0) == rel(1.0 / std::sqrt(21.0), 1e-15));
    CHECK(Expression::parse("pi")(0.0) == std::numbers::pi);
    CHECK(Expression::parse("e")(0.0) == std::numbers::e);
    CHECK(Expression::parse("sin(x) + cos(x)")(0.3) == rel(std::sin(0.3) + std::cos(0.3)));
    CHECK(Expression::parse("max(x, t) - min(x, t)")(2.0, 5.0) == 3.0);
    CHECK(Expression::parse("pow(x, 3)")(2.0) == 8.0);
    CHECK(Expression::parse("abs(x) + tanh(0) + log(1) + sinh(0) + cosh(0) + tan(0)")(-2.0) == 3.0);
    CHECK(Expression::parse("  x*t ").source() == "  x*t ");
}

TEST_CASE("malformed expressions are rejected")
{
    for (const char* bad : {"", "1 +", "(x", "x)", "foo(x)", "y", "sin()", "pow(1)", "1 2", "max(1,2,3)", "3 $ 4"}) {
        CAPTURE(bad);
        CHECK_THROWS_AS(Expression::parse(bad), ExpressionError);
    }
}

TEST_CASE("copies share the parsed tree")
{
    const Expression a = Expression::parse("x + 1");
    const Expression b = a;
    CHECK(b(2.0) == 3.0);
    CHECK(Expression().empty());
    CHECK_FALSE(a.empty());
}
