#include <doctest.h>

#include <kklab/errors.hpp>
#include <kklab/numeric.hpp>

#include <cmath>

using namespace kklab;

TEST_CASE("rational literals parse exactly")
{
    CHECK(parse_rational("3/4") == Rational(3, 4));
    CHECK(parse_rational("0.25") == Rational(1, 4));
    CHECK(parse_rational("1e-3") == Rational(1, 1000));
    CHECK(parse_rational("-2/6") == Rational(-1, 3));
    CHECK(parse_rational("1.5E2") == Rational(150));
    CHECK_THROWS_AS(parse_rational("1/0"), ParseError);
    CHECK_THROWS_AS(parse_rational("abc"), ParseError);
    CHECK_THROWS_AS(parse_rational(""), ParseError);
    CHECK(to_string(Rational(6, 4)) == "3/2");
    CHECK(to_string(Rational(5)) == "5");
}

TEST_CASE("decimal rounding is directed")
{
    CHECK(decimal_floor(Rational(1, 3), 4) == "0.3333");
    CHECK(decimal_ceil(Rational(1, 3), 4) == "0.3334");
    CHECK(decimal_floor(Rational(-1, 3), 2) == "-0.34");
    CHECK(decimal_ceil(Rational(2), 3) == "2.000");
}

TEST_CASE("combinatorial helpers")
{
    CHECK(factorial(10) == 3628800);
    CHECK(falling_factorial(10, 3) == 720);
    CHECK(falling_factorial(3, 5) == 0);
    CHECK(binomial(10, 3) == 120);
    CHECK(binomial(3, 10) == 0);
    CHECK(power(Rational(1, 2), 3) == Rational(1, 8));
}

TEST_CASE("roots compare and enclose exactly")
{
    Root q = Root::reciprocal(120, 3);
    auto enc = enclose(q, 12);
    // 120^(-1/3) = 0.2027400...; check by cubing the bounds.
    CHECK(power(enc.lower, 3) * 120 <= 1);
    CHECK(power(enc.upper, 3) * 120 >= 1);
    CHECK(enc.upper - enc.lower <= Rational(BigInt(1), BigInt("1000000000000")));
    CHECK(enc.lower_string().rfind("0.202740", 0) == 0);
    CHECK(std::abs(q.approx() - std::pow(120.0, -1.0 / 3)) < 1e-12);

    CHECK(compare(Root::reciprocal(8, 3), Rational(1, 2)) == 0);
    CHECK(Root::reciprocal(8, 3).simplified().as_rational() == Rational(1, 2));
    CHECK(compare(Root::reciprocal(120, 3), Root::reciprocal(240, 3)) > 0);
    CHECK(compare(Root(Rational(2), 2), Root(Rational(3), 3)) < 0); // 1.4142 < 1.4422
}

TEST_CASE("root arithmetic")
{
    Root a(Rational(2), 2), b(Rational(2), 3);
    Root ab = multiply(a, b); // 2^(5/6)
    CHECK(compare(power(ab, 6), Rational(32)) == 0);
    CHECK(compare(inverse(Root(Rational(4), 2)), Rational(1, 2)) == 0);
    CHECK(compare(scale(Rational(3), Root(Rational(4), 2)), Rational(6)) == 0);
    CHECK(enclose(Rational(7, 8)).exact());
}

TEST_CASE("euler bounds bracket e tightly")
{
    CHECK(euler_lower() < euler_upper());
    CHECK(euler_upper() - euler_lower() < Rational(1, 1000000000));
    CHECK(std::abs(euler_lower().get_d() - std::exp(1.0)) < 1e-15);
}

TEST_CASE("monomial sign near one is decided exactly")
{
    // 120 * (1/5)^3 = 24/25 < 1 ; 125 * (1/5)^3 = 1
    CHECK(compare_monomial_to_one({{Rational(120), 1}, {Rational(1, 5), 3}}) < 0);
    CHECK(compare_monomial_to_one({{Rational(125), 1}, {Rational(1, 5), 3}}) == 0);
    CHECK(compare_monomial_to_one({{Rational(126), 1}, {Rational(1, 5), 3}}) > 0);
    BigInt huge = 1;
    huge <<= 4000;
    CHECK(compare_monomial_to_one({{Rational(huge + 1), 1}, {Rational(1, 2), 4000}}) > 0);
}

TEST_CASE("real parameters")
{
    CHECK(compare(parse_real("root:120:3"), Root::reciprocal(120, 3)) == 0);
    CHECK(compare(parse_real("1/4"), Rational(1, 4)) == 0);
    CHECK_THROWS(parse_real("root:0:3"));
}
