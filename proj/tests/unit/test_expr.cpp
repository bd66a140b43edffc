#include <doctest.h>

#include <cmath>

#include "spps/expr.hpp"

using spps::cplx;
using spps::Expression;

TEST_CASE("precedence and associativity") {
    CHECK(Expression::parse("1+2*3").eval(0).real() == doctest::Approx(7));
    CHECK(Expression::parse("-x^2").eval(3).real() == doctest::Approx(-9));
    CHECK(Expression::parse("2^3^2").eval(0).real() == doctest::Approx(512));
    CHECK(Expression::parse("(1+2)*3").eval(0).real() == doctest::Approx(9));
    CHECK(Expression::parse("8/4/2").eval(0).real() == doctest::Approx(1));
}

TEST_CASE("complex literals and constants") {
    const cplx z = Expression::parse("3+2i").eval(0);
    CHECK(z.real() == 3.0);
    CHECK(z.imag() == 2.0);
    CHECK(Expression::parse("i*i").eval(0).real() == doctest::Approx(-1));
    CHECK(spps::parse_constant("-(11+1i)") == cplx(-11, -1));
    CHECK(spps::parse_constant("2*pi").real() == doctest::Approx(2 * M_PI));
    CHECK_THROWS_AS(spps::parse_constant("x"), spps::InputError);
}

TEST_CASE("functions") {
    CHECK(Expression::parse("cos(sqrt(2)*x)").eval(0.5).real() == doctest::Approx(std::cos(std::sqrt(2.0) * 0.5)));
    CHECK(Expression::parse("exp(x)").eval(1).real() == doctest::Approx(M_E));
    CHECK(Expression::parse("sqrt(-1)").eval(0).imag() == doctest::Approx(1));
    CHECK(Expression::parse("airy_ai(0)").eval(0).real() == doctest::Approx(0.3550280538878172));
    CHECK(Expression::parse("airy_bip(0)").eval(0).real() == doctest::Approx(0.4482883573538264));
}

TEST_CASE("wronskian of the airy pair") {
    // Ai Bi' - Ai' Bi = 1/pi
    const auto w = Expression::parse("airy_ai(x)*airy_bip(x) - airy_aip(x)*airy_bi(x)");
    for (double x : {-2.0, 0.0, 0.7}) CHECK(w.eval(x).real() == doctest::Approx(1 / M_PI).epsilon(1e-12));
}

TEST_CASE("parse errors carry offsets") {
    try {
        Expression::parse("1 + * 2");
        FAIL("expected a parse error");
    } catch (const spps::ParseError& e) {
        CHECK(e.offset() == 4);
    }
    CHECK_THROWS_AS(Expression::parse("sin(x"), spps::ParseError);
    CHECK_THROWS_AS(Expression::parse("foo(x)"), spps::ParseError);
    CHECK_THROWS_AS(Expression::parse("x^x"), spps::ParseError);
    CHECK_THROWS_AS(Expression::parse(""), spps::ParseError);
}

TEST_CASE("evaluation errors") {
    CHECK_THROWS_AS(Expression::parse("1/x").eval(0), spps::EvalError);
    CHECK_THROWS_AS(Expression::parse("log(x)").eval(0), spps::EvalError);
    CHECK_THROWS_AS(Expression::parse("airy_ai(i)").eval(0), spps::EvalError);
}

TEST_CASE("to_string round trip") {
    for (const char* s : {"-x^2+3*cos(x)/(1+2i)", "pi*(airy_bip(0)*airy_ai(x))", "2^-1", "--x"}) {
        const auto e = Expression::parse(s);
        const auto back = Expression::parse(e.to_string());
        CHECK(e.structurally_equal(back));
        CHECK(back.eval(0.3) == e.eval(0.3));
    }
    CHECK(Expression::parse("1+x").is_constant() == false);
    CHECK(Expression::parse("sin(2)").is_constant());
}
