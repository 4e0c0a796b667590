#include <doctest.h>

#include <cmath>
#include <limits>

#include <echelon/coefficient.hpp>

#include "oracles.hpp"

using namespace echelon;

TEST_CASE("cf_arith examples")
{
    CHECK(std::get<Rational>(cf_arith(Rational(3, 4), Rational(1, 4), ArithOp::add)) == Rational(1));
    CHECK(std::get<Integer>(cf_arith(Integer(2), Integer(3), ArithOp::mul)) == Integer(6));
    const auto i = Complex<Rational>(Rational(0), Rational(1));
    const auto sq = std::get<Complex<Rational>>(cf_arith(i, i, ArithOp::mul));
    CHECK(sq == Complex<Rational>(Rational(-1), Rational(0)));
    CHECK(std::get<double>(cf_arith(0.5, 0.25, ArithOp::sub)) == 0.25);
}

TEST_CASE("cf_arith rejects mixed types")
{
    CHECK_THROWS_AS(cf_arith(Integer(1), Rational(1), ArithOp::add), std::invalid_argument);
    CHECK_THROWS_AS(cf_arith(1.0, Complex<double>(1.0), ArithOp::mul), std::invalid_argument);
}

TEST_CASE("cf_is_ignorable examples")
{
    CHECK(cf_is_ignorable(Rational(0), 0));
    CHECK(cf_is_ignorable(1e-30, 1e-20));
    CHECK_FALSE(cf_is_ignorable(1e-10, 1e-20));
    CHECK_FALSE(cf_is_ignorable(Complex<double>(0.0, 1.0), 1e-20));
    CHECK(cf_is_ignorable(Complex<double>(1e-25, -1e-25), 1e-20));
    // Exact types ignore the threshold.
    CHECK_FALSE(cf_is_ignorable(Rational(1, 1000000000), 1.0));
}

TEST_CASE("ignorable with zero threshold iff additive identity")
{
    CHECK(cf_is_ignorable(0.0, 0));
    CHECK(cf_is_ignorable(-0.0, 0));
    CHECK_FALSE(cf_is_ignorable(std::numeric_limits<double>::denorm_min(), 0));
    CHECK(cf_is_ignorable(Integer(0), 0));
    CHECK_FALSE(cf_is_ignorable(Integer(-1), 0));
    CHECK(cf_is_ignorable(Complex<Integer>(), 0));
    CHECK_FALSE(cf_is_ignorable(Complex<Integer>(Integer(0), Integer(2)), 0));
    CHECK(cf_is_ignorable(Complex<Rational>(), 0));
}

TEST_CASE("cf_norm examples")
{
    CHECK(cf_norm(Rational(-3, 2)) == 1.5);
    CHECK(cf_norm(Complex<double>(3.0, 4.0)) == 5.0);
    CHECK(cf_norm(Complex<Integer>(Integer(3), Integer(-4))) == 5.0);
    CHECK(cf_norm(0.0) == 0.0);
    CHECK(cf_norm(Integer(-7)) == 7.0);
}

TEST_CASE("rationals stay in lowest terms")
{
    const Rational q = std::get<Rational>(cf_arith(Rational(1, 6), Rational(1, 3), ArithOp::add));
    CHECK(q.get_num() == 1);
    CHECK(q.get_den() == 2);
    const Rational p = cf_traits<Rational>::parse("-6/4");
    CHECK(p.get_num() == -3);
    CHECK(p.get_den() == 2);
    CHECK_THROWS(cf_traits<Rational>::parse("6/-4"));
}

TEST_CASE("rational add then subtract round-trips")
{
    oracle::Rng rng(11);
    for (int i = 0; i < 10000; ++i) {
        const Rational a = rng.rational(1000000, 1000000);
        const Rational b = rng.rational(1000000, 1000000);
        const auto s = cf_arith(a, b, ArithOp::add);
        REQUIRE(std::get<Rational>(cf_arith(s, b, ArithOp::sub)) == a);
    }
}

TEST_CASE("complex product matches the component formula")
{
    oracle::Rng rng(12);
    for (int i = 0; i < 10000; ++i) {
        const Rational a = rng.rational(50, 9), b = rng.rational(50, 9);
        const Rational c = rng.rational(50, 9), d = rng.rational(50, 9);
        const auto p = std::get<Complex<Rational>>(
            cf_arith(Complex<Rational>(a, b), Complex<Rational>(c, d), ArithOp::mul));
        REQUIRE(p.re == a * c - b * d);
        REQUIRE(p.im == a * d + b * c);
    }
}

TEST_CASE("real and imaginary parts")
{
    const Coefficient z = Complex<Integer>(Integer(5), Integer(-2));
    CHECK(std::get<Integer>(cf_real(z)) == 5);
    CHECK(std::get<Integer>(cf_imag(z)) == -2);
    CHECK(std::get<double>(cf_imag(Complex<double>(1.5, 2.5))) == 2.5);
}

TEST_CASE("text rendering")
{
    CHECK(cf_to_string(Rational(-3, 4)) == "-3/4");
    CHECK(cf_to_string(Integer(42)) == "42");
    CHECK(cf_to_string(0.1) == "0.1");
    CHECK(cf_to_string(Complex<Integer>(Integer(1), Integer(-2))) == "(1,-2)");
    // Shortest round-trip for doubles.
    oracle::Rng rng(13);
    for (int i = 0; i < 1000; ++i) {
        const double x = rng.real(-1e6, 1e6) * std::pow(10.0, rng.integer(-30, 30));
        REQUIRE(cf_traits<double>::parse(cf_traits<double>::to_string(x)) == x);
    }
    const auto z = cf_traits<Complex<Rational>>::parse("(1/2,-3)");
    CHECK(z.re == Rational(1, 2));
    CHECK(z.im == Rational(-3));
}

TEST_CASE("halving")
{
    Integer a = 6;
    cf_traits<Integer>::halve(a);
    CHECK(a == 3);
    CHECK_THROWS_AS(cf_traits<Integer>::halve(a), std::domain_error);
    Rational q(3);
    cf_traits<Rational>::halve(q);
    CHECK(q == Rational(3, 2));
}

TEST_CASE("eps threshold is process-wide and absolute")
{
    const double old = eps();
    CHECK(old == 1e-20);
    set_eps(1e-3);
    CHECK(is_ignorable(5e-4));
    CHECK_FALSE(is_ignorable(2e-3));
    set_eps(old);
    CHECK_FALSE(is_ignorable(5e-4));
    CHECK_THROWS(set_eps(-1.0));
}
