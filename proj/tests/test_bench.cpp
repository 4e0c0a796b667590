#include <doctest.h>

#include <echelon/bench.hpp>

#include "helpers.hpp"

using namespace echelon;

namespace
{

MultiplyOptions with(Strategy s)
{
    MultiplyOptions o;
    o.strategy = s;
    return o;
}

// Terms of s(s+1) with s = (1+t+x+y+z)^n: every monomial of degree <= 2n.
std::size_t fateman_count(unsigned n)
{
    return oracle::binomial(2 * n + 4, 4).get_ui();
}

} // namespace

TEST_CASE("Fateman term counts")
{
    for (unsigned n = 1; n <= 12; ++n) {
        const auto r = bench::fateman<double>(n, MultiplyOptions{});
        REQUIRE(r.n1 == oracle::binomial(n + 4, 4).get_ui());
        REQUIRE(r.n2 == r.n1);
        REQUIRE(r.out_terms == fateman_count(n));
    }
    for (auto s : {Strategy::plain, Strategy::perfect, Strategy::sparse}) {
        CHECK(bench::fateman<Integer>(6, with(s)).out_terms == fateman_count(6));
    }
}

TEST_CASE("Fateman coefficients match the multinomial theorem")
{
    for (unsigned n = 1; n <= 6; ++n) {
        const auto s = bench::fateman_input<Rational>(n);
        const auto p = s * (s + Rational(1));
        REQUIRE(p.size() == fateman_count(n));
        for (const auto &[k, c] : p) {
            std::vector<unsigned> e(4);
            unsigned deg = 0;
            for (std::size_t i = 0; i < 4; ++i) {
                e[i] = static_cast<unsigned>(k[i]);
                deg += e[i];
            }
            // (1+t+x+y+z)^(2n) + (1+t+x+y+z)^n.
            auto ks = e;
            ks.push_back(2 * n - deg);
            mpz_class expect = oracle::multinomial(2 * n, ks);
            if (deg <= n) {
                ks.back() = n - deg;
                expect += oracle::multinomial(n, ks);
            }
            REQUIRE(c == Rational(expect));
        }
    }
}

TEST_CASE("sparse benchmark at small power")
{
    const auto [a, b] = bench::sparse_inputs<Integer>(3);
    CHECK(a.size() == oracle::binomial(3 + 5, 5).get_ui());
    const auto r = bench::sparse<Integer>(3, MultiplyOptions{});
    CHECK(bench::sparse<Integer>(3, with(Strategy::sparse)).stats.used == Strategy::sparse);
    const auto plain = multiply(a, b, with(Strategy::plain));
    CHECK(r.out_terms == plain.size());
    CHECK(multiply(a, b, with(Strategy::sparse)) == plain);
}

TEST_CASE("synthetic Fourier series")
{
    const auto s = bench::synthetic_fourier(200, 7);
    CHECK(s.size() == 200);
    CHECK(s == bench::synthetic_fourier(200, 7));
    CHECK_FALSE(s == bench::synthetic_fourier(200, 8));
    for (const auto &[k, c] : s) {
        // negated sine keys flip the sign
        REQUIRE(std::abs(c) >= 1e-6);
        REQUIRE(std::abs(c) <= 1.0);
        for (std::size_t i = 0; i < 4; ++i) {
            REQUIRE(std::abs(k[i]) <= 15);
        }
    }
    const auto r = bench::fourier(150, 3, 2, MultiplyOptions{}, 50);
    CHECK(r.input_terms == 150);
    CHECK(r.repeat == 2);
    CHECK(r.check_points == 50);
    CHECK(r.max_error <= 1e-9);
    CHECK(r.out_terms > 150);
}
