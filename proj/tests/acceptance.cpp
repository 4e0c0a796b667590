// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit status
// if any criterion fails. Tolerances are fixed below.
#include <chrono>
#include <cmath>
#include <cstdio>
#include <exception>
#include <functional>
#include <numbers>
#include <string>

#include <echelon/bench.hpp>
#include <echelon/expansions.hpp>
#include <echelon/multiply.hpp>

#include "helpers.hpp"

using namespace echelon;
using th::names;

namespace
{

constexpr std::size_t fateman_full_in = 46376;
constexpr std::size_t fateman_full_out = 635376;
constexpr std::size_t sparse_in = 6188;
constexpr std::size_t sparse_out = 5821335;
constexpr double fateman_small_max_seconds = 1.0;
constexpr double sparse_max_seconds = 120.0;
constexpr double double_rel_tol = 1e-12;
constexpr double fourier_eval_tol = 1e-9;
constexpr double jacobi_anger_tol = 1e-8;
constexpr double pythagoras_tol = 1e-7;
constexpr double perfect_plain_max_ratio = 1.0 / 3.0;

struct Outcome {
    bool pass = false;
    std::string detail;
};

using clock_type = std::chrono::steady_clock;

double since(clock_type::time_point t0)
{
    return std::chrono::duration<double>(clock_type::now() - t0).count();
}

std::string fmt(const char *f, auto... args)
{
    char buf[512];
    std::snprintf(buf, sizeof buf, f, args...);
    return buf;
}

MultiplyOptions with(Strategy s)
{
    MultiplyOptions o;
    o.strategy = s;
    return o;
}

Outcome fateman_full()
{
    const auto r = bench::fateman<double>(30, MultiplyOptions{});
    const bool ok = r.n1 == fateman_full_in && r.n2 == fateman_full_in && r.out_terms == fateman_full_out;
    return {ok, fmt("inputs %zu/%zu, output %zu terms, %s strategy, %.2f s", r.n1, r.n2, r.out_terms,
                    to_string(r.stats.used), r.seconds)};
}

Outcome fateman_small()
{
    const auto t0 = clock_type::now();
    std::size_t checked = 0, wrong = 0;
    for (unsigned n = 1; n <= 6; ++n) {
        const auto s = bench::fateman_input<Rational>(n);
        const auto p = s * (s + Rational(1));
        if (p.size() != oracle::binomial(2 * n + 4, 4).get_ui()) {
            ++wrong;
        }
        for (const auto &[k, c] : p) {
            std::vector<unsigned> e;
            unsigned deg = 0;
            for (std::size_t i = 0; i < 4; ++i) {
                e.push_back(static_cast<unsigned>(k[i]));
                deg += e.back();
            }
            e.push_back(2 * n - deg);
            mpz_class expect = oracle::multinomial(2 * n, e);
            if (deg <= n) {
                e.back() = n - deg;
                expect += oracle::multinomial(n, e);
            }
            ++checked;
            if (c != Rational(expect)) {
                ++wrong;
            }
        }
    }
    const double secs = since(t0);
    return {wrong == 0 && secs < fateman_small_max_seconds,
            fmt("%zu coefficients checked for N = 1..6, %zu wrong, %.3f s (limit %.1f s)", checked, wrong, secs,
                fateman_small_max_seconds)};
}

Outcome sparse_full()
{
    const auto r = bench::sparse<double>(12, MultiplyOptions{});
    const bool ok = r.n1 == sparse_in && r.n2 == sparse_in && r.out_terms == sparse_out
                    && r.stats.used == Strategy::sparse && r.seconds <= sparse_max_seconds;
    return {ok, fmt("inputs %zu/%zu, output %zu terms, %s strategy, %.2f s (limit %.0f s)", r.n1, r.n2, r.out_terms,
                    to_string(r.stats.used), r.seconds, sparse_max_seconds)};
}

// Key-matched comparison with a relative tolerance per coefficient.
template <typename Key>
bool close(const Series<double, Key> &a, const Series<double, Key> &b)
{
    if (a.size() != b.size()) {
        return false;
    }
    for (const auto &[k, c] : a) {
        const auto it = b.terms().find(k);
        if (it == b.terms().end()) {
            return false;
        }
        if (std::abs(c - it->second) > double_rel_tol * std::max(std::abs(c), std::abs(it->second))) {
            return false;
        }
    }
    return true;
}

template <typename S>
bool backends_agree(const S &a, const S &b)
{
    const auto plain = multiply(a, b, with(Strategy::plain));
    for (auto s : {Strategy::perfect, Strategy::sparse}) {
        const auto p = multiply(a, b, with(s));
        if constexpr (std::is_same_v<typename S::cf_type, double>) {
            if (!close(p, plain)) {
                return false;
            }
        } else if (!(p == plain)) {
            return false;
        }
    }
    return true;
}

Outcome equivalence()
{
    oracle::Rng rng(2024);
    std::size_t pairs = 0, failed = 0;
    for (int t = 0; t < 1000; ++t) {
        const std::size_t dims = static_cast<std::size_t>(1 + t % 6);
        const bool wide = rng.coin();
        const th::Shape sh{dims, static_cast<std::size_t>(rng.integer(1, 60)), wide ? -10 : 0, wide ? 10 : 20};
        bool ok = true;
        switch (t % 6) {
        case 0:
            ok = backends_agree(th::random_poly<Integer>(rng, sh), th::random_poly<Integer>(rng, sh));
            break;
        case 1:
            ok = backends_agree(th::random_poly<Rational>(rng, sh), th::random_poly<Rational>(rng, sh));
            break;
        case 2:
            ok = backends_agree(th::random_poly<double>(rng, sh), th::random_poly<double>(rng, sh));
            break;
        case 3:
            ok = backends_agree(th::random_fourier<Integer>(rng, sh), th::random_fourier<Integer>(rng, sh));
            break;
        case 4:
            ok = backends_agree(th::random_fourier<Rational>(rng, sh), th::random_fourier<Rational>(rng, sh));
            break;
        default:
            ok = backends_agree(th::random_fourier<double>(rng, sh), th::random_fourier<double>(rng, sh));
            break;
        }
        ++pairs;
        failed += ok ? 0 : 1;
    }
    return {failed == 0, fmt("%zu pairs, %zu mismatches", pairs, failed)};
}

bool box_bijective(const KroneckerCodec &c)
{
    std::vector<char> seen(c.code_bound(), 0);
    std::vector<long long> e = c.e_min();
    std::size_t n = 0;
    while (true) {
        const auto code = c.encode(std::span<const long long>(e));
        if (code >= c.code_bound() || seen[code] || c.decode(code) != e) {
            return false;
        }
        seen[code] = 1;
        ++n;
        std::size_t k = 0;
        while (k < e.size() && e[k] == c.e_max()[k]) {
            e[k] = c.e_min()[k];
            ++k;
        }
        if (k == e.size()) {
            break;
        }
        ++e[k];
    }
    return n == c.code_bound();
}

Outcome codec()
{
    oracle::Rng rng(5);
    std::size_t boxes = 0, bad_boxes = 0;
    const auto check = [&](std::vector<long long> lo, std::vector<long long> hi) {
        const auto c = KroneckerCodec::from_box(std::move(lo), std::move(hi));
        ++boxes;
        if (!c || !box_bijective(*c)) {
            ++bad_boxes;
        }
    };
    // Every shape with up to three variables and sides up to 21 (at most
    // 9261 codes), with random offsets.
    for (int c0 = 1; c0 <= 21; ++c0) {
        check({-c0 / 2}, {c0 - 1 - c0 / 2});
        for (int c1 = 1; c1 <= 21; ++c1) {
            const long long o = rng.integer(-9, 9);
            check({o, 0}, {o + c0 - 1, c1 - 1});
            for (int c2 = 1; c2 <= 21; ++c2) {
                const long long p = rng.integer(-9, 9);
                check({p, -p, 0}, {p + c0 - 1, -p + c1 - 1, c2 - 1});
            }
        }
    }
    // Random shapes in four to six variables within 10^4 codes.
    for (int t = 0; t < 2000; ++t) {
        const std::size_t m = static_cast<std::size_t>(rng.integer(4, 6));
        std::vector<long long> lo(m), hi(m);
        long long prod = 1;
        for (std::size_t k = 0; k < m; ++k) {
            const long long cap = std::max<long long>(1, std::min<long long>(12, 10000 / prod));
            const long long side = rng.integer(1, static_cast<int>(cap));
            prod *= side;
            lo[k] = rng.integer(-6, 6);
            hi[k] = lo[k] + side - 1;
        }
        check(lo, hi);
    }
    for (int side = 1; side <= 10000; side += 37) {
        check({-side / 2}, {side - 1 - side / 2});
    }
    check({0}, {9999});

    std::size_t homo_bad = 0;
    for (int t = 0; t < 100000; ++t) {
        const std::size_t m = static_cast<std::size_t>(rng.integer(1, 6));
        std::vector<long long> lo(m), hi(m), e1(m), e2(m), s(m), d(m);
        for (std::size_t k = 0; k < m; ++k) {
            const int half = rng.integer(0, 40);
            lo[k] = -2 * half - rng.integer(0, 3);
            hi[k] = 2 * half + rng.integer(0, 3);
            e1[k] = rng.integer(-half, half);
            e2[k] = rng.integer(-half, half);
            s[k] = e1[k] + e2[k];
            d[k] = e1[k] - e2[k];
        }
        const auto c = KroneckerCodec::from_box(lo, hi);
        if (!c) {
            ++homo_bad;
            continue;
        }
        const auto c1 = c->encode(std::span<const long long>(e1));
        const auto c2 = c->encode(std::span<const long long>(e2));
        if (c->encode(std::span<const long long>(s)) != c1 + c2 + c->chi()
            || c->encode(std::span<const long long>(d)) != c1 - c2 - c->chi()) {
            ++homo_bad;
        }
    }
    const bool feasible = KroneckerCodec::from_box(std::vector<long long>(6, 0), std::vector<long long>(6, 1624)).has_value();
    const bool infeasible =
        !KroneckerCodec::from_box(std::vector<long long>(6, 0), std::vector<long long>(6, 1625)).has_value();
    return {bad_boxes == 0 && homo_bad == 0 && feasible && infeasible,
            fmt("%zu boxes exhaustively checked (%zu bad), 100000 add/sub pairs (%zu bad), 6 vars at 1624 %s, at 1625 %s",
                boxes, bad_boxes, homo_bad, feasible ? "feasible" : "infeasible",
                infeasible ? "infeasible" : "feasible")};
}

FourierSeries<double> general_fourier(oracle::Rng &rng, std::size_t dims, std::size_t terms)
{
    FourierSeries<double> s(FourierSeries<double>::args_type{th::numbered("t", dims)});
    for (std::size_t t = 0; t < terms; ++t) {
        PackedIntArray<16> m(dims);
        for (std::size_t i = 0; i < dims; ++i) {
            m.set(i, rng.integer(-10, 10));
        }
        s.insert(TrigKey<16>(m, rng.coin()), rng.real(-1, 1));
    }
    return s;
}

Outcome fourier_eval()
{
    oracle::Rng rng(6);
    double worst = 0;
    std::size_t bad = 0;
    for (int t = 0; t < 100; ++t) {
        const std::size_t dims = static_cast<std::size_t>(rng.integer(1, 6));
        const auto s = general_fourier(rng, dims, static_cast<std::size_t>(rng.integer(1, 200)));
        const auto u = general_fourier(rng, dims, static_cast<std::size_t>(rng.integer(1, 200)));
        const auto p = s * u;
        for (int i = 0; i < 100; ++i) {
            const auto at = th::random_point(rng, s, -std::numbers::pi, std::numbers::pi);
            const double v = s.evaluate(at) * u.evaluate(at);
            const double err = std::abs(p.evaluate(at) - v) / (1 + std::abs(v));
            worst = std::max(worst, err);
            bad += err > fourier_eval_tol ? 1 : 0;
        }
    }
    return {bad == 0, fmt("100 pairs x 100 points, worst scaled error %.2e (limit %.0e)", worst, fourier_eval_tol)};
}

Outcome elliptic_golden()
{
    PoissonSeries<Rational> expect({names({"M"}), names({"e"})});
    const std::vector<std::pair<int, std::vector<std::pair<int, Rational>>>> terms = {
        {0, {{1, Rational(-1)}}},
        {1, {{0, Rational(1)}, {2, Rational(-9, 8)}, {4, Rational(25, 192)}}},
        {2, {{1, Rational(1)}, {3, Rational(-4, 3)}}},
        {3, {{2, Rational(9, 8)}, {4, Rational(-225, 128)}}},
        {4, {{3, Rational(4, 3)}}},
        {5, {{4, Rational(625, 384)}}}};
    for (const auto &[k, cs] : terms) {
        TermSet<Rational, Monomial<16>> c;
        for (const auto &[p, q] : cs) {
            c.insert(Monomial<16>({p}), q);
        }
        expect.insert(TrigKey<16>({k}, true), c);
    }
    const auto s = elliptic_cos_f(4);
    return {s == expect, fmt("%zu harmonics, exact comparison with the order-4 expansion", s.size())};
}

Outcome sqrt_golden()
{
    const auto s = th::poly<Rational>(names({"e"}), {{{0}, Rational(1)}, {{2}, Rational(-1)}});
    const auto r = pow_real(s, Rational(1, 2), TruncationPolicy{8});
    std::size_t bad = r.size() == 9 ? 0 : 1;
    for (unsigned n = 0; n <= 8; ++n) {
        const auto it = r.terms().find(Monomial<16>({2 * static_cast<long long>(n)}));
        if (it == r.terms().end() || it->second != oracle::sqrt_one_minus_x2_coefficient(n)) {
            ++bad;
        }
    }
    return {bad == 0, fmt("coefficients of e^0..e^16, %zu mismatches", bad)};
}

Outcome jacobi_anger()
{
    const auto arg = th::fourier<double>(names({"theta"}), {{{1}, true, 0.3}});
    const auto [c, s] = cos_sin_of_series(arg, TruncationPolicy{8});
    double worst_cos = 0, worst_pyth = 0;
    for (int i = 0; i < 50; ++i) {
        const double th = -std::numbers::pi + 2 * std::numbers::pi * i / 49;
        const double cv = c.evaluate({{"theta", th}}), sv = s.evaluate({{"theta", th}});
        worst_cos = std::max(worst_cos, std::abs(cv - std::cos(0.3 * std::cos(th))));
        worst_pyth = std::max(worst_pyth, std::abs(cv * cv + sv * sv - 1));
    }
    return {worst_cos <= jacobi_anger_tol && worst_pyth <= pythagoras_tol,
            fmt("50 points, worst |cos error| %.2e (limit %.0e), worst |cos^2+sin^2-1| %.2e (limit %.0e)", worst_cos,
                jacobi_anger_tol, worst_pyth, pythagoras_tol)};
}

Outcome sparse_stress()
{
    // With x^0, product codes are multiples of 1024 and all share one home
    // bucket until the table has more than 1024 buckets.
    const auto args = names({"x", "y"});
    Polynomial<Integer> a(Polynomial<Integer>::args_type{args}), b(Polynomial<Integer>::args_type{args});
    oracle::Rng rng(10);
    a.insert(Monomial<16>({511, 0}), Integer(1));
    b.insert(Monomial<16>({512, 0}), Integer(1));
    for (int i = 0; i <= 400; ++i) {
        a.insert(Monomial<16>({0, i}), Integer(rng.integer(-9, 9)));
        b.insert(Monomial<16>({0, i}), Integer(rng.integer(-9, 9)));
    }
    MultiplyStats st;
    MultiplyOptions o = with(Strategy::sparse);
    o.sparse_buckets = 16;
    o.stats = &st;
    const auto p = multiply(a, b, o);
    const auto plain = multiply(a, b, with(Strategy::plain));

    // Direct table check: distinct codes in equals codes out, sums kept.
    SparseCodedTable<Integer> t(16);
    std::map<std::uint64_t, Integer> ref;
    for (int i = 0; i < 20000; ++i) {
        const std::uint64_t code = static_cast<std::uint64_t>(rng.integer(0, 4999)) << 32;
        const Integer v = rng.integer(1, 1000);
        t[code] += v;
        ref[code] += v;
    }
    std::size_t lost = 0, seen = 0;
    t.for_each([&](std::uint64_t code, const Integer &c) {
        ++seen;
        const auto it = ref.find(code);
        lost += (it == ref.end() || it->second != c) ? 1 : 0;
    });
    lost += ref.size() - std::min(ref.size(), seen);
    const bool ok = st.rehashes >= 2 && p == plain && t.rehash_count() >= 2 && lost == 0 && seen == ref.size();
    return {ok, fmt("multiply: %zu rehashes, %zu terms, %s plain; table: %zu rehashes, %zu codes, %zu lost",
                    st.rehashes, p.size(), p == plain ? "matches" : "differs from", t.rehash_count(), seen, lost)};
}

Outcome perf_ratio()
{
    const auto s = bench::fateman_input<double>(20);
    const auto s1 = s + 1.0;
    double perfect = 1e300;
    MultiplyStats st;
    for (int i = 0; i < 3; ++i) {
        MultiplyOptions o = with(Strategy::perfect);
        o.stats = &st;
        const auto t0 = clock_type::now();
        const auto p = multiply(s, s1, o);
        perfect = std::min(perfect, since(t0));
    }
    const auto t0 = clock_type::now();
    const auto q = multiply(s, s1, with(Strategy::plain));
    const double plain = since(t0);
    const double ratio = perfect / plain;
    return {st.used == Strategy::perfect && ratio <= perfect_plain_max_ratio,
            fmt("power 20: perfect %.3f s, plain %.3f s, ratio %.4f (limit %.4f)", perfect, plain, ratio,
                perfect_plain_max_ratio)};
}

Outcome fourier_bench()
{
    const auto r = bench::fourier(702, 1, 1, MultiplyOptions{}, 100);
    return {r.max_error <= fourier_eval_tol && r.check_points == 100,
            fmt("702 terms, seed 1: %zu output terms, %.2f s, %s strategy, worst scaled error %.2e at %zu points",
                r.out_terms, r.seconds, to_string(r.last.used), r.max_error, r.check_points)};
}

} // namespace

int main()
{
    const std::vector<std::pair<const char *, std::function<Outcome()>>> criteria = {
        {"Fateman benchmark, power 30", fateman_full},
        {"Fateman coefficients, power <= 6", fateman_small},
        {"sparse benchmark, power 12", sparse_full},
        {"strategy equivalence", equivalence},
        {"Kronecker codec properties", codec},
        {"Fourier products by evaluation", fourier_eval},
        {"elliptic cos f, order 4", elliptic_golden},
        {"square root of 1 - e^2", sqrt_golden},
        {"Jacobi-Anger", jacobi_anger},
        {"sparse table stress", sparse_stress},
        {"perfect vs plain time", perf_ratio},
        {"synthetic Fourier benchmark", fourier_bench},
    };
    int failed = 0;
    int n = 0;
    for (const auto &[name, run] : criteria) {
        ++n;
        Outcome o;
        try {
            o = run();
        } catch (const std::exception &e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        failed += o.pass ? 0 : 1;
        std::printf("%s %2d %s: %s\n", o.pass ? "PASS" : "FAIL", n, name, o.detail.c_str());
        std::fflush(stdout);
    }
    std::printf("%d of %d criteria passed\n", n - failed, n);
    return failed == 0 ? 0 : 1;
}
