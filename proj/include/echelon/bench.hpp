#ifndef ECHELON_BENCH_HPP
#define ECHELON_BENCH_HPP

#include <cstddef>
#include <cstdint>
#include <string>
#include <utility>

#include <echelon/expansions.hpp>
#include <echelon/multiply.hpp>
#include <echelon/series.hpp>

namespace echelon
{

struct BenchResult {
    std::size_t n1 = 0;
    std::size_t n2 = 0;
    std::size_t out_terms = 0;
    // Wall time of the timed multiplication, including decode.
    double seconds = 0;
    MultiplyStats stats;
};

namespace bench
{

inline SymbolSet symbols(std::initializer_list<const char *> names)
{
    SymbolSet out;
    for (const char *n : names) {
        out.push_back({n, std::nullopt});
    }
    return out;
}

template <typename Cf>
Polynomial<Cf> linear_form(const SymbolSet &args, std::initializer_list<std::pair<std::vector<long long>, long>> terms)
{
    Polynomial<Cf> p(typename Polynomial<Cf>::args_type{args});
    for (const auto &[e, c] : terms) {
        p.insert(Monomial<16>(PackedIntArray<16>(std::span<const long long>(e))), detail::from_q<Cf>(Rational(c)));
    }
    return p;
}

// (1 + x + y + z + t)^n.
template <typename Cf>
Polynomial<Cf> fateman_input(unsigned n)
{
    const auto args = symbols({"t", "x", "y", "z"});
    const auto s = linear_form<Cf>(
        args, {{{0, 0, 0, 0}, 1}, {{1, 0, 0, 0}, 1}, {{0, 1, 0, 0}, 1}, {{0, 0, 1, 0}, 1}, {{0, 0, 0, 1}, 1}});
    return pow_natural(s, n);
}

// (1 + x + y + 2z^2 + 3t^3 + 5u^5)^n and (1 + u + t + 2z^2 + 3y^3 + 5x^5)^n.
template <typename Cf>
std::pair<Polynomial<Cf>, Polynomial<Cf>> sparse_inputs(unsigned n)
{
    // Layout: t u x y z.
    const auto args = symbols({"t", "u", "x", "y", "z"});
    const auto a = linear_form<Cf>(args, {{{0, 0, 0, 0, 0}, 1},
                                          {{0, 0, 1, 0, 0}, 1},
                                          {{0, 0, 0, 1, 0}, 1},
                                          {{0, 0, 0, 0, 2}, 2},
                                          {{3, 0, 0, 0, 0}, 3},
                                          {{0, 5, 0, 0, 0}, 5}});
    const auto b = linear_form<Cf>(args, {{{0, 0, 0, 0, 0}, 1},
                                          {{0, 1, 0, 0, 0}, 1},
                                          {{1, 0, 0, 0, 0}, 1},
                                          {{0, 0, 0, 0, 2}, 2},
                                          {{0, 0, 0, 3, 0}, 3},
                                          {{0, 0, 5, 0, 0}, 5}});
    return {pow_natural(a, n), pow_natural(b, n)};
}

template <typename S>
BenchResult timed_multiply(const S &a, const S &b, MultiplyOptions opts)
{
    BenchResult r;
    opts.stats = &r.stats;
    r.n1 = a.size();
    r.n2 = b.size();
    const auto t0 = detail::clock::now();
    const auto out = multiply(a, b, opts);
    r.seconds = detail::seconds_since(t0);
    r.out_terms = out.size();
    return r;
}

// s * (s + 1) with s = (1 + x + y + z + t)^n.
template <typename Cf>
BenchResult fateman(unsigned n, const MultiplyOptions &opts)
{
    const auto s = fateman_input<Cf>(n);
    return timed_multiply(s, s + detail::from_q<Cf>(Rational(1)), opts);
}

template <typename Cf>
BenchResult sparse(unsigned n, const MultiplyOptions &opts)
{
    const auto [a, b] = sparse_inputs<Cf>(n);
    return timed_multiply(a, b, opts);
}

// Random Fourier series in four arguments: multipliers uniform in
// [-15, 15], random flavour, coefficients log-uniform in [1e-6, 1].
FourierSeries<double> synthetic_fourier(std::size_t terms, std::uint64_t seed);

struct FourierBenchResult {
    std::size_t input_terms = 0;
    std::size_t out_terms = 0;
    unsigned repeat = 0;
    double seconds = 0;
    MultiplyStats last;
    // Largest |P(t) - S(t)^2| / (1 + |S(t)^2|) over the check points.
    double max_error = 0;
    std::size_t check_points = 0;
};

// Squares the synthetic series `repeat` times and checks the square at
// `check_points` random angle vectors against the squared evaluation.
FourierBenchResult fourier(std::size_t terms, std::uint64_t seed, unsigned repeat, const MultiplyOptions &opts,
                           std::size_t check_points = 100);

} // namespace bench

} // namespace echelon

#endif
