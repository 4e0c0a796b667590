// Builders shared by the tests: series from literal term lists, random
// series generators, and conversion to the oracle map representation.
#ifndef ECHELON_TESTS_HELPERS_HPP
#define ECHELON_TESTS_HELPERS_HPP

#include <initializer_list>
#include <string>
#include <utility>
#include <vector>

#include <echelon/series.hpp>

#include "oracles.hpp"

namespace th
{

using namespace echelon;

inline SymbolSet names(std::initializer_list<const char *> ns)
{
    SymbolSet out;
    for (const char *n : ns) {
        out.push_back({n, std::nullopt});
    }
    return out;
}

inline SymbolSet numbered(const char *prefix, std::size_t n)
{
    SymbolSet out;
    for (std::size_t i = 0; i < n; ++i) {
        out.push_back({prefix + std::to_string(i), std::nullopt});
    }
    return out;
}

template <typename Cf, int B = 16>
Polynomial<Cf, B> poly(const SymbolSet &args, const std::vector<std::pair<std::vector<int>, Cf>> &terms)
{
    Polynomial<Cf, B> p(typename Polynomial<Cf, B>::args_type{args});
    for (const auto &[e, c] : terms) {
        p.insert(Monomial<B>(PackedIntArray<B>(std::span<const int>(e))), c);
    }
    return p;
}

template <typename Cf, int B = 16>
FourierSeries<Cf, B> fourier(const SymbolSet &args, const std::vector<std::tuple<std::vector<int>, bool, Cf>> &terms)
{
    FourierSeries<Cf, B> p(typename FourierSeries<Cf, B>::args_type{args});
    for (const auto &[m, cosine, c] : terms) {
        p.insert(TrigKey<B>(PackedIntArray<B>(std::span<const int>(m)), cosine), c);
    }
    return p;
}

template <typename Cf, typename Key>
oracle::PolyMap<Cf> to_poly_map(const Series<Cf, Key> &s)
{
    oracle::PolyMap<Cf> out;
    for (const auto &[k, c] : s) {
        out[k.array().unpack()] = c;
    }
    return out;
}

template <typename Cf, typename Key>
oracle::TrigMap<Cf> to_trig_map(const Series<Cf, Key> &s)
{
    oracle::TrigMap<Cf> out;
    for (const auto &[k, c] : s) {
        out[{k.array().unpack(), k.is_cosine()}] = c;
    }
    return out;
}

// Random coefficient of the requested type. Doubles are dyadic with small
// numerators so every product and sum in the tests is exact.
template <typename Cf>
Cf random_cf(oracle::Rng &rng)
{
    int v = 0;
    while (v == 0) {
        v = rng.integer(-40, 40);
    }
    if constexpr (std::is_same_v<Cf, double>) {
        return std::ldexp(static_cast<double>(v), -rng.integer(0, 4));
    } else if constexpr (std::is_same_v<Cf, Integer>) {
        // Even values keep trigonometric products integral.
        return Integer(2 * v);
    } else if constexpr (std::is_same_v<Cf, Rational>) {
        Rational q(v, rng.integer(1, 12));
        q.canonicalize();
        return q;
    } else {
        using R = decltype(Cf{}.re);
        return Cf(random_cf<R>(rng), random_cf<R>(rng));
    }
}

struct Shape {
    std::size_t dims = 1;
    std::size_t terms = 1;
    int lo = 0;
    int hi = 1;
};

template <typename Cf, int B = 16>
Polynomial<Cf, B> random_poly(oracle::Rng &rng, const Shape &sh)
{
    Polynomial<Cf, B> p(typename Polynomial<Cf, B>::args_type{numbered("x", sh.dims)});
    for (std::size_t t = 0; t < sh.terms; ++t) {
        PackedIntArray<B> e(sh.dims);
        for (std::size_t i = 0; i < sh.dims; ++i) {
            e.set(i, rng.integer(sh.lo, sh.hi));
        }
        p.insert(Monomial<B>(e), random_cf<Cf>(rng));
    }
    return p;
}

template <typename Cf, int B = 16>
FourierSeries<Cf, B> random_fourier(oracle::Rng &rng, const Shape &sh)
{
    FourierSeries<Cf, B> p(typename FourierSeries<Cf, B>::args_type{numbered("t", sh.dims)});
    for (std::size_t t = 0; t < sh.terms; ++t) {
        PackedIntArray<B> m(sh.dims);
        for (std::size_t i = 0; i < sh.dims; ++i) {
            m.set(i, rng.integer(sh.lo, sh.hi));
        }
        p.insert(TrigKey<B>(m, rng.coin()), random_cf<Cf>(rng));
    }
    return p;
}

template <typename S>
std::map<std::string, double> random_point(oracle::Rng &rng, const S &s, double lo, double hi)
{
    std::map<std::string, double> at;
    for (const auto &level : s.args()) {
        for (const auto &a : level) {
            at[a.name] = rng.real(lo, hi);
        }
    }
    return at;
}

} // namespace th

#endif
