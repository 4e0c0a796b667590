#ifndef ECHELON_EXPANSIONS_HPP
#define ECHELON_EXPANSIONS_HPP

#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <utility>

#include <gmp.h>

#include <echelon/coefficient.hpp>
#include <echelon/multiply.hpp>
#include <echelon/series.hpp>

namespace echelon
{

struct TruncationPolicy {
    // Binomial expansions keep summands k = 0..order; Bessel series keep
    // l = 0..order; Jacobi-Anger keeps harmonics n = -order..order.
    unsigned order = 0;
};

namespace detail
{

template <typename N>
N from_q(const Rational &q)
{
    return cf_traits<N>::from_rational(q);
}

inline Rational factorial(unsigned long n)
{
    Integer f;
    mpz_fac_ui(f.get_mpz_t(), n);
    return Rational(f);
}

// Generalized binomial coefficient r choose k.
inline Rational binomial(const Rational &r, unsigned long k)
{
    Rational b = 1;
    for (unsigned long i = 0; i < k; ++i) {
        b *= r - Rational(static_cast<long>(i));
        b /= Rational(static_cast<long>(i + 1));
    }
    return b;
}

inline long small_long(const Integer &z, const char *what)
{
    if (!mpz_fits_slong_p(z.get_mpz_t())) {
        throw std::domain_error(std::string(what) + " is too large");
    }
    return z.get_si();
}

// Exact d-th root of a, or throws std::domain_error.
inline Integer exact_root(const Integer &a, unsigned long d)
{
    if (sgn(a) < 0) {
        if (d % 2 == 0) {
            throw std::domain_error("even root of a negative coefficient");
        }
        return -exact_root(Integer(-a), d);
    }
    Integer r;
    if (mpz_root(r.get_mpz_t(), a.get_mpz_t(), d) == 0) {
        throw std::domain_error("coefficient has no exact rational root of degree " + std::to_string(d));
    }
    return r;
}

inline Rational rational_power(const Rational &c, const Rational &q)
{
    const long p = small_long(q.get_num(), "exponent numerator");
    const unsigned long d = static_cast<unsigned long>(small_long(q.get_den(), "exponent denominator"));
    if (sgn(c) == 0) {
        if (p <= 0) {
            throw std::domain_error("zero coefficient raised to a non-positive power");
        }
        return Rational(0);
    }
    Rational root(exact_root(c.get_num(), d), exact_root(c.get_den(), d));
    root.canonicalize();
    Rational out;
    mpz_pow_ui(out.get_num_mpz_t(), root.get_num_mpz_t(), static_cast<unsigned long>(p < 0 ? -p : p));
    mpz_pow_ui(out.get_den_mpz_t(), root.get_den_mpz_t(), static_cast<unsigned long>(p < 0 ? -p : p));
    out.canonicalize();
    if (p < 0) {
        out = 1 / out;
    }
    return out;
}

template <NumericCoefficient N>
N natural_power(N base, unsigned long n)
{
    N acc = from_q<N>(Rational(1));
    while (n != 0) {
        if (n & 1u) {
            acc *= base;
        }
        n >>= 1;
        if (n != 0) {
            base *= base;
        }
    }
    return acc;
}

// c^q for a single numeric coefficient. Throws std::domain_error when the
// power is not representable in N.
template <NumericCoefficient N>
N numeric_power(const N &c, const Rational &q)
{
    using tr = cf_traits<N>;
    if (tr::bit_equal(c, from_q<N>(Rational(1)))) {
        return c;
    }
    const bool integral = q.get_den() == 1;
    if (integral && sgn(q) >= 0) {
        return natural_power(c, static_cast<unsigned long>(small_long(q.get_num(), "exponent")));
    }
    if constexpr (std::is_same_v<N, double>) {
        if (c < 0 && !integral) {
            throw std::domain_error("non-integral power of a negative coefficient");
        }
        return std::pow(c, q.get_d());
    } else if constexpr (std::is_same_v<N, Rational>) {
        return rational_power(c, q);
    } else if constexpr (std::is_same_v<N, Integer>) {
        return tr::from_rational(rational_power(Rational(c), q));
    } else {
        throw std::domain_error("only natural powers of complex coefficients are supported");
    }
}

template <typename S>
S unity(const typename S::args_type &args)
{
    return S::constant(args, from_q<typename S::numeric_type>(Rational(1)));
}

template <typename S>
S single_term(const typename S::args_type &args, const typename S::key_type &k, const typename S::cf_type &c)
{
    S out(args);
    out.insert(k, c);
    return out;
}

// Series over the coefficient-level arguments of a nested series.
template <typename Cf, typename Key>
using inner_series_t = Series<typename Cf::cf_type, typename Cf::key_type>;

template <typename S>
auto inner_args(const typename S::args_type &args)
{
    typename inner_series_t<typename S::cf_type, typename S::key_type>::args_type out;
    for (std::size_t l = 1; l < S::levels; ++l) {
        out[l - 1] = args[l];
    }
    return out;
}

template <typename S>
auto as_inner(const typename S::args_type &args, const typename S::cf_type &c)
{
    inner_series_t<typename S::cf_type, typename S::key_type> out(inner_args<S>(args));
    out.assign_terms(c);
    return out;
}

template <typename TS>
bool key_less(const typename TS::key_type &a, const typename TS::key_type &b)
{
    return key_order(a, b) < 0;
}

// Leading term for the binomial expansion: minimum total degree (ties by
// key order) for polynomials, largest coefficient norm (ties by key order)
// for Fourier series, the constant-argument term for Poisson series.
template <typename Cf, typename Key>
auto leading_term(const Series<Cf, Key> &s)
{
    using TS = typename Series<Cf, Key>::term_set_type;
    auto best = s.begin();
    if constexpr (is_term_set<Cf>::value) {
        for (; best != s.end(); ++best) {
            if (best->first.is_unity()) {
                return best;
            }
        }
        throw std::domain_error("the binomial expansion of a Poisson series needs a term with unit trigonometric part");
    } else if constexpr (Key::is_trig) {
        for (auto it = s.begin(); it != s.end(); ++it) {
            const double n = cf_traits<Cf>::norm(it->second);
            const double nb = cf_traits<Cf>::norm(best->second);
            if (n > nb || (n == nb && key_less<TS>(it->first, best->first))) {
                best = it;
            }
        }
    } else {
        for (auto it = s.begin(); it != s.end(); ++it) {
            const auto d = it->first.degree();
            const auto db = best->first.degree();
            if (d < db || (d == db && key_less<TS>(it->first, best->first))) {
                best = it;
            }
        }
    }
    return best;
}

template <typename S>
S pow_natural_impl(const S &s, unsigned long n);

template <typename Cf, typename Key>
Series<Cf, Key> pow_real_impl(const Series<Cf, Key> &s, const Rational &r, TruncationPolicy trunc);

// (c * key)^q for the leading term.
template <typename S>
S leading_power(const typename S::args_type &args, const typename S::key_type &k, const typename S::cf_type &c,
                const Rational &q, TruncationPolicy trunc)
{
    using Key = typename S::key_type;
    using Cf = typename S::cf_type;
    if constexpr (!Key::is_trig) {
        typename Key::array_type exps(k.size());
        for (std::size_t i = 0; i < k.size(); ++i) {
            const Rational e = q * Rational(k[i]);
            if (e.get_den() != 1) {
                throw std::domain_error("leading monomial raised to " + q.get_str() + " has non-integral exponents");
            }
            exps.set(i, small_long(e.get_num(), "exponent"));
        }
        return single_term<S>(args, Key(std::move(exps)), numeric_power(c, q));
    } else {
        if (k.is_unity()) {
            if constexpr (is_term_set<Cf>::value) {
                const auto p = pow_real_impl(as_inner<S>(args, c), q, trunc);
                return single_term<S>(args, k, p.terms());
            } else {
                return single_term<S>(args, k, numeric_power(c, q));
            }
        }
        if (q.get_den() == 1 && sgn(q) >= 0) {
            return pow_natural_impl(single_term<S>(args, k, c),
                                    static_cast<unsigned long>(small_long(q.get_num(), "exponent")));
        }
        throw std::domain_error("leading trigonometric term can only be raised to natural powers");
    }
}

template <typename S>
S pow_natural_impl(const S &s, unsigned long n)
{
    S acc = unity<S>(s.args());
    S base = s;
    while (n != 0) {
        if (n & 1u) {
            acc = acc * base;
        }
        n >>= 1;
        if (n != 0) {
            base = base * base;
        }
    }
    return acc;
}

template <typename Cf, typename Key>
Series<Cf, Key> pow_real_impl(const Series<Cf, Key> &s, const Rational &r, TruncationPolicy trunc)
{
    using S = Series<Cf, Key>;
    using N = typename S::numeric_type;
    if (s.empty()) {
        throw std::invalid_argument("real power of an empty series");
    }
    const auto lead = leading_term(s);
    const S L = single_term<S>(s.args(), lead->first, lead->second);
    const S T = s - L;
    S out(s.args());
    S Tk = unity<S>(s.args());
    Rational b = 1;
    for (unsigned k = 0; k <= trunc.order; ++k) {
        if (k > 0) {
            b *= r - Rational(static_cast<long>(k - 1));
            b /= Rational(static_cast<long>(k));
            if (sgn(b) == 0) {
                break;
            }
            Tk = Tk * T;
            if (Tk.empty()) {
                break;
            }
        }
        const S Lp = leading_power<S>(s.args(), lead->first, lead->second, r - Rational(static_cast<long>(k)), trunc);
        out = out + (Lp * Tk) * from_q<N>(b);
    }
    return out;
}

template <NumericCoefficient N>
N bessel_numeric(unsigned long m, const N &x, TruncationPolicy trunc)
{
    const N x2 = x * x;
    N xp = natural_power(x, m);
    N acc{};
    for (unsigned long l = 0; l <= trunc.order; ++l) {
        Rational c = 1 / (factorial(l) * factorial(m + l));
        mpq_div_2exp(c.get_mpq_t(), c.get_mpq_t(), 2 * l + m);
        if (l % 2 == 1) {
            c = -c;
        }
        acc += from_q<N>(c) * xp;
        xp *= x2;
    }
    return acc;
}

template <typename S>
S bessel_series(unsigned long m, const S &s, TruncationPolicy trunc)
{
    using N = typename S::numeric_type;
    const S s2 = s * s;
    S xp = pow_natural_impl(s, m);
    S acc(s.args());
    for (unsigned long l = 0; l <= trunc.order; ++l) {
        Rational c = 1 / (factorial(l) * factorial(m + l));
        mpq_div_2exp(c.get_mpq_t(), c.get_mpq_t(), 2 * l + m);
        if (l % 2 == 1) {
            c = -c;
        }
        acc = acc + xp * from_q<N>(c);
        if (l < trunc.order) {
            xp = xp * s2;
        }
    }
    return acc;
}

} // namespace detail

// s^n by binary exponentiation; s^0 is the unit series.
template <typename Cf, typename Key>
Series<Cf, Key> pow_natural(const Series<Cf, Key> &s, unsigned long n)
{
    return detail::pow_natural_impl(s, n);
}

// Truncated binomial expansion sum_{k=0..order} (r choose k) L^(r-k) T^k
// with L the leading term and T = s - L. Throws std::invalid_argument for
// an empty series and std::domain_error when L^(r-k) is not representable.
template <typename Cf, typename Key>
Series<Cf, Key> pow_real(const Series<Cf, Key> &s, const Rational &r, TruncationPolicy trunc)
{
    return detail::pow_real_impl(s, r, trunc);
}

// The exponent is converted exactly to a binary fraction.
template <typename Cf, typename Key>
Series<Cf, Key> pow_real(const Series<Cf, Key> &s, double r, TruncationPolicy trunc)
{
    if (!std::isfinite(r)) {
        throw std::invalid_argument("exponent must be finite");
    }
    return detail::pow_real_impl(s, Rational(r), trunc);
}

template <typename Cf, typename Key>
Series<Cf, Key> inverse(const Series<Cf, Key> &s, TruncationPolicy trunc)
{
    return detail::pow_real_impl(s, Rational(-1), trunc);
}

// MacLaurin series of J_n truncated at l = trunc.order, for a numeric value.
template <NumericCoefficient N>
N besselJ(long n, const N &x, TruncationPolicy trunc)
{
    const unsigned long m = static_cast<unsigned long>(n < 0 ? -n : n);
    N v = detail::bessel_numeric(m, x, trunc);
    if (n < 0 && m % 2 == 1) {
        negate_in_place(v);
    }
    return v;
}

// Same series with a series argument.
template <typename Cf, typename Key>
Series<Cf, Key> besselJ(long n, const Series<Cf, Key> &s, TruncationPolicy trunc)
{
    const unsigned long m = static_cast<unsigned long>(n < 0 ? -n : n);
    auto v = detail::bessel_series(m, s, trunc);
    if (n < 0 && m % 2 == 1) {
        v = -std::move(v);
    }
    return v;
}

namespace detail
{

template <typename S>
typename S::cf_type cf_bessel(long n, const typename S::args_type &args, const typename S::cf_type &x,
                              TruncationPolicy trunc)
{
    if constexpr (is_term_set<typename S::cf_type>::value) {
        return besselJ(n, as_inner<S>(args, x), trunc).terms();
    } else {
        (void)args;
        return besselJ(n, x, trunc);
    }
}

// (cos c, sin c) of a constant-argument coefficient.
template <typename S>
std::pair<typename S::cf_type, typename S::cf_type> cf_cos_sin(const typename S::args_type &args,
                                                               const typename S::cf_type &c, TruncationPolicy trunc)
{
    using Cf = typename S::cf_type;
    using N = typename S::numeric_type;
    if constexpr (is_term_set<Cf>::value) {
        const auto x = as_inner<S>(args, c);
        using I = std::remove_const_t<decltype(x)>;
        I cs(x.args());
        I sn(x.args());
        I xp = unity<I>(x.args());
        for (unsigned j = 0; j <= 2 * trunc.order + 1; ++j) {
            Rational q = 1 / factorial(j);
            if ((j / 2) % 2 == 1) {
                q = -q;
            }
            if (j % 2 == 0) {
                cs = cs + xp * from_q<N>(q);
            } else {
                sn = sn + xp * from_q<N>(q);
            }
            xp = xp * x;
        }
        return {cs.terms(), sn.terms()};
    } else if constexpr (std::is_same_v<N, double>) {
        (void)args;
        (void)trunc;
        return {std::cos(c), std::sin(c)};
    } else {
        (void)args;
        (void)c;
        (void)trunc;
        throw std::domain_error("cos/sin of a nonzero exact constant is not representable");
    }
}

template <typename S>
void add_harmonic(S &out, const typename S::key_type &base, long n, bool cosine, typename S::cf_type c)
{
    out.insert(typename S::key_type(base.scaled(n).array(), cosine), std::move(c));
}

} // namespace detail

// (cos s, sin s) by Jacobi-Anger expansion of every term of s, combined as
// a product of complex exponentials. Harmonics |n| <= trunc.order, Bessel
// series truncated at trunc.order. Throws std::invalid_argument for
// complex or integer coefficients.
template <typename Cf, typename Key>
std::pair<Series<Cf, Key>, Series<Cf, Key>> cos_sin_of_series(const Series<Cf, Key> &s, TruncationPolicy trunc)
{
    static_assert(Key::is_trig, "cos/sin of a series needs trigonometric keys");
    using S = Series<Cf, Key>;
    using N = typename S::numeric_type;
    if constexpr (cf_traits<N>::is_complex || !cf_traits<N>::is_field) {
        (void)s;
        (void)trunc;
        throw std::invalid_argument("cos/sin of a series needs real rational or floating-point coefficients");
    } else {
        const auto &args = s.args();
        S C = detail::unity<S>(args);
        S Sn(args);
        const Rational two(2);
        for (const auto &[k, x] : s) {
            S Cj(args);
            S Sj(args);
            if (k.is_unity()) {
                auto [c, sn] = detail::cf_cos_sin<S>(args, x, trunc);
                Cj.insert(k, std::move(c));
                Sj.insert(k, std::move(sn));
            } else {
                const bool cosine = k.is_cosine();
                Cj.insert(Key(k.size()), detail::cf_bessel<S>(0, args, x, trunc));
                for (long n = 1; n <= static_cast<long>(trunc.order); ++n) {
                    Cf j = detail::cf_bessel<S>(n, args, x, trunc);
                    scale_in_place(j, detail::from_q<N>(two));
                    if (is_ignorable(j)) {
                        continue;
                    }
                    // exp(i x cos t) carries i^n, exp(i x sin t) does not.
                    const bool negative = cosine && ((n % 2 == 0 && (n / 2) % 2 == 1) || (n % 2 == 1 && ((n - 1) / 2) % 2 == 1));
                    if (negative) {
                        negate_in_place(j);
                    }
                    if (n % 2 == 0) {
                        detail::add_harmonic(Cj, k, n, true, std::move(j));
                    } else {
                        detail::add_harmonic(Sj, k, n, cosine, std::move(j));
                    }
                }
            }
            S nc = C * Cj - Sn * Sj;
            S ns = C * Sj + Sn * Cj;
            C = std::move(nc);
            Sn = std::move(ns);
        }
        return {std::move(C), std::move(Sn)};
    }
}

template <typename Cf, typename Key>
Series<Cf, Key> cos_of_series(const Series<Cf, Key> &s, TruncationPolicy trunc)
{
    return cos_sin_of_series(s, trunc).first;
}

template <typename Cf, typename Key>
Series<Cf, Key> sin_of_series(const Series<Cf, Key> &s, TruncationPolicy trunc)
{
    return cos_sin_of_series(s, trunc).second;
}

// P_n(s) by Bonnet's recurrence.
template <typename Cf, typename Key>
Series<Cf, Key> legendreP(unsigned n, const Series<Cf, Key> &s)
{
    using S = Series<Cf, Key>;
    using N = typename S::numeric_type;
    S p0 = detail::unity<S>(s.args());
    if (n == 0) {
        return p0;
    }
    S p1 = s;
    for (unsigned k = 1; k < n; ++k) {
        const long kk = static_cast<long>(k);
        S p2 = (s * p1 * detail::from_q<N>(Rational(2 * kk + 1)) - p0 * detail::from_q<N>(Rational(kk)))
               * detail::from_q<N>(Rational(1, kk + 1));
        p0 = std::move(p1);
        p1 = std::move(p2);
    }
    return p1;
}

// Drops terms whose (coefficient-level, for Poisson) total degree exceeds d.
template <typename Cf, typename Key>
Series<Cf, Key> truncate_degree(const Series<Cf, Key> &s, long long d)
{
    const TermPredicate keep = [d](const TermView &t) { return t.degree <= d; };
    if constexpr (Key::is_trig) {
        static_assert(is_term_set<Cf>::value, "degree truncation needs polynomial keys or coefficients");
        const TermPredicate all = [](const TermView &) { return true; };
        const TermPredicate preds[] = {all, keep};
        return s.filter(preds);
    } else {
        return s.filter(keep);
    }
}

namespace detail
{

template <typename Cf>
struct Kepler {
    using P = Polynomial<Cf>;
    using PS = PoissonSeries<Cf>;

    typename PS::args_type args{SymbolSet{{"M", std::nullopt}}, SymbolSet{{"e", std::nullopt}}};
    typename P::args_type pargs{SymbolSet{{"e", std::nullopt}}};

    P monomial(long exp, const Rational &c) const
    {
        P out(pargs);
        out.insert(Monomial<16>{exp}, from_q<Cf>(c));
        return out;
    }
    P e(long k = 1) const
    {
        return monomial(1, Rational(k));
    }
    void put(PS &out, long k, const P &c) const
    {
        out.insert(TrigKey<16>({k}, true), c.terms());
    }
};

} // namespace detail

// cos f = -e + 2 (1 - e^2) / e * sum_k J_k(k e) cos kM, truncated at e^order.
template <typename Cf = Rational>
PoissonSeries<Cf> elliptic_cos_f(unsigned order)
{
    detail::Kepler<Cf> kp;
    using P = typename detail::Kepler<Cf>::P;
    PoissonSeries<Cf> out(kp.args);
    if (order >= 1) {
        kp.put(out, 0, kp.monomial(1, Rational(-1)));
    }
    const P factor = (kp.monomial(0, Rational(1)) - kp.monomial(2, Rational(1))) * kp.monomial(-1, Rational(2));
    for (long k = 1; k <= static_cast<long>(order) + 1; ++k) {
        const TruncationPolicy t{static_cast<unsigned>((static_cast<long>(order) + 1 - k) / 2)};
        const P c = truncate_degree(besselJ(k, kp.e(k), t) * factor, order);
        kp.put(out, k, c);
    }
    return out;
}

// r/a = 1 + e^2/2 - sum_k (e/k) (J_{k-1}(k e) - J_{k+1}(k e)) cos kM,
// truncated at e^order.
template <typename Cf = Rational>
PoissonSeries<Cf> elliptic_r_over_a(unsigned order)
{
    detail::Kepler<Cf> kp;
    using P = typename detail::Kepler<Cf>::P;
    PoissonSeries<Cf> out(kp.args);
    kp.put(out, 0, truncate_degree(kp.monomial(0, Rational(1)) + kp.monomial(2, Rational(1, 2)), order));
    for (long k = 1; k <= static_cast<long>(order); ++k) {
        const TruncationPolicy t{static_cast<unsigned>((static_cast<long>(order) - k) / 2 + 1)};
        const P a = besselJ(k - 1, kp.e(k), t) - besselJ(k + 1, kp.e(k), t);
        kp.put(out, k, truncate_degree(a * kp.monomial(1, Rational(-1, k)), order));
    }
    return out;
}

} // namespace echelon

#endif
