// Reference implementations used by the tests. None of these call into the
// library's arithmetic; they work on plain maps keyed by integer vectors.
#ifndef ECHELON_TESTS_ORACLES_HPP
#define ECHELON_TESTS_ORACLES_HPP

#include <cmath>
#include <cstdint>
#include <map>
#include <numbers>
#include <random>
#include <utility>
#include <vector>

#include <gmpxx.h>

namespace oracle
{

using Vec = std::vector<int>;
using Q = mpq_class;

// Polynomial as exponent vector -> coefficient, zero coefficients removed.
template <typename C>
using PolyMap = std::map<Vec, C>;

// Fourier series as (multipliers, is_cosine) -> coefficient, canonical keys.
template <typename C>
using TrigMap = std::map<std::pair<Vec, bool>, C>;

template <typename C>
void prune(std::map<typename PolyMap<C>::key_type, C> &m)
{
    for (auto it = m.begin(); it != m.end();) {
        it = (it->second == C(0)) ? m.erase(it) : std::next(it);
    }
}

template <typename C>
PolyMap<C> poly_mul(const PolyMap<C> &a, const PolyMap<C> &b)
{
    PolyMap<C> out;
    for (const auto &[ea, ca] : a) {
        for (const auto &[eb, cb] : b) {
            Vec e(ea.size());
            for (std::size_t i = 0; i < e.size(); ++i) {
                e[i] = ea[i] + eb[i];
            }
            out[e] += ca * cb;
        }
    }
    for (auto it = out.begin(); it != out.end();) {
        it = (it->second == C(0)) ? out.erase(it) : std::next(it);
    }
    return out;
}

// Adds c * trig(m) to out, folding m to its canonical representative.
template <typename C>
void trig_add(TrigMap<C> &out, Vec m, bool cosine, C c)
{
    std::size_t i = 0;
    while (i < m.size() && m[i] == 0) {
        ++i;
    }
    if (i == m.size() && !cosine) {
        return;
    }
    if (i < m.size() && m[i] < 0) {
        for (auto &v : m) {
            v = -v;
        }
        if (!cosine) {
            c = -c;
        }
    }
    out[{m, cosine}] += c;
}

// Product by the explicit product-to-sum identities:
//   cos a cos b = (cos(a-b) + cos(a+b)) / 2
//   cos a sin b = (sin(a+b) - sin(a-b)) / 2
//   sin a cos b = (sin(a+b) + sin(a-b)) / 2
//   sin a sin b = (cos(a-b) - cos(a+b)) / 2
template <typename C>
TrigMap<C> trig_mul(const TrigMap<C> &a, const TrigMap<C> &b)
{
    TrigMap<C> out;
    for (const auto &[ka, ca] : a) {
        for (const auto &[kb, cb] : b) {
            const auto &[ma, fa] = ka;
            const auto &[mb, fb] = kb;
            Vec sum(ma.size()), diff(ma.size());
            for (std::size_t i = 0; i < ma.size(); ++i) {
                sum[i] = ma[i] + mb[i];
                diff[i] = ma[i] - mb[i];
            }
            const C h = ca * cb / C(2);
            if (fa && fb) {
                trig_add(out, diff, true, h);
                trig_add(out, sum, true, h);
            } else if (fa && !fb) {
                trig_add(out, sum, false, h);
                trig_add(out, diff, false, C(-h));
            } else if (!fa && fb) {
                trig_add(out, sum, false, h);
                trig_add(out, diff, false, h);
            } else {
                trig_add(out, diff, true, h);
                trig_add(out, sum, true, C(-h));
            }
        }
    }
    for (auto it = out.begin(); it != out.end();) {
        it = (it->second == C(0)) ? out.erase(it) : std::next(it);
    }
    return out;
}

inline double trig_eval(const TrigMap<double> &s, const std::vector<double> &theta)
{
    double acc = 0;
    for (const auto &[k, c] : s) {
        double a = 0;
        for (std::size_t i = 0; i < theta.size(); ++i) {
            a += k.first[i] * theta[i];
        }
        acc += c * (k.second ? std::cos(a) : std::sin(a));
    }
    return acc;
}

inline mpz_class factorial(unsigned n)
{
    mpz_class f = 1;
    for (unsigned i = 2; i <= n; ++i) {
        f *= i;
    }
    return f;
}

// n! / (k_0! k_1! ... ) with sum k_i = n.
inline mpz_class multinomial(unsigned n, const std::vector<unsigned> &ks)
{
    mpz_class d = 1;
    for (auto k : ks) {
        d *= factorial(k);
    }
    return factorial(n) / d;
}

inline mpz_class binomial(unsigned n, unsigned k)
{
    return k > n ? mpz_class(0) : factorial(n) / (factorial(k) * factorial(n - k));
}

// Coefficient of e^(2n) in sqrt(1 - e^2): (2n)! / ((1 - 2n) n!^2 4^n).
inline Q sqrt_one_minus_x2_coefficient(unsigned n)
{
    Q c(factorial(2 * n), factorial(n) * factorial(n));
    c /= Q(1 - 2 * static_cast<long>(n));
    mpz_class p4 = 1;
    for (unsigned i = 0; i < n; ++i) {
        p4 *= 4;
    }
    c /= p4;
    c.canonicalize();
    return c;
}

// J_n(x) = (1/pi) int_0^pi cos(n t - x sin t) dt by composite Simpson.
inline double bessel_integral(int n, double x, int panels = 2000)
{
    const double h = std::numbers::pi / panels;
    double acc = 0;
    for (int i = 0; i <= panels; ++i) {
        const double t = i * h;
        const double w = (i == 0 || i == panels) ? 1 : (i % 2 == 1 ? 4 : 2);
        acc += w * std::cos(n * t - x * std::sin(t));
    }
    return acc * h / 3 / std::numbers::pi;
}

// P_n(x) = 2^-n sum_k (-1)^k C(n,k) C(2n-2k, n) x^(n-2k).
inline double legendre_explicit(unsigned n, double x)
{
    double acc = 0;
    for (unsigned k = 0; 2 * k <= n; ++k) {
        const double c = binomial(n, k).get_d() * binomial(2 * n - 2 * k, n).get_d();
        acc += (k % 2 ? -c : c) * std::pow(x, static_cast<double>(n - 2 * k));
    }
    return std::ldexp(acc, -static_cast<int>(n));
}

// Eccentric anomaly by Newton iteration on E - e sin E = M.
inline double kepler_E(double e, double M)
{
    double E = M;
    for (int i = 0; i < 100; ++i) {
        const double d = (E - e * std::sin(E) - M) / (1 - e * std::cos(E));
        E -= d;
        if (std::abs(d) < 1e-16) {
            break;
        }
    }
    return E;
}

inline double r_over_a(double e, double M)
{
    return 1 - e * std::cos(kepler_E(e, M));
}

inline double cos_true_anomaly(double e, double M)
{
    const double E = kepler_E(e, M);
    return (std::cos(E) - e) / (1 - e * std::cos(E));
}

// Small helper around a seeded engine for the hand-rolled generators.
class Rng
{
public:
    explicit Rng(std::uint64_t seed) : g_(seed) {}
    int integer(int lo, int hi)
    {
        return std::uniform_int_distribution<int>(lo, hi)(g_);
    }
    double real(double lo, double hi)
    {
        return std::uniform_real_distribution<double>(lo, hi)(g_);
    }
    bool coin()
    {
        return integer(0, 1) == 1;
    }
    Q rational(int max_num, int max_den)
    {
        Q q(integer(-max_num, max_num), integer(1, max_den));
        q.canonicalize();
        return q;
    }
    std::mt19937_64 &engine()
    {
        return g_;
    }

private:
    std::mt19937_64 g_;
};

} // namespace oracle

#endif
