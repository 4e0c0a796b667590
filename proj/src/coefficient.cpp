#include <echelon/coefficient.hpp>

#include <atomic>
#include <charconv>
#include <cstring>
#include <system_error>

namespace echelon
{

namespace
{

std::atomic<double> g_eps{1e-20};

std::string trimmed(std::string_view s)
{
    const auto b = s.find_first_not_of(" \t");
    if (b == std::string_view::npos) {
        return {};
    }
    const auto e = s.find_last_not_of(" \t");
    return std::string(s.substr(b, e - b + 1));
}

} // namespace

double eps()
{
    return g_eps.load(std::memory_order_relaxed);
}

void set_eps(double value)
{
    if (!(value >= 0.0)) {
        throw std::invalid_argument("the ignorability threshold must be non-negative");
    }
    g_eps.store(value, std::memory_order_relaxed);
}

std::string cf_traits<double>::to_string(double a)
{
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof(buf), a);
    return std::string(buf, res.ptr);
}

double cf_traits<double>::parse(std::string_view s)
{
    const auto t = trimmed(s);
    const char *first = t.data();
    // from_chars rejects a leading '+'.
    if (!t.empty() && t.front() == '+') {
        ++first;
    }
    double value = 0;
    const auto res = std::from_chars(first, t.data() + t.size(), value);
    if (t.empty() || res.ec != std::errc{} || res.ptr != t.data() + t.size()) {
        throw std::invalid_argument("malformed double coefficient '" + t + "'");
    }
    return value;
}

bool cf_traits<double>::bit_equal(double a, double b)
{
    return std::memcmp(&a, &b, sizeof(double)) == 0;
}

Integer cf_traits<Integer>::from_rational(const Rational &q)
{
    if (q.get_den() != 1) {
        throw std::domain_error("the rational " + q.get_str() + " is not representable as an integer coefficient");
    }
    return q.get_num();
}

void cf_traits<Integer>::halve(Integer &a)
{
    if (mpz_odd_p(a.get_mpz_t())) {
        throw std::domain_error("integer coefficients are not closed under trigonometric multiplication (odd value "
                                + a.get_str() + " cannot be halved)");
    }
    mpz_divexact_ui(a.get_mpz_t(), a.get_mpz_t(), 2);
}

Integer cf_traits<Integer>::parse(std::string_view s)
{
    auto t = trimmed(s);
    if (!t.empty() && t.front() == '+') {
        t.erase(0, 1);
    }
    Integer value;
    if (t.empty() || value.set_str(t, 10) != 0) {
        throw std::invalid_argument("malformed integer coefficient '" + t + "'");
    }
    return value;
}

Rational cf_traits<Rational>::parse(std::string_view s)
{
    auto t = trimmed(s);
    if (!t.empty() && t.front() == '+') {
        t.erase(0, 1);
    }
    const auto slash = t.find('/');
    const auto dot = t.find('.');
    Rational value;
    if (dot != std::string::npos && slash == std::string::npos) {
        // Exact decimal literal, e.g. "-0.125".
        auto digits = t;
        digits.erase(dot, 1);
        Integer num;
        if (digits.empty() || digits == "-" || num.set_str(digits, 10) != 0) {
            throw std::invalid_argument("malformed rational coefficient '" + t + "'");
        }
        Integer den;
        mpz_ui_pow_ui(den.get_mpz_t(), 10, static_cast<unsigned long>(t.size() - dot - 1));
        value = Rational(num, den);
    } else {
        Integer num;
        Integer den = 1;
        const auto num_str = t.substr(0, slash);
        if (num_str.empty() || num.set_str(num_str, 10) != 0) {
            throw std::invalid_argument("malformed rational coefficient '" + t + "'");
        }
        if (slash != std::string::npos) {
            const auto den_str = t.substr(slash + 1);
            if (den_str.empty() || den_str.front() == '-' || den.set_str(den_str, 10) != 0) {
                throw std::invalid_argument("malformed rational coefficient '" + t + "'");
            }
            if (sgn(den) == 0) {
                throw std::invalid_argument("zero denominator in rational coefficient '" + t + "'");
            }
        }
        value = Rational(num, den);
    }
    value.canonicalize();
    return value;
}

Coefficient cf_arith(const Coefficient &a, const Coefficient &b, ArithOp op)
{
    if (a.index() != b.index()) {
        throw std::invalid_argument("coefficient type mismatch in arithmetic");
    }
    return std::visit(
        [&](const auto &x) -> Coefficient {
            using T = std::decay_t<decltype(x)>;
            const auto &y = std::get<T>(b);
            switch (op) {
                case ArithOp::add:
                    return T(x + y);
                case ArithOp::sub:
                    return T(x - y);
                case ArithOp::mul:
                    return T(x * y);
            }
            throw std::invalid_argument("unknown arithmetic operation");
        },
        a);
}

bool cf_is_ignorable(const Coefficient &a, double threshold)
{
    return std::visit([&](const auto &x) { return cf_traits<std::decay_t<decltype(x)>>::is_ignorable(x, threshold); },
                      a);
}

double cf_norm(const Coefficient &a)
{
    return std::visit([](const auto &x) { return cf_traits<std::decay_t<decltype(x)>>::norm(x); }, a);
}

std::string cf_to_string(const Coefficient &a)
{
    return std::visit([](const auto &x) { return cf_traits<std::decay_t<decltype(x)>>::to_string(x); }, a);
}

Coefficient cf_real(const Coefficient &a)
{
    return std::visit(
        [](const auto &x) -> Coefficient {
            using T = std::decay_t<decltype(x)>;
            if constexpr (cf_traits<T>::is_complex) {
                return x.re;
            } else {
                return x;
            }
        },
        a);
}

Coefficient cf_imag(const Coefficient &a)
{
    return std::visit(
        [](const auto &x) -> Coefficient {
            using T = std::decay_t<decltype(x)>;
            if constexpr (cf_traits<T>::is_complex) {
                return x.im;
            } else {
                return T(0);
            }
        },
        a);
}

} // namespace echelon
