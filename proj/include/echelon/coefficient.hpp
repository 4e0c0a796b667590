#ifndef ECHELON_COEFFICIENT_HPP
#define ECHELON_COEFFICIENT_HPP

#include <cmath>
#include <complex>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <type_traits>
#include <variant>

#include <gmpxx.h>

namespace echelon
{

using Integer = mpz_class;
using Rational = mpq_class;

// Pair of real coefficients used for the complex variants. Only the ring
// operations needed by the series kernels are provided.
template <typename T>
struct Complex {
    T re{0};
    T im{0};

    Complex() = default;
    Complex(T r) : re(std::move(r)), im(0) {}
    Complex(T r, T i) : re(std::move(r)), im(std::move(i)) {}

    Complex &operator+=(const Complex &o)
    {
        re += o.re;
        im += o.im;
        return *this;
    }
    Complex &operator-=(const Complex &o)
    {
        re -= o.re;
        im -= o.im;
        return *this;
    }
    Complex &operator*=(const Complex &o)
    {
        T r = re * o.re - im * o.im;
        T i = re * o.im + im * o.re;
        re = std::move(r);
        im = std::move(i);
        return *this;
    }
    friend Complex operator+(Complex a, const Complex &b)
    {
        return a += b;
    }
    friend Complex operator-(Complex a, const Complex &b)
    {
        return a -= b;
    }
    friend Complex operator*(Complex a, const Complex &b)
    {
        return a *= b;
    }
    friend Complex operator-(const Complex &a)
    {
        return Complex(T(-a.re), T(-a.im));
    }
    friend bool operator==(const Complex &a, const Complex &b)
    {
        return a.re == b.re && a.im == b.im;
    }
};

// Process-wide ignorability threshold for floating-point coefficients.
double eps();
void set_eps(double value);

template <typename T>
struct cf_traits;

template <>
struct cf_traits<double> {
    using real_type = double;
    using eval_type = double;
    static constexpr bool is_exact = false;
    static constexpr bool is_field = true;
    static constexpr bool is_complex = false;
    static constexpr const char *name = "double";

    static bool is_ignorable(double a, double threshold)
    {
        return a == 0.0 || std::abs(a) < threshold;
    }
    static double norm(double a)
    {
        return std::abs(a);
    }
    static double to_eval(double a)
    {
        return a;
    }
    static double from_rational(const Rational &q)
    {
        return q.get_d();
    }
    static void halve(double &a)
    {
        a *= 0.5;
    }
    static void fma(double &acc, double a, double b)
    {
        acc += a * b;
    }
    static void fms(double &acc, double a, double b)
    {
        acc -= a * b;
    }
    static std::string to_string(double a);
    static double parse(std::string_view s);
    static bool bit_equal(double a, double b);
};

template <>
struct cf_traits<Integer> {
    using real_type = Integer;
    using eval_type = double;
    static constexpr bool is_exact = true;
    static constexpr bool is_field = false;
    static constexpr bool is_complex = false;
    static constexpr const char *name = "integer";

    static bool is_ignorable(const Integer &a, double)
    {
        return sgn(a) == 0;
    }
    static double norm(const Integer &a)
    {
        return std::abs(a.get_d());
    }
    static double to_eval(const Integer &a)
    {
        return a.get_d();
    }
    static Integer from_rational(const Rational &q);
    // Throws std::domain_error when a is odd.
    static void halve(Integer &a);
    static void fma(Integer &acc, const Integer &a, const Integer &b)
    {
        mpz_addmul(acc.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    }
    static void fms(Integer &acc, const Integer &a, const Integer &b)
    {
        mpz_submul(acc.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    }
    static std::string to_string(const Integer &a)
    {
        return a.get_str();
    }
    static Integer parse(std::string_view s);
    static bool bit_equal(const Integer &a, const Integer &b)
    {
        return a == b;
    }
};

template <>
struct cf_traits<Rational> {
    using real_type = Rational;
    using eval_type = double;
    static constexpr bool is_exact = true;
    static constexpr bool is_field = true;
    static constexpr bool is_complex = false;
    static constexpr const char *name = "rational";

    static bool is_ignorable(const Rational &a, double)
    {
        return sgn(a) == 0;
    }
    static double norm(const Rational &a)
    {
        return std::abs(a.get_d());
    }
    static double to_eval(const Rational &a)
    {
        return a.get_d();
    }
    static Rational from_rational(const Rational &q)
    {
        return q;
    }
    static void halve(Rational &a)
    {
        mpq_div_2exp(a.get_mpq_t(), a.get_mpq_t(), 1);
    }
    static void fma(Rational &acc, const Rational &a, const Rational &b)
    {
        acc += a * b;
    }
    static void fms(Rational &acc, const Rational &a, const Rational &b)
    {
        acc -= a * b;
    }
    static std::string to_string(const Rational &a)
    {
        return a.get_str();
    }
    static Rational parse(std::string_view s);
    static bool bit_equal(const Rational &a, const Rational &b)
    {
        return a == b;
    }
};

template <typename T>
struct cf_traits<Complex<T>> {
    using base = cf_traits<T>;
    using real_type = T;
    using eval_type = std::complex<double>;
    static constexpr bool is_exact = base::is_exact;
    static constexpr bool is_field = base::is_field;
    static constexpr bool is_complex = true;
    static constexpr const char *name = std::is_same_v<T, double>    ? "complex-double"
                                        : std::is_same_v<T, Integer> ? "complex-integer"
                                                                     : "complex-rational";

    static bool is_ignorable(const Complex<T> &a, double threshold)
    {
        return base::is_ignorable(a.re, threshold) && base::is_ignorable(a.im, threshold);
    }
    static double norm(const Complex<T> &a)
    {
        return std::hypot(base::to_eval(a.re), base::to_eval(a.im));
    }
    static std::complex<double> to_eval(const Complex<T> &a)
    {
        return {base::to_eval(a.re), base::to_eval(a.im)};
    }
    static Complex<T> from_rational(const Rational &q)
    {
        return Complex<T>(base::from_rational(q));
    }
    static void halve(Complex<T> &a)
    {
        base::halve(a.re);
        base::halve(a.im);
    }
    static void fma(Complex<T> &acc, const Complex<T> &a, const Complex<T> &b)
    {
        acc += a * b;
    }
    static void fms(Complex<T> &acc, const Complex<T> &a, const Complex<T> &b)
    {
        acc -= a * b;
    }
    static std::string to_string(const Complex<T> &a)
    {
        return "(" + base::to_string(a.re) + "," + base::to_string(a.im) + ")";
    }
    static Complex<T> parse(std::string_view s);
    static bool bit_equal(const Complex<T> &a, const Complex<T> &b)
    {
        return base::bit_equal(a.re, b.re) && base::bit_equal(a.im, b.im);
    }
};

template <typename T>
Complex<T> cf_traits<Complex<T>>::parse(std::string_view s)
{
    if (s.size() < 5 || s.front() != '(' || s.back() != ')') {
        throw std::invalid_argument("malformed complex coefficient '" + std::string(s) + "'");
    }
    const auto inner = s.substr(1, s.size() - 2);
    const auto comma = inner.find(',');
    if (comma == std::string_view::npos) {
        throw std::invalid_argument("malformed complex coefficient '" + std::string(s) + "'");
    }
    return Complex<T>(base::parse(inner.substr(0, comma)), base::parse(inner.substr(comma + 1)));
}

// Numeric coefficient types accepted at echelon 0.
template <typename T>
concept NumericCoefficient = requires { cf_traits<T>::is_exact; };

template <NumericCoefficient T>
bool is_ignorable(const T &a)
{
    return cf_traits<T>::is_ignorable(a, eps());
}

// Runtime-typed coefficient, used where the coefficient type is only known
// at run time (file headers, bindings).
using Coefficient = std::variant<double, Integer, Rational, Complex<double>, Complex<Integer>, Complex<Rational>>;

enum class ArithOp { add, sub, mul };

// Throws std::invalid_argument on mismatched coefficient types.
Coefficient cf_arith(const Coefficient &a, const Coefficient &b, ArithOp op);
bool cf_is_ignorable(const Coefficient &a, double threshold);
double cf_norm(const Coefficient &a);
std::string cf_to_string(const Coefficient &a);
Coefficient cf_real(const Coefficient &a);
Coefficient cf_imag(const Coefficient &a);

} // namespace echelon

#endif
