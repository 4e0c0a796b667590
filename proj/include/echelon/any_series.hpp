#ifndef ECHELON_ANY_SERIES_HPP
#define ECHELON_ANY_SERIES_HPP

#include <complex>
#include <cstddef>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <type_traits>
#include <variant>

#include <echelon/coefficient.hpp>
#include <echelon/io.hpp>
#include <echelon/multiply.hpp>
#include <echelon/series.hpp>

namespace echelon
{

namespace detail
{

template <template <typename, int> class S, int B>
using per_cf = std::variant<S<double, B>, S<Integer, B>, S<Rational, B>, S<Complex<double>, B>, S<Complex<Integer>, B>,
                            S<Complex<Rational>, B>>;

template <typename... Vs>
struct variant_cat;
template <typename... A>
struct variant_cat<std::variant<A...>> {
    using type = std::variant<A...>;
};
template <typename... A, typename... B, typename... Rest>
struct variant_cat<std::variant<A...>, std::variant<B...>, Rest...> {
    using type = typename variant_cat<std::variant<A..., B...>, Rest...>::type;
};

template <typename Cf, int B>
using poly_t = Polynomial<Cf, B>;
template <typename Cf, int B>
using fourier_t = FourierSeries<Cf, B>;
template <typename Cf, int B>
using poisson_t = PoissonSeries<Cf, B>;

} // namespace detail

// Every series type with a file representation: 3 kinds, 6 coefficient
// types, widths 8 and 16.
using SeriesVariant =
    typename detail::variant_cat<detail::per_cf<detail::poly_t, 16>, detail::per_cf<detail::fourier_t, 16>,
                                 detail::per_cf<detail::poisson_t, 16>, detail::per_cf<detail::poly_t, 8>,
                                 detail::per_cf<detail::fourier_t, 8>, detail::per_cf<detail::poisson_t, 8>>::type;

// A series whose type is chosen at run time. Binary operations need both
// operands to have the same type and throw std::invalid_argument otherwise.
class AnySeries
{
public:
    AnySeries() = default;
    template <typename S>
        requires(!std::is_same_v<std::remove_cvref_t<S>, AnySeries>)
    AnySeries(S &&s) : v_(std::forward<S>(s))
    {
    }

    const SeriesVariant &variant() const
    {
        return v_;
    }

    SeriesKind kind() const;
    std::string cf_name() const;
    int width() const;
    std::size_t size() const;

    // Throws ParseError on malformed text.
    static AnySeries parse(std::string_view text);
    static AnySeries load(const std::string &path);
    std::string print() const;
    void save(const std::string &path) const;

    friend AnySeries operator+(const AnySeries &a, const AnySeries &b);
    friend AnySeries operator-(const AnySeries &a, const AnySeries &b);
    friend AnySeries multiply(const AnySeries &a, const AnySeries &b, const MultiplyOptions &opts);
    friend AnySeries operator*(const AnySeries &a, const AnySeries &b)
    {
        return multiply(a, b, MultiplyOptions{});
    }
    AnySeries operator-() const;
    // Same type, same terms (doubles bitwise).
    friend bool operator==(const AnySeries &a, const AnySeries &b);

    AnySeries pow_natural(unsigned long n) const;
    // Truncated binomial expansion with order + 1 summands.
    AnySeries pow_real(const Rational &r, unsigned order) const;

    std::complex<double> evaluate(const std::map<std::string, double> &vals) const;
    AnySeries filter(std::span<const TermPredicate> preds) const;

    // Level-0 and coefficient-level arguments.
    SymbolSet args() const;
    SymbolSet cargs() const;

private:
    SeriesVariant v_;
};

} // namespace echelon

#endif
