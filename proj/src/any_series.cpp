#include <echelon/any_series.hpp>

#include <stdexcept>

#include <echelon/expansions.hpp>

namespace echelon
{

namespace
{

template <typename S>
using num_t = typename std::remove_cvref_t<S>::numeric_type;

template <std::size_t I = 0>
AnySeries parse_indexed(const SeriesHeader &h, const std::vector<io_detail::Line> &body)
{
    if constexpr (I == std::variant_size_v<SeriesVariant>) {
        throw std::invalid_argument("unsupported series type");
    } else {
        using S = std::variant_alternative_t<I, SeriesVariant>;
        if (h.kind == series_kind<S>() && h.cf == cf_traits<num_t<S>>::name && h.width == S::key_type::bits) {
            return AnySeries(parse_series_body<S>(h, body));
        }
        return parse_indexed<I + 1>(h, body);
    }
}

// Applies f(a, b) to two operands of the same alternative.
template <typename F>
AnySeries binary(const AnySeries &a, const AnySeries &b, F &&f)
{
    if (a.variant().index() != b.variant().index()) {
        throw std::invalid_argument("operands have different series types");
    }
    return std::visit(
        [&](const auto &x) -> AnySeries {
            using S = std::remove_cvref_t<decltype(x)>;
            return AnySeries(f(x, *std::get_if<S>(&b.variant())));
        },
        a.variant());
}

} // namespace

SeriesKind AnySeries::kind() const
{
    return std::visit([](const auto &s) { return series_kind<std::remove_cvref_t<decltype(s)>>(); }, v_);
}

std::string AnySeries::cf_name() const
{
    return std::visit([](const auto &s) { return std::string(cf_traits<num_t<decltype(s)>>::name); }, v_);
}

int AnySeries::width() const
{
    return std::visit([](const auto &s) { return std::remove_cvref_t<decltype(s)>::key_type::bits; }, v_);
}

std::size_t AnySeries::size() const
{
    return std::visit([](const auto &s) { return s.size(); }, v_);
}

AnySeries AnySeries::parse(std::string_view text)
{
    std::vector<io_detail::Line> body;
    const auto h = io_detail::parse_header(text, body);
    return parse_indexed(h, body);
}

AnySeries AnySeries::load(const std::string &path)
{
    return parse(read_file(path));
}

std::string AnySeries::print() const
{
    return std::visit([](const auto &s) { return print_series(s); }, v_);
}

void AnySeries::save(const std::string &path) const
{
    write_file(path, print());
}

AnySeries operator+(const AnySeries &a, const AnySeries &b)
{
    return binary(a, b, [](const auto &x, const auto &y) { return x + y; });
}

AnySeries operator-(const AnySeries &a, const AnySeries &b)
{
    return binary(a, b, [](const auto &x, const auto &y) { return x - y; });
}

AnySeries multiply(const AnySeries &a, const AnySeries &b, const MultiplyOptions &opts)
{
    return binary(a, b, [&](const auto &x, const auto &y) { return multiply(x, y, opts); });
}

AnySeries AnySeries::operator-() const
{
    return std::visit([](const auto &s) { return AnySeries(-s); }, v_);
}

bool operator==(const AnySeries &a, const AnySeries &b)
{
    if (a.v_.index() != b.v_.index()) {
        return false;
    }
    return std::visit(
        [&](const auto &x) {
            using S = std::remove_cvref_t<decltype(x)>;
            return x == *std::get_if<S>(&b.v_);
        },
        a.v_);
}

AnySeries AnySeries::pow_natural(unsigned long n) const
{
    return std::visit([&](const auto &s) { return AnySeries(echelon::pow_natural(s, n)); }, v_);
}

AnySeries AnySeries::pow_real(const Rational &r, unsigned order) const
{
    return std::visit([&](const auto &s) { return AnySeries(echelon::pow_real(s, r, TruncationPolicy{order})); }, v_);
}

std::complex<double> AnySeries::evaluate(const std::map<std::string, double> &vals) const
{
    return std::visit([&](const auto &s) { return std::complex<double>(s.evaluate(vals)); }, v_);
}

AnySeries AnySeries::filter(std::span<const TermPredicate> preds) const
{
    return std::visit([&](const auto &s) { return AnySeries(s.filter(preds)); }, v_);
}

SymbolSet AnySeries::args() const
{
    return std::visit([](const auto &s) { return s.args()[0]; }, v_);
}

SymbolSet AnySeries::cargs() const
{
    return std::visit(
        [](const auto &s) {
            using S = std::remove_cvref_t<decltype(s)>;
            if constexpr (S::levels > 1) {
                return s.args()[1];
            } else {
                return SymbolSet{};
            }
        },
        v_);
}

} // namespace echelon
