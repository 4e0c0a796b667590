#ifndef ECHELON_IO_HPP
#define ECHELON_IO_HPP

#include <algorithm>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include <echelon/coefficient.hpp>
#include <echelon/series.hpp>

namespace echelon
{

enum class SeriesKind { polynomial, fourier, poisson };

const char *to_string(SeriesKind k);
// Throws std::invalid_argument on unknown names.
SeriesKind parse_kind(std::string_view name);

// Syntax or content error in a series file, with its 1-based line number.
class ParseError : public std::runtime_error
{
public:
    ParseError(std::size_t line, const std::string &what);
    std::size_t line() const
    {
        return line_;
    }

private:
    std::size_t line_;
};

struct SeriesHeader {
    SeriesKind kind = SeriesKind::polynomial;
    std::string cf;
    int width = 16;
    // As written in the file.
    SymbolSet args;
    SymbolSet cargs;
};

namespace io_detail
{

struct Line {
    std::size_t number;
    std::string_view text;
};

std::string_view trim(std::string_view s);
std::vector<std::string_view> split(std::string_view s, char sep);
std::vector<std::string_view> split_ws(std::string_view s);
long long parse_int(std::string_view s, std::size_t line);

// Splits the text into lines and parses the header; body holds the
// remaining non-blank, non-comment lines.
SeriesHeader parse_header(std::string_view text, std::vector<Line> &body);

std::string format_symbols(const SymbolSet &args);

// Position in the name-sorted layout of each argument as written.
std::vector<std::size_t> sorted_positions(const SymbolSet &written, std::size_t line);
SymbolSet sorted_symbols(const SymbolSet &written);

template <typename Key>
Key parse_key(std::string_view s, const std::vector<std::size_t> &pos, bool cosine, std::size_t line)
{
    const auto parts = split_ws(s);
    if (parts.size() != pos.size()) {
        throw ParseError(line, "key has " + std::to_string(parts.size()) + " entries, expected "
                                   + std::to_string(pos.size()));
    }
    typename Key::array_type arr(pos.size());
    for (std::size_t i = 0; i < parts.size(); ++i) {
        const auto v = parse_int(parts[i], line);
        if (!Key::array_type::fits(v)) {
            throw ParseError(line, "value " + std::to_string(v) + " does not fit the key width");
        }
        arr.set(pos[i], v);
    }
    if constexpr (Key::is_trig) {
        return Key(std::move(arr), cosine);
    } else {
        (void)cosine;
        return Key(std::move(arr));
    }
}

template <typename N>
N parse_cf(std::string_view s, std::size_t line)
{
    try {
        return cf_traits<N>::parse(trim(s));
    } catch (const std::exception &e) {
        throw ParseError(line, e.what());
    }
}

template <typename Key>
std::string format_key(const Key &k)
{
    std::string out;
    for (std::size_t i = 0; i < k.size(); ++i) {
        out += ' ';
        out += std::to_string(k[i]);
    }
    return out;
}

// Canonical print order: keys in descending lexicographic order, cosine
// before sine for equal multipliers.
template <typename Key>
bool print_before(const Key &a, const Key &b)
{
    if (const int c = lex_compare(a.array(), b.array()); c != 0) {
        return c > 0;
    }
    if constexpr (Key::is_trig) {
        return a.is_cosine() && !b.is_cosine();
    }
    return false;
}

template <typename TS>
std::vector<typename TS::const_iterator> sorted_terms(const TS &ts)
{
    std::vector<typename TS::const_iterator> v;
    v.reserve(ts.size());
    for (auto it = ts.begin(); it != ts.end(); ++it) {
        v.push_back(it);
    }
    std::sort(v.begin(), v.end(), [](const auto &a, const auto &b) { return print_before(a->first, b->first); });
    return v;
}

template <typename TS>
std::string format_poly_terms(const TS &ts)
{
    using N = typename TS::cf_type;
    std::string out;
    for (const auto &it : sorted_terms(ts)) {
        out += cf_traits<N>::to_string(it->second);
        out += " ;";
        out += format_key(it->first);
        out += '\n';
    }
    return out;
}

} // namespace io_detail

template <typename S>
constexpr SeriesKind series_kind()
{
    if constexpr (!S::key_type::is_trig) {
        return SeriesKind::polynomial;
    } else if constexpr (S::echelon == 0) {
        return SeriesKind::fourier;
    } else {
        return SeriesKind::poisson;
    }
}

// Canonical text form: header, then one term per line in print order.
template <typename Cf, typename Key>
std::string print_series(const Series<Cf, Key> &s)
{
    using S = Series<Cf, Key>;
    using N = typename S::numeric_type;
    static_assert(S::echelon <= 1, "only echelon 0 and 1 series have a file format");
    std::string out = "#series v1\n";
    out += std::string("kind: ") + to_string(series_kind<S>()) + "\n";
    out += std::string("cf: ") + cf_traits<N>::name + "\n";
    out += "width: " + std::to_string(Key::bits) + "\n";
    out += "args:" + io_detail::format_symbols(s.args()[0]) + "\n";
    if constexpr (S::echelon == 1) {
        out += "cargs:" + io_detail::format_symbols(s.args()[1]) + "\n";
    }
    for (const auto &it : io_detail::sorted_terms(s.terms())) {
        const auto &[k, c] = *it;
        if constexpr (S::echelon == 1) {
            out += "{ ";
            bool first = true;
            for (const auto &inner : io_detail::sorted_terms(c)) {
                if (!first) {
                    out += " | ";
                }
                first = false;
                out += cf_traits<N>::to_string(inner->second) + " ;" + io_detail::format_key(inner->first);
            }
            out += " }";
        } else {
            out += cf_traits<N>::to_string(c);
        }
        if constexpr (Key::is_trig) {
            out += k.is_cosine() ? " ; c ;" : " ; s ;";
        } else {
            out += " ;";
        }
        out += io_detail::format_key(k);
        out += '\n';
    }
    return out;
}

// Parses a body into S. The header must match S's kind, coefficient type
// and width. Every term goes through insert.
template <typename S>
S parse_series_body(const SeriesHeader &h, const std::vector<io_detail::Line> &body)
{
    using Key = typename S::key_type;
    using N = typename S::numeric_type;
    using io_detail::split;
    using io_detail::trim;
    if (h.kind != series_kind<S>() || h.cf != cf_traits<N>::name || h.width != Key::bits) {
        throw std::invalid_argument("series header does not match the requested type");
    }
    typename S::args_type args;
    args[0] = io_detail::sorted_symbols(h.args);
    const auto pos = io_detail::sorted_positions(h.args, 0);
    std::vector<std::size_t> cpos;
    if constexpr (S::echelon == 1) {
        args[1] = io_detail::sorted_symbols(h.cargs);
        cpos = io_detail::sorted_positions(h.cargs, 0);
    }
    S out(args);
    for (const auto &[ln, text] : body) {
        std::string_view rest = text;
        typename S::cf_type cf{};
        if constexpr (S::echelon == 1) {
            using CKey = typename S::cf_type::key_type;
            const auto open = rest.find('{');
            const auto close = rest.find('}');
            if (open != 0 || close == std::string_view::npos) {
                throw ParseError(ln, "expected '{ ... }' polynomial coefficient");
            }
            for (const auto part : split(rest.substr(1, close - 1), '|')) {
                const auto fields = split(part, ';');
                if (fields.size() != 2) {
                    throw ParseError(ln, "coefficient term must be 'CF ; exponents'");
                }
                cf.insert(io_detail::parse_key<CKey>(fields[1], cpos, true, ln),
                          io_detail::parse_cf<N>(fields[0], ln));
            }
            rest = trim(rest.substr(close + 1));
            if (rest.empty() || rest.front() != ';') {
                throw ParseError(ln, "expected ';' after the coefficient");
            }
            rest = rest.substr(1);
        }
        const auto fields = split(rest, ';');
        std::size_t f = 0;
        if constexpr (S::echelon == 0) {
            if (fields.empty()) {
                throw ParseError(ln, "empty term");
            }
            cf = io_detail::parse_cf<N>(fields[f++], ln);
        }
        bool cosine = true;
        if constexpr (Key::is_trig) {
            if (f >= fields.size()) {
                throw ParseError(ln, "missing flavour");
            }
            const auto fl = trim(fields[f++]);
            if (fl == "c") {
                cosine = true;
            } else if (fl == "s") {
                cosine = false;
            } else {
                throw ParseError(ln, "flavour must be 'c' or 's'");
            }
        }
        if (f + 1 != fields.size()) {
            throw ParseError(ln, "wrong number of ';' separated fields");
        }
        out.insert(io_detail::parse_key<Key>(fields[f], pos, cosine, ln), std::move(cf));
    }
    return out;
}

template <typename S>
S parse_series(std::string_view text)
{
    std::vector<io_detail::Line> body;
    const auto h = io_detail::parse_header(text, body);
    return parse_series_body<S>(h, body);
}

// Reads a whole file; throws std::runtime_error when it cannot be opened.
std::string read_file(const std::string &path);
void write_file(const std::string &path, std::string_view content);

} // namespace echelon

#endif
