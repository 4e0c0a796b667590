#include <echelon/io.hpp>

#include <charconv>
#include <fstream>
#include <numeric>
#include <sstream>

namespace echelon
{

const char *to_string(SeriesKind k)
{
    switch (k) {
        case SeriesKind::polynomial:
            return "polynomial";
        case SeriesKind::fourier:
            return "fourier";
        case SeriesKind::poisson:
            return "poisson";
    }
    return "?";
}

SeriesKind parse_kind(std::string_view name)
{
    if (name == "polynomial") {
        return SeriesKind::polynomial;
    }
    if (name == "fourier") {
        return SeriesKind::fourier;
    }
    if (name == "poisson") {
        return SeriesKind::poisson;
    }
    throw std::invalid_argument("unknown series kind '" + std::string(name) + "'");
}

ParseError::ParseError(std::size_t line, const std::string &what)
    : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line)
{
}

namespace io_detail
{

std::string_view trim(std::string_view s)
{
    const auto ws = " \t\r";
    const auto b = s.find_first_not_of(ws);
    if (b == std::string_view::npos) {
        return {};
    }
    const auto e = s.find_last_not_of(ws);
    return s.substr(b, e - b + 1);
}

std::vector<std::string_view> split(std::string_view s, char sep)
{
    std::vector<std::string_view> out;
    std::size_t start = 0;
    while (true) {
        const auto p = s.find(sep, start);
        out.push_back(trim(s.substr(start, p == std::string_view::npos ? std::string_view::npos : p - start)));
        if (p == std::string_view::npos) {
            return out;
        }
        start = p + 1;
    }
}

std::vector<std::string_view> split_ws(std::string_view s)
{
    std::vector<std::string_view> out;
    std::size_t i = 0;
    while (i < s.size()) {
        while (i < s.size() && (s[i] == ' ' || s[i] == '\t' || s[i] == '\r')) {
            ++i;
        }
        const auto b = i;
        while (i < s.size() && s[i] != ' ' && s[i] != '\t' && s[i] != '\r') {
            ++i;
        }
        if (i > b) {
            out.push_back(s.substr(b, i - b));
        }
    }
    return out;
}

long long parse_int(std::string_view s, std::size_t line)
{
    long long v = 0;
    const auto *b = s.data();
    const auto *e = s.data() + s.size();
    if (b != e && *b == '+') {
        ++b;
    }
    const auto [p, ec] = std::from_chars(b, e, v);
    if (ec != std::errc{} || p != e || b == e) {
        throw ParseError(line, "malformed integer '" + std::string(s) + "'");
    }
    return v;
}

namespace
{

SymbolSet parse_symbols(std::string_view s, std::size_t line)
{
    SymbolSet out;
    for (const auto tok : split_ws(s)) {
        Symbol sym;
        const auto at = tok.find('@');
        sym.name = std::string(tok.substr(0, at));
        if (sym.name.empty()) {
            throw ParseError(line, "empty argument name");
        }
        if (at != std::string_view::npos) {
            const auto f = tok.substr(at + 1);
            double v = 0;
            const auto [p, ec] = std::from_chars(f.data(), f.data() + f.size(), v);
            if (ec != std::errc{} || p != f.data() + f.size() || f.empty()) {
                throw ParseError(line, "malformed frequency '" + std::string(f) + "'");
            }
            sym.freq = v;
        }
        out.push_back(std::move(sym));
    }
    return out;
}

} // namespace

SeriesHeader parse_header(std::string_view text, std::vector<Line> &body)
{
    std::vector<Line> lines;
    std::size_t n = 0;
    std::size_t start = 0;
    while (start <= text.size()) {
        const auto p = text.find('\n', start);
        const auto raw = text.substr(start, p == std::string_view::npos ? std::string_view::npos : p - start);
        ++n;
        lines.push_back({n, trim(raw)});
        if (p == std::string_view::npos) {
            break;
        }
        start = p + 1;
    }

    std::size_t i = 0;
    while (i < lines.size() && lines[i].text.empty()) {
        ++i;
    }
    if (i == lines.size() || lines[i].text != "#series v1") {
        throw ParseError(i < lines.size() ? lines[i].number : n, "expected '#series v1'");
    }
    ++i;

    SeriesHeader h;
    bool have_kind = false;
    bool have_cf = false;
    bool have_args = false;
    bool have_cargs = false;
    for (; i < lines.size(); ++i) {
        const auto [ln, t] = lines[i];
        if (t.empty() || t.front() == '#') {
            continue;
        }
        const auto colon = t.find(':');
        if (colon == std::string_view::npos) {
            break;
        }
        const auto key = trim(t.substr(0, colon));
        const auto value = trim(t.substr(colon + 1));
        if (key == "kind") {
            try {
                h.kind = parse_kind(value);
            } catch (const std::invalid_argument &e) {
                throw ParseError(ln, e.what());
            }
            have_kind = true;
        } else if (key == "cf") {
            static constexpr std::string_view names[] = {"double",         "integer",         "rational",
                                                          "complex-double", "complex-integer", "complex-rational"};
            if (std::find(std::begin(names), std::end(names), value) == std::end(names)) {
                throw ParseError(ln, "unknown coefficient type '" + std::string(value) + "'");
            }
            h.cf = std::string(value);
            have_cf = true;
        } else if (key == "width") {
            const auto w = parse_int(value, ln);
            if (w != 8 && w != 16) {
                throw ParseError(ln, "width must be 8 or 16");
            }
            h.width = static_cast<int>(w);
        } else if (key == "args") {
            h.args = parse_symbols(value, ln);
            have_args = true;
        } else if (key == "cargs") {
            h.cargs = parse_symbols(value, ln);
            have_cargs = true;
        } else {
            throw ParseError(ln, "unknown header field '" + std::string(key) + "'");
        }
    }
    if (!have_kind || !have_cf || !have_args) {
        throw ParseError(i < lines.size() ? lines[i].number : n, "header needs kind, cf and args");
    }
    if (have_cargs != (h.kind == SeriesKind::poisson)) {
        throw ParseError(i < lines.size() ? lines[i].number : n, "cargs is required for, and only for, poisson series");
    }
    for (; i < lines.size(); ++i) {
        if (!lines[i].text.empty() && lines[i].text.front() != '#') {
            body.push_back(lines[i]);
        }
    }
    return h;
}

std::string format_symbols(const SymbolSet &args)
{
    std::string out;
    for (const auto &a : args) {
        out += ' ';
        out += a.name;
        if (a.freq) {
            out += '@';
            out += cf_traits<double>::to_string(*a.freq);
        }
    }
    return out;
}

std::vector<std::size_t> sorted_positions(const SymbolSet &written, std::size_t line)
{
    std::vector<std::size_t> order(written.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return written[a].name < written[b].name; });
    std::vector<std::size_t> pos(written.size());
    for (std::size_t r = 0; r < order.size(); ++r) {
        if (r > 0 && written[order[r]].name == written[order[r - 1]].name) {
            throw ParseError(line, "duplicate argument '" + written[order[r]].name + "'");
        }
        pos[order[r]] = r;
    }
    return pos;
}

SymbolSet sorted_symbols(const SymbolSet &written)
{
    SymbolSet out = written;
    std::sort(out.begin(), out.end(), [](const Symbol &a, const Symbol &b) { return a.name < b.name; });
    return out;
}

} // namespace io_detail

std::string read_file(const std::string &path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw std::runtime_error("cannot open '" + path + "' for reading");
    }
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_file(const std::string &path, std::string_view content)
{
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw std::runtime_error("cannot open '" + path + "' for writing");
    }
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    if (!out) {
        throw std::runtime_error("error writing '" + path + "'");
    }
}

} // namespace echelon
