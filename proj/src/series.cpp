#include <echelon/series.hpp>

namespace echelon
{

double TermView::freq() const
{
    if (!flavour) {
        throw std::domain_error("frequency is only defined for trigonometric keys");
    }
    if (args == nullptr || args->size() != key.size()) {
        throw std::domain_error("term view has no argument metadata");
    }
    double f = 0;
    for (std::size_t i = 0; i < key.size(); ++i) {
        const auto &a = (*args)[i];
        if (!a.freq) {
            throw std::domain_error("argument '" + a.name + "' has no frequency");
        }
        f += key[i] * *a.freq;
    }
    return f;
}

namespace detail
{

void check_symbol_set(const SymbolSet &args)
{
    for (std::size_t i = 0; i < args.size(); ++i) {
        if (args[i].name.empty()) {
            throw std::invalid_argument("argument names must be non-empty");
        }
        if (i > 0 && !(args[i - 1].name < args[i].name)) {
            throw std::invalid_argument("arguments must be sorted by name and unique (offending name '"
                                        + args[i].name + "')");
        }
    }
}

SymbolSet merge_symbols(const SymbolSet &a, const SymbolSet &b, std::vector<std::size_t> &remap_a,
                        std::vector<std::size_t> &remap_b)
{
    SymbolSet out;
    out.reserve(a.size() + b.size());
    remap_a.assign(a.size(), 0);
    remap_b.assign(b.size(), 0);
    std::size_t i = 0;
    std::size_t j = 0;
    while (i < a.size() || j < b.size()) {
        if (j == b.size() || (i < a.size() && a[i].name < b[j].name)) {
            remap_a[i] = out.size();
            out.push_back(a[i++]);
        } else if (i == a.size() || b[j].name < a[i].name) {
            remap_b[j] = out.size();
            out.push_back(b[j++]);
        } else {
            Symbol s = a[i];
            if (a[i].freq && b[j].freq && *a[i].freq != *b[j].freq) {
                throw std::invalid_argument("argument '" + a[i].name + "' has conflicting frequencies");
            }
            if (!s.freq) {
                s.freq = b[j].freq;
            }
            remap_a[i++] = out.size();
            remap_b[j++] = out.size();
            out.push_back(std::move(s));
        }
    }
    return out;
}

std::vector<double> argument_values(const SymbolSet &args, const std::map<std::string, double> &vals)
{
    std::vector<double> out;
    out.reserve(args.size());
    for (const auto &a : args) {
        const auto it = vals.find(a.name);
        if (it == vals.end()) {
            throw std::invalid_argument("no value given for argument '" + a.name + "'");
        }
        out.push_back(it->second);
    }
    return out;
}

} // namespace detail

} // namespace echelon
