#ifndef ECHELON_SERIES_HPP
#define ECHELON_SERIES_HPP

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <functional>
#include <map>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <echelon/coefficient.hpp>
#include <echelon/keys.hpp>
#include <echelon/term_set.hpp>

namespace echelon
{

// A named argument, optionally carrying its angular frequency.
struct Symbol {
    std::string name;
    std::optional<double> freq;

    friend bool operator==(const Symbol &, const Symbol &) = default;
};

// Arguments of one series level, sorted by name.
using SymbolSet = std::vector<Symbol>;

// Read-only view of a term handed to filter predicates.
struct TermView {
    double cf_norm = 0;
    std::vector<int> key;
    // Set for trigonometric keys: true for cosine.
    std::optional<bool> flavour;
    long long degree = 0;
    const SymbolSet *args = nullptr;

    // Combined frequency sum(m_i * freq_i) of a trigonometric key.
    // Throws std::domain_error for monomials or when an argument has no freq.
    double freq() const;
};

using TermPredicate = std::function<bool(const TermView &)>;

namespace detail
{

void check_symbol_set(const SymbolSet &args);

// Name-sorted union of a and b; out-params receive each input's positions
// inside the union. Throws std::invalid_argument on conflicting freqs.
SymbolSet merge_symbols(const SymbolSet &a, const SymbolSet &b, std::vector<std::size_t> &remap_a,
                        std::vector<std::size_t> &remap_b);

std::vector<double> argument_values(const SymbolSet &args, const std::map<std::string, double> &vals);

template <typename Key>
double key_value(const Key &k, std::span<const double> vals)
{
    if constexpr (Key::is_trig) {
        double angle = 0;
        for (std::size_t i = 0; i < k.size(); ++i) {
            angle += k[i] * vals[i];
        }
        return k.is_cosine() ? std::cos(angle) : std::sin(angle);
    } else {
        double v = 1;
        for (std::size_t i = 0; i < k.size(); ++i) {
            const int e = k[i];
            if (e == 0) {
                continue;
            }
            if (e < 0 && vals[i] == 0.0) {
                throw std::domain_error("zero raised to a negative exponent during evaluation");
            }
            v *= std::pow(vals[i], e);
        }
        return v;
    }
}

template <typename Cf>
double coefficient_norm(const Cf &c)
{
    if constexpr (is_term_set<Cf>::value) {
        double n = 0;
        for (const auto &[k, inner] : c) {
            n += coefficient_norm(inner);
        }
        return n;
    } else {
        return cf_traits<Cf>::norm(c);
    }
}

} // namespace detail

template <typename Cf, SeriesKey Key>
class Series
{
public:
    using cf_type = Cf;
    using key_type = Key;
    using term_set_type = TermSet<Cf, Key>;
    using numeric_type = numeric_cf_t<Cf>;
    using eval_type = typename cf_traits<numeric_type>::eval_type;
    static constexpr std::size_t echelon = echelon_level<Cf>::value;
    static constexpr std::size_t levels = echelon + 1;
    // Level 0 describes this series' keys, level 1 the coefficient keys, etc.
    using args_type = std::array<SymbolSet, levels>;
    using remap_type = std::array<std::vector<std::size_t>, levels>;

    Series() = default;
    explicit Series(args_type args) : args_(std::move(args))
    {
        for (const auto &a : args_) {
            detail::check_symbol_set(a);
        }
    }
    Series(args_type args, const term_set_type &terms) : Series(std::move(args))
    {
        for (const auto &[k, c] : terms) {
            insert(k, c);
        }
    }

    const args_type &args() const
    {
        return args_;
    }
    const term_set_type &terms() const
    {
        return terms_;
    }
    std::size_t size() const
    {
        return terms_.size();
    }
    bool empty() const
    {
        return terms_.empty();
    }
    auto begin() const
    {
        return terms_.begin();
    }
    auto end() const
    {
        return terms_.end();
    }

    // Throws std::invalid_argument if the key (or any coefficient key) does
    // not match the argument layout.
    void insert(Key key, Cf cf, int sign = 1)
    {
        if (key.size() != args_[0].size()) {
            throw std::invalid_argument("key length " + std::to_string(key.size())
                                        + " does not match the argument count " + std::to_string(args_[0].size()));
        }
        check_cf_layout(cf, 1);
        terms_.insert(std::move(key), std::move(cf), sign);
    }

    // Replaces the terms wholesale; the caller guarantees the layout.
    void assign_terms(term_set_type terms)
    {
        terms_ = std::move(terms);
    }

    // Series with the single term value * unity.
    static Series constant(args_type args, const numeric_type &value)
    {
        Series s(std::move(args));
        s.insert(Key(s.args_[0].size()), unity_cf<Cf>(s.args_, 1, value));
        return s;
    }

    // Copy with keys extended to a wider layout via per-level position maps.
    Series remapped(const args_type &layout, const remap_type &remap) const
    {
        Series out(layout);
        out.terms_.reserve(terms_.size());
        for (const auto &[k, c] : terms_) {
            out.terms_.insert(k.remapped(layout[0].size(), remap[0]), remap_cf(c, layout, remap, 1));
        }
        return out;
    }

    eval_type evaluate(const std::map<std::string, double> &vals) const
    {
        std::array<std::vector<double>, levels> per_level;
        for (std::size_t l = 0; l < levels; ++l) {
            per_level[l] = detail::argument_values(args_[l], vals);
        }
        return evaluate_terms(terms_, per_level, 0);
    }

    // Keeps terms satisfying preds[0]; for nested series preds[1] filters
    // the terms of each surviving coefficient, and so on.
    Series filter(std::span<const TermPredicate> preds) const
    {
        if (preds.empty() || preds.size() > levels) {
            throw std::invalid_argument("filter needs between 1 and " + std::to_string(levels) + " predicates");
        }
        Series out(args_);
        out.terms_ = filter_terms(terms_, preds, 0);
        return out;
    }
    Series filter(const TermPredicate &pred) const
    {
        return filter(std::span<const TermPredicate>(&pred, 1));
    }

    friend Series operator-(Series s)
    {
        s.terms_ = -std::move(s.terms_);
        return s;
    }

    friend Series operator*(Series s, const numeric_type &q)
    {
        s.terms_.scale(q);
        return s;
    }
    friend Series operator*(const numeric_type &q, Series s)
    {
        return std::move(s) * q;
    }
    friend Series operator+(const Series &s, const numeric_type &q)
    {
        return s + constant(s.args_, q);
    }
    friend Series operator+(const numeric_type &q, const Series &s)
    {
        return s + q;
    }
    friend Series operator-(const Series &s, const numeric_type &q)
    {
        return s - constant(s.args_, q);
    }

    friend Series operator+(const Series &a, const Series &b)
    {
        return series_addsub(a, b, VecOp::add);
    }
    friend Series operator-(const Series &a, const Series &b)
    {
        return series_addsub(a, b, VecOp::sub);
    }

    friend bool operator==(const Series &a, const Series &b)
    {
        return series_equal(a, b);
    }

private:
    template <typename C>
    static C unity_cf(const args_type &args, std::size_t level, const numeric_type &value)
    {
        if constexpr (is_term_set<C>::value) {
            using K = typename C::key_type;
            using Inner = typename C::cf_type;
            C out;
            out.insert(K(args[level].size()), unity_cf<Inner>(args, level + 1, value));
            return out;
        } else {
            (void)args;
            (void)level;
            return value;
        }
    }

    template <typename C>
    void check_cf_layout(const C &c, std::size_t level) const
    {
        if constexpr (is_term_set<C>::value) {
            for (const auto &[k, inner] : c) {
                if (k.size() != args_[level].size()) {
                    throw std::invalid_argument("coefficient key length " + std::to_string(k.size())
                                                + " does not match the argument count "
                                                + std::to_string(args_[level].size()));
                }
                check_cf_layout(inner, level + 1);
            }
        } else {
            (void)c;
            (void)level;
        }
    }

    template <typename C>
    static C remap_cf(const C &c, const args_type &layout, const remap_type &remap, std::size_t level)
    {
        if constexpr (is_term_set<C>::value) {
            C out;
            out.reserve(c.size());
            for (const auto &[k, inner] : c) {
                out.insert(k.remapped(layout[level].size(), remap[level]), remap_cf(inner, layout, remap, level + 1));
            }
            return out;
        } else {
            (void)layout;
            (void)remap;
            (void)level;
            return c;
        }
    }

    template <typename TS>
    static eval_type evaluate_terms(const TS &ts, const std::array<std::vector<double>, levels> &vals,
                                    std::size_t level)
    {
        eval_type acc{0};
        for (const auto &[k, c] : ts) {
            const double kv = detail::key_value(k, vals[level]);
            if constexpr (is_term_set<typename TS::cf_type>::value) {
                acc += evaluate_terms(c, vals, level + 1) * kv;
            } else {
                acc += cf_traits<numeric_type>::to_eval(c) * kv;
            }
        }
        return acc;
    }

    template <typename TS>
    TS filter_terms(const TS &ts, std::span<const TermPredicate> preds, std::size_t level) const
    {
        TS out;
        for (const auto &[k, c] : ts) {
            TermView view;
            view.cf_norm = detail::coefficient_norm(c);
            view.key = k.array().unpack();
            if constexpr (TS::key_type::is_trig) {
                view.flavour = k.is_cosine();
            }
            view.degree = k.degree();
            view.args = &args_[level];
            if (!preds[0](view)) {
                continue;
            }
            if constexpr (is_term_set<typename TS::cf_type>::value) {
                if (preds.size() > 1) {
                    out.insert(k, filter_terms(c, preds.subspan(1), level + 1));
                    continue;
                }
            }
            out.insert(k, c);
        }
        return out;
    }

    args_type args_{};
    term_set_type terms_;
};

template <typename Cf, int Bits = 16>
using Polynomial = Series<Cf, Monomial<Bits>>;
template <typename Cf, int Bits = 16>
using FourierSeries = Series<Cf, TrigKey<Bits>>;
// Trigonometric keys over polynomial coefficients (echelon 1).
template <typename Cf, int Bits = 16>
using PoissonSeries = Series<TermSet<Cf, Monomial<Bits>>, TrigKey<Bits>>;

template <typename S>
struct ArgsMerge {
    typename S::args_type layout;
    typename S::remap_type remap1;
    typename S::remap_type remap2;
};

// Name-sorted union of the two layouts, level by level.
template <typename Cf, typename Key>
ArgsMerge<Series<Cf, Key>> merge_args(const Series<Cf, Key> &a, const Series<Cf, Key> &b)
{
    ArgsMerge<Series<Cf, Key>> m;
    for (std::size_t l = 0; l < Series<Cf, Key>::levels; ++l) {
        m.layout[l] = detail::merge_symbols(a.args()[l], b.args()[l], m.remap1[l], m.remap2[l]);
    }
    return m;
}

// Brings a and b onto a common layout (no copy when they already share it).
template <typename Cf, typename Key>
std::pair<Series<Cf, Key>, Series<Cf, Key>> aligned(const Series<Cf, Key> &a, const Series<Cf, Key> &b)
{
    if (a.args() == b.args()) {
        return {a, b};
    }
    const auto m = merge_args(a, b);
    return {a.remapped(m.layout, m.remap1), b.remapped(m.layout, m.remap2)};
}

template <typename Cf, typename Key>
Series<Cf, Key> series_addsub(const Series<Cf, Key> &a, const Series<Cf, Key> &b, VecOp op)
{
    auto [out, rhs] = aligned(a, b);
    auto terms = out.terms();
    for (const auto &[k, c] : rhs.terms()) {
        terms.insert(k, c, op == VecOp::add ? 1 : -1);
    }
    out.assign_terms(std::move(terms));
    return out;
}

// Exact term-by-term comparison after aligning layouts; doubles compare
// bitwise. Incompatible layouts compare unequal.
template <typename Cf, typename Key>
bool series_equal(const Series<Cf, Key> &a, const Series<Cf, Key> &b)
{
    if (a.args() == b.args()) {
        return a.terms() == b.terms();
    }
    try {
        auto [x, y] = aligned(a, b);
        return x.terms() == y.terms();
    } catch (const std::invalid_argument &) {
        return false;
    }
}

} // namespace echelon

#endif
