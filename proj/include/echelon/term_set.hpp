#ifndef ECHELON_TERM_SET_HPP
#define ECHELON_TERM_SET_HPP

#include <cstddef>
#include <type_traits>
#include <unordered_map>
#include <utility>

#include <echelon/coefficient.hpp>
#include <echelon/keys.hpp>

namespace echelon
{

template <typename Cf, SeriesKey Key>
class TermSet;

template <typename T>
struct is_term_set : std::false_type {
};
template <typename Cf, typename Key>
struct is_term_set<TermSet<Cf, Key>> : std::true_type {
};

// Number of nested series levels below a coefficient type.
template <typename T>
struct echelon_level : std::integral_constant<std::size_t, 0> {
};
template <typename Cf, typename Key>
struct echelon_level<TermSet<Cf, Key>> : std::integral_constant<std::size_t, 1 + echelon_level<Cf>::value> {
};

// Innermost numeric coefficient type.
template <typename T>
struct numeric_cf {
    using type = T;
};
template <typename Cf, typename Key>
struct numeric_cf<TermSet<Cf, Key>> {
    using type = typename numeric_cf<Cf>::type;
};
template <typename T>
using numeric_cf_t = typename numeric_cf<T>::type;

template <NumericCoefficient T>
void negate_in_place(T &a)
{
    a = T(-a);
}

template <NumericCoefficient T, NumericCoefficient U>
void scale_in_place(T &a, const U &q)
{
    a *= q;
}

template <NumericCoefficient T>
bool cf_equal(const T &a, const T &b)
{
    return cf_traits<T>::bit_equal(a, b);
}

// Hash set of terms keyed by Key. Every mutation goes through insert(),
// which keeps the set free of ignorable, duplicate and non-canonical terms.
template <typename Cf, SeriesKey Key>
class TermSet
{
public:
    using cf_type = Cf;
    using key_type = Key;
    using container_type = std::unordered_map<Key, Cf, KeyHasher<Key>>;
    using const_iterator = typename container_type::const_iterator;

    TermSet() = default;

    // Ignorability check, canonicalization, then merge with an equal key.
    void insert(Key key, Cf cf, int sign = 1)
    {
        if (key.is_ignorable() || is_ignorable(cf)) {
            return;
        }
        if constexpr (Key::is_trig) {
            sign *= key.canonicalize();
        }
        auto [it, fresh] = terms_.try_emplace(std::move(key));
        if (fresh) {
            if (sign < 0) {
                negate_in_place(cf);
            }
            it->second = std::move(cf);
            return;
        }
        if (sign > 0) {
            it->second += cf;
        } else {
            it->second -= cf;
        }
        if (is_ignorable(it->second)) {
            terms_.erase(it);
        }
    }

    std::size_t size() const
    {
        return terms_.size();
    }
    bool empty() const
    {
        return terms_.empty();
    }
    const_iterator begin() const
    {
        return terms_.begin();
    }
    const_iterator end() const
    {
        return terms_.end();
    }
    const_iterator find(const Key &k) const
    {
        return terms_.find(k);
    }
    void reserve(std::size_t n)
    {
        terms_.reserve(n);
    }
    void clear()
    {
        terms_.clear();
    }
    std::size_t bucket_count() const
    {
        return terms_.bucket_count();
    }

    TermSet &operator+=(const TermSet &other)
    {
        for (const auto &[k, c] : other.terms_) {
            insert(k, c, 1);
        }
        return *this;
    }
    TermSet &operator-=(const TermSet &other)
    {
        for (const auto &[k, c] : other.terms_) {
            insert(k, c, -1);
        }
        return *this;
    }
    friend TermSet operator-(TermSet a)
    {
        for (auto &[k, c] : a.terms_) {
            negate_in_place(c);
        }
        return a;
    }

    // Applies f to every coefficient in place, dropping terms that become
    // ignorable.
    template <typename F>
    void transform(F &&f)
    {
        for (auto it = terms_.begin(); it != terms_.end();) {
            f(it->second);
            if (is_ignorable(it->second)) {
                it = terms_.erase(it);
            } else {
                ++it;
            }
        }
    }

    // Multiplies every numeric coefficient by q, dropping terms that vanish.
    template <NumericCoefficient Q>
    void scale(const Q &q)
    {
        for (auto it = terms_.begin(); it != terms_.end();) {
            scale_in_place(it->second, q);
            if (is_ignorable(it->second)) {
                it = terms_.erase(it);
            } else {
                ++it;
            }
        }
    }

    // Same keys, and coefficients equal exactly (bitwise for doubles).
    friend bool operator==(const TermSet &a, const TermSet &b)
    {
        if (a.size() != b.size()) {
            return false;
        }
        for (const auto &[k, c] : a.terms_) {
            const auto it = b.terms_.find(k);
            if (it == b.terms_.end() || !cf_equal(c, it->second)) {
                return false;
            }
        }
        return true;
    }

private:
    container_type terms_;
};

// A coefficient series is ignorable iff it has no terms.
template <typename Cf, typename Key>
bool is_ignorable(const TermSet<Cf, Key> &s)
{
    return s.empty();
}

template <typename Cf, typename Key>
void negate_in_place(TermSet<Cf, Key> &s)
{
    s = -std::move(s);
}

template <typename Cf, typename Key, NumericCoefficient Q>
void scale_in_place(TermSet<Cf, Key> &s, const Q &q)
{
    s.scale(q);
}

template <typename Cf, typename Key>
bool cf_equal(const TermSet<Cf, Key> &a, const TermSet<Cf, Key> &b)
{
    return a == b;
}

} // namespace echelon

#endif
