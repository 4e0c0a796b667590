#ifndef ECHELON_KEYS_HPP
#define ECHELON_KEYS_HPP

#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <span>
#include <stdexcept>
#include <utility>
#include <vector>

#include <echelon/packed_int_array.hpp>

namespace echelon
{

namespace detail
{

// Shift-add-xor combine over whole words; the first word seeds the hash.
inline std::size_t mix(std::size_t seed, std::uint64_t v)
{
    return seed ^ (static_cast<std::size_t>(v) + 0x9e3779b9u + (seed << 6) + (seed >> 2));
}

constexpr std::size_t empty_key_seed = 0x5bd1e995u;

template <int Bits>
std::size_t hash_words(const PackedIntArray<Bits> &a)
{
    const auto w = a.words();
    if (w.empty()) {
        return empty_key_seed;
    }
    auto seed = static_cast<std::size_t>(w[0]);
    for (std::size_t i = 1; i < w.size(); ++i) {
        seed = mix(seed, w[i]);
    }
    return seed;
}

// Copies a into a longer array, element i landing at remap[i].
template <int Bits>
PackedIntArray<Bits> remap_array(const PackedIntArray<Bits> &a, std::size_t new_size, std::span<const std::size_t> remap)
{
    if (remap.size() != a.size()) {
        throw std::invalid_argument("argument remap does not match key length");
    }
    PackedIntArray<Bits> out(new_size);
    for (std::size_t i = 0; i < a.size(); ++i) {
        out.set(remap[i], a[i]);
    }
    return out;
}

} // namespace detail

// Exponent vector of a (Laurent) monomial.
template <int Bits>
class Monomial
{
public:
    using array_type = PackedIntArray<Bits>;
    static constexpr bool is_trig = false;
    static constexpr int bits = Bits;

    Monomial() = default;
    explicit Monomial(std::size_t n) : exps_(n) {}
    explicit Monomial(array_type exps) : exps_(std::move(exps)) {}
    Monomial(std::initializer_list<long long> exps) : exps_(exps) {}

    std::size_t size() const
    {
        return exps_.size();
    }
    int operator[](std::size_t i) const
    {
        return exps_[i];
    }
    const array_type &array() const
    {
        return exps_;
    }

    std::size_t hash() const
    {
        return detail::hash_words(exps_);
    }
    long long degree() const
    {
        return exps_.sum();
    }
    bool is_unity() const
    {
        return exps_.is_zero();
    }
    // Monomials are never zero.
    bool is_ignorable() const
    {
        return false;
    }

    Monomial remapped(std::size_t new_size, std::span<const std::size_t> remap) const
    {
        return Monomial(detail::remap_array(exps_, new_size, remap));
    }

    friend bool operator==(const Monomial &, const Monomial &) = default;

private:
    array_type exps_;
};

// Trigonometric multipliers plus a cosine/sine flavour.
template <int Bits>
class TrigKey
{
public:
    using array_type = PackedIntArray<Bits>;
    static constexpr bool is_trig = true;
    static constexpr int bits = Bits;

    TrigKey() = default;
    explicit TrigKey(std::size_t n, bool cosine = true) : mults_(n), cosine_(cosine) {}
    TrigKey(array_type mults, bool cosine) : mults_(std::move(mults)), cosine_(cosine) {}
    TrigKey(std::initializer_list<long long> mults, bool cosine) : mults_(mults), cosine_(cosine) {}

    std::size_t size() const
    {
        return mults_.size();
    }
    int operator[](std::size_t i) const
    {
        return mults_[i];
    }
    const array_type &array() const
    {
        return mults_;
    }
    bool is_cosine() const
    {
        return cosine_;
    }
    void set_flavour(bool cosine)
    {
        cosine_ = cosine;
    }

    std::size_t hash() const
    {
        return detail::mix(detail::hash_words(mults_), static_cast<std::uint64_t>(cosine_));
    }
    long long degree() const
    {
        return mults_.sum();
    }
    // cos(0) == 1.
    bool is_unity() const
    {
        return cosine_ && mults_.is_zero();
    }
    // sin(0) == 0.
    bool is_ignorable() const
    {
        return !cosine_ && mults_.is_zero();
    }
    bool is_canonical() const
    {
        const auto i = mults_.first_nonzero();
        return i == mults_.size() || mults_[i] > 0;
    }

    // Brings the key to canonical form (first nonzero multiplier positive).
    // Returns the sign the coefficient must be multiplied by.
    int canonicalize()
    {
        if (is_canonical()) {
            return 1;
        }
        array_type neg(mults_.size());
        for (std::size_t i = 0; i < mults_.size(); ++i) {
            neg.set(i, -static_cast<long long>(mults_[i]));
        }
        mults_ = std::move(neg);
        return cosine_ ? 1 : -1;
    }

    // Multipliers scaled by n (flavour unchanged).
    TrigKey scaled(long long n) const
    {
        array_type out(mults_.size());
        for (std::size_t i = 0; i < mults_.size(); ++i) {
            out.set(i, n * mults_[i]);
        }
        return TrigKey(std::move(out), cosine_);
    }

    TrigKey remapped(std::size_t new_size, std::span<const std::size_t> remap) const
    {
        return TrigKey(detail::remap_array(mults_, new_size, remap), cosine_);
    }

    friend bool operator==(const TrigKey &, const TrigKey &) = default;

private:
    array_type mults_;
    bool cosine_ = true;
};

template <typename K>
concept SeriesKey = requires(const K &k) {
    { k.hash() } -> std::convertible_to<std::size_t>;
    { K::is_trig } -> std::convertible_to<bool>;
};

template <SeriesKey K>
struct KeyHasher {
    std::size_t operator()(const K &k) const
    {
        return k.hash();
    }
};

// Canonical form of a trig key together with the coefficient sign change.
template <int Bits>
std::pair<TrigKey<Bits>, int> trig_canonicalize(TrigKey<Bits> k)
{
    const int sign = k.canonicalize();
    return {std::move(k), sign};
}

// Raw elementwise sum/difference of the integer vectors of two keys.
template <SeriesKey K>
typename K::array_type key_vec(const K &a, const K &b, VecOp op)
{
    return vec_op(a.array(), b.array(), op);
}

// Ordering used for canonical printing: elementwise lexicographic on the
// integer vectors, cosine before sine on ties.
template <SeriesKey K>
int key_order(const K &a, const K &b)
{
    if (const int c = lex_compare(a.array(), b.array()); c != 0) {
        return c;
    }
    if constexpr (K::is_trig) {
        if (a.is_cosine() != b.is_cosine()) {
            return a.is_cosine() ? -1 : 1;
        }
    }
    return 0;
}

} // namespace echelon

#endif
