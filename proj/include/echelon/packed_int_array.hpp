#ifndef ECHELON_PACKED_INT_ARRAY_HPP
#define ECHELON_PACKED_INT_ARRAY_HPP

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include <boost/container/small_vector.hpp>

namespace echelon
{

// Array of small signed integers packed Bits at a time into 64-bit words.
// Slots past size() in the last word are always zero, so two arrays of the
// same length are equal iff their words are.
template <int Bits>
class PackedIntArray
{
    static_assert(Bits == 8 || Bits == 16, "packed width must be 8 or 16 bits");

public:
    using word_type = std::uint64_t;
    static constexpr int bits = Bits;
    static constexpr std::size_t per_word = 64 / Bits;
    static constexpr int min_value = -(1 << (Bits - 1));
    static constexpr int max_value = (1 << (Bits - 1)) - 1;

    PackedIntArray() = default;
    explicit PackedIntArray(std::size_t n) : words_(word_count(n), 0u), size_(static_cast<std::uint32_t>(n)) {}
    PackedIntArray(std::initializer_list<long long> values) : PackedIntArray(values.size())
    {
        std::size_t i = 0;
        for (auto v : values) {
            set(i++, v);
        }
    }
    template <typename Int>
    explicit PackedIntArray(std::span<const Int> values) : PackedIntArray(values.size())
    {
        for (std::size_t i = 0; i < values.size(); ++i) {
            set(i, static_cast<long long>(values[i]));
        }
    }

    static bool fits(long long v)
    {
        return v >= min_value && v <= max_value;
    }

    std::size_t size() const
    {
        return size_;
    }
    bool empty() const
    {
        return size_ == 0;
    }
    std::span<const word_type> words() const
    {
        return {words_.data(), words_.size()};
    }

    int operator[](std::size_t i) const
    {
        const auto raw = (words_[i / per_word] >> shift(i)) & mask;
        // Sign-extend the packed field.
        return static_cast<int>(static_cast<std::int64_t>(raw << (64 - Bits)) >> (64 - Bits));
    }

    // Throws std::overflow_error if v does not fit the packed width.
    void set(std::size_t i, long long v)
    {
        if (!fits(v)) {
            throw std::overflow_error("value " + std::to_string(v) + " does not fit a " + std::to_string(Bits)
                                      + "-bit packed integer");
        }
        auto &w = words_[i / per_word];
        w &= ~(mask << shift(i));
        w |= (static_cast<word_type>(v) & mask) << shift(i);
    }

    bool is_zero() const
    {
        return std::all_of(words_.begin(), words_.end(), [](word_type w) { return w == 0u; });
    }

    std::vector<int> unpack() const
    {
        std::vector<int> out(size_);
        for (std::size_t i = 0; i < size_; ++i) {
            out[i] = (*this)[i];
        }
        return out;
    }

    long long sum() const
    {
        long long s = 0;
        for (std::size_t i = 0; i < size_; ++i) {
            s += (*this)[i];
        }
        return s;
    }

    // Index of the first nonzero element, or size() if there is none.
    std::size_t first_nonzero() const
    {
        for (std::size_t i = 0; i < size_; ++i) {
            if ((*this)[i] != 0) {
                return i;
            }
        }
        return size_;
    }

    friend bool operator==(const PackedIntArray &a, const PackedIntArray &b)
    {
        return a.size_ == b.size_ && std::equal(a.words_.begin(), a.words_.end(), b.words_.begin());
    }

    // Elementwise lexicographic comparison, -1/0/+1.
    friend int lex_compare(const PackedIntArray &a, const PackedIntArray &b)
    {
        const auto n = std::min(a.size(), b.size());
        for (std::size_t i = 0; i < n; ++i) {
            if (a[i] != b[i]) {
                return a[i] < b[i] ? -1 : 1;
            }
        }
        return a.size() == b.size() ? 0 : (a.size() < b.size() ? -1 : 1);
    }

private:
    static constexpr word_type mask = (word_type(1) << Bits) - 1u;

    static std::size_t word_count(std::size_t n)
    {
        return (n + per_word - 1) / per_word;
    }
    static unsigned shift(std::size_t i)
    {
        return static_cast<unsigned>((i % per_word) * Bits);
    }

    boost::container::small_vector<word_type, 1> words_;
    std::uint32_t size_ = 0;
};

enum class VecOp { add, sub };

// Elementwise a +/- b. Throws std::invalid_argument on length mismatch and
// std::overflow_error when a result leaves the packed range.
template <int Bits>
PackedIntArray<Bits> vec_op(const PackedIntArray<Bits> &a, const PackedIntArray<Bits> &b, VecOp op)
{
    if (a.size() != b.size()) {
        throw std::invalid_argument("cannot combine packed arrays of different lengths");
    }
    PackedIntArray<Bits> out(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
        const long long v = op == VecOp::add ? static_cast<long long>(a[i]) + b[i] : static_cast<long long>(a[i]) - b[i];
        out.set(i, v);
    }
    return out;
}

} // namespace echelon

#endif
