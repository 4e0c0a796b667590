#ifndef ECHELON_KRONECKER_HPP
#define ECHELON_KRONECKER_HPP

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <optional>
#include <span>
#include <stdexcept>
#include <vector>

namespace echelon
{

enum class CodecMode { poly, trig };

struct IndexRange {
    long long min = 0;
    long long max = 0;

    friend bool operator==(const IndexRange &, const IndexRange &) = default;
};

// Generalized Kronecker substitution over the box [e_min, e_max]: variable
// k has c_k = 1 + e_max[k] - e_min[k] values, the coding vector is
// (1, c_0, c_0 c_1, ...) and code(e) = c.e - chi with chi = c.e_min.
//
// All code arithmetic is done modulo 2^64. Since every in-box code lies in
// [0, code_bound) with code_bound < 2^64, sums and differences of raw codes
// land on the exact code of the summed/subtracted multiindex whenever that
// multiindex is inside the box, regardless of intermediate wraparound.
class KroneckerCodec
{
public:
    using code_type = std::uint64_t;

    // std::nullopt when prod(c_k) does not fit a 64-bit word.
    // Throws std::invalid_argument when e_max[k] < e_min[k].
    static std::optional<KroneckerCodec> from_box(std::vector<long long> e_min, std::vector<long long> e_max);

    // Codec for the result of multiplying operands with per-variable ranges
    // r1 and r2. Poly mode covers r1 + r2; trig mode also covers r1 - r2.
    static std::optional<KroneckerCodec> for_product(std::span<const IndexRange> r1, std::span<const IndexRange> r2,
                                                     CodecMode mode);

    std::size_t size() const
    {
        return e_min_.size();
    }
    CodecMode mode() const
    {
        return mode_;
    }
    bool subtraction_enabled() const
    {
        return mode_ == CodecMode::trig;
    }
    const std::vector<long long> &e_min() const
    {
        return e_min_;
    }
    const std::vector<long long> &e_max() const
    {
        return e_max_;
    }
    const std::vector<code_type> &coding_vector() const
    {
        return coding_;
    }
    // c.e_min, modulo 2^64.
    code_type chi() const
    {
        return chi_;
    }
    // Number of distinct codes, prod(c_k).
    code_type code_bound() const
    {
        return bound_;
    }

    template <typename Int>
    bool contains(std::span<const Int> e) const
    {
        if (e.size() != size()) {
            return false;
        }
        for (std::size_t k = 0; k < e.size(); ++k) {
            const auto v = static_cast<long long>(e[k]);
            if (v < e_min_[k] || v > e_max_[k]) {
                return false;
            }
        }
        return true;
    }

    // c.e modulo 2^64, without range checks.
    template <typename Int>
    code_type raw(std::span<const Int> e) const
    {
        code_type acc = 0;
        for (std::size_t k = 0; k < e.size(); ++k) {
            acc += coding_[k] * static_cast<code_type>(static_cast<long long>(e[k]));
        }
        return acc;
    }

    // Throws std::out_of_range outside the box.
    template <typename Int>
    code_type encode(std::span<const Int> e) const
    {
        if (!contains(e)) {
            throw std::out_of_range("multiindex outside the codec box");
        }
        return raw(e) - chi_;
    }
    code_type encode(std::initializer_list<long long> e) const
    {
        return encode(std::span<const long long>(e.begin(), e.size()));
    }

    // Throws std::out_of_range when code >= code_bound().
    void decode(code_type code, std::span<long long> out) const;
    std::vector<long long> decode(code_type code) const
    {
        std::vector<long long> out(size());
        decode(code, out);
        return out;
    }

    // Decoding without the bound check, for the multiplication kernels.
    template <typename F>
    void decode_unchecked(code_type code, F &&emit) const
    {
        const std::size_t m = size();
        for (std::size_t k = 0; k + 1 < m; ++k) {
            const code_type ck = static_cast<code_type>(e_max_[k] - e_min_[k]) + 1u;
            emit(k, e_min_[k] + static_cast<long long>(code % ck));
            code /= ck;
        }
        if (m > 0) {
            emit(m - 1, e_min_[m - 1] + static_cast<long long>(code));
        }
    }

private:
    KroneckerCodec() = default;

    std::vector<long long> e_min_;
    std::vector<long long> e_max_;
    std::vector<code_type> coding_;
    code_type chi_ = 0;
    code_type bound_ = 1;
    CodecMode mode_ = CodecMode::poly;
};

// Per-variable extrema of the key vectors in a term set.
// Throws std::invalid_argument for an empty set.
template <typename TS>
std::vector<IndexRange> key_ranges(const TS &ts)
{
    if (ts.empty()) {
        throw std::invalid_argument("cannot compute key ranges of an empty series");
    }
    std::vector<IndexRange> r;
    bool first = true;
    for (const auto &[k, c] : ts) {
        if (first) {
            r.resize(k.size());
            for (std::size_t i = 0; i < k.size(); ++i) {
                r[i] = {k[i], k[i]};
            }
            first = false;
            continue;
        }
        for (std::size_t i = 0; i < k.size(); ++i) {
            r[i].min = std::min<long long>(r[i].min, k[i]);
            r[i].max = std::max<long long>(r[i].max, k[i]);
        }
    }
    return r;
}

// Codec covering every product of terms of s1 and s2 (both echelon-0 term
// sets on the same layout). std::nullopt when the codes do not fit a word.
template <typename TS>
std::optional<KroneckerCodec> build_codec(const TS &s1, const TS &s2, CodecMode mode)
{
    const auto r1 = key_ranges(s1);
    const auto r2 = key_ranges(s2);
    if (r1.size() != r2.size()) {
        throw std::invalid_argument("cannot build a codec for series with different argument counts");
    }
    return KroneckerCodec::for_product(r1, r2, mode);
}

} // namespace echelon

#endif
