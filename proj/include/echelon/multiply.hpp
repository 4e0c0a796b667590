#ifndef ECHELON_MULTIPLY_HPP
#define ECHELON_MULTIPLY_HPP

#include <algorithm>
#include <array>
#include <chrono>
#include <cstddef>
#include <cstdint>
#include <new>
#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

#include <echelon/coefficient.hpp>
#include <echelon/kronecker.hpp>
#include <echelon/series.hpp>
#include <echelon/settings.hpp>
#include <echelon/sparse_table.hpp>
#include <echelon/term_set.hpp>

namespace echelon
{

struct MultiplyStats {
    Strategy used = Strategy::plain;
    double multiply_seconds = 0;
    double decode_seconds = 0;
    std::uint64_t term_products = 0;
    std::uint64_t code_bound = 0;
    std::size_t rehashes = 0;
    double fill_at_first_rehash = 0;
};

struct MultiplyOptions {
    Strategy strategy = multiply_settings().strategy;
    std::size_t block = multiply_settings().block;
    // Initial bucket count of the sparse table; 0 picks one from the operand sizes.
    std::size_t sparse_buckets = 0;
    MultiplyStats *stats = nullptr;
};

// Term with its raw code c.e (mod 2^64), not shifted by chi.
template <typename Cf>
struct CodedTerm {
    std::uint64_t code = 0;
    Cf cf{};
    bool cosine = true;
};

// One tile of the blocked double loop: rows [i_begin, i_end) of the first
// operand against columns [j_begin, j_end) of the second.
struct Tile {
    std::size_t i_begin, i_end, j_begin, j_end;

    friend bool operator==(const Tile &, const Tile &) = default;
};

// Row-major tiling of an n1 x n2 product with square blocks.
inline std::vector<Tile> block_schedule(std::size_t n1, std::size_t n2, std::size_t block)
{
    if (block == 0) {
        throw std::invalid_argument("block size must be positive");
    }
    std::vector<Tile> tiles;
    for (std::size_t i = 0; i < n1; i += block) {
        for (std::size_t j = 0; j < n2; j += block) {
            tiles.push_back({i, std::min(n1, i + block), j, std::min(n2, j + block)});
        }
    }
    return tiles;
}

// Product-to-sum rule for flavours (f1, f2): the (k1 - k2) term and the
// (k1 + k2) term, each with a flavour and a sign applied to A*B/2.
struct WernerRule {
    bool diff_cosine;
    bool diff_negative;
    bool sum_cosine;
    bool sum_negative;
};

constexpr WernerRule werner_rule(bool cos1, bool cos2)
{
    if (cos1 && cos2) {
        return {true, false, true, false};
    }
    if (cos1) {
        return {false, true, false, false};
    }
    if (cos2) {
        return {false, false, false, false};
    }
    return {true, false, true, true};
}

template <typename Cf, int Bits>
struct TrigTerm {
    Cf cf;
    TrigKey<Bits> key;
};

// The two terms of (a * k1) * (b * k2), difference first. Keys are returned
// as computed, before canonicalization.
template <NumericCoefficient Cf, int Bits>
std::array<TrigTerm<Cf, Bits>, 2> term_product_trig(const Cf &a, const TrigKey<Bits> &k1, const Cf &b,
                                                    const TrigKey<Bits> &k2)
{
    const auto rule = werner_rule(k1.is_cosine(), k2.is_cosine());
    Cf p = a * b;
    cf_traits<Cf>::halve(p);
    Cf pd = rule.diff_negative ? Cf(-p) : p;
    Cf ps = rule.sum_negative ? Cf(-p) : p;
    return {TrigTerm<Cf, Bits>{std::move(pd), TrigKey<Bits>(key_vec(k1, k2, VecOp::sub), rule.diff_cosine)},
            TrigTerm<Cf, Bits>{std::move(ps), TrigKey<Bits>(key_vec(k1, k2, VecOp::add), rule.sum_cosine)}};
}

template <typename Cf, typename Key>
TermSet<Cf, Key> multiply_terms(const TermSet<Cf, Key> &a, const TermSet<Cf, Key> &b, const MultiplyOptions &opts);

namespace detail
{

using clock = std::chrono::steady_clock;

inline double seconds_since(clock::time_point t0)
{
    return std::chrono::duration<double>(clock::now() - t0).count();
}

template <typename Cf>
void halve_cf(Cf &c)
{
    if constexpr (is_term_set<Cf>::value) {
        c.transform([](auto &inner) { halve_cf(inner); });
    } else {
        cf_traits<Cf>::halve(c);
    }
}

template <typename Cf>
Cf cf_product(const Cf &a, const Cf &b, const MultiplyOptions &opts)
{
    if constexpr (is_term_set<Cf>::value) {
        MultiplyOptions inner = opts;
        inner.stats = nullptr;
        return multiply_terms(a, b, inner);
    } else {
        (void)opts;
        return a * b;
    }
}

// Schoolbook product through the generic term set.
template <typename Cf, typename Key>
TermSet<Cf, Key> plain_multiply(const TermSet<Cf, Key> &a, const TermSet<Cf, Key> &b, const MultiplyOptions &opts)
{
    TermSet<Cf, Key> out;
    for (const auto &[k1, c1] : a) {
        for (const auto &[k2, c2] : b) {
            Cf p = cf_product(c1, c2, opts);
            if constexpr (Key::is_trig) {
                const auto rule = werner_rule(k1.is_cosine(), k2.is_cosine());
                out.insert(Key(key_vec(k1, k2, VecOp::sub), rule.diff_cosine), p, rule.diff_negative ? -1 : 1);
                out.insert(Key(key_vec(k1, k2, VecOp::add), rule.sum_cosine), std::move(p),
                           rule.sum_negative ? -1 : 1);
            } else {
                out.insert(Key(key_vec(k1, k2, VecOp::add)), std::move(p));
            }
        }
    }
    if constexpr (Key::is_trig) {
        out.transform([](Cf &c) { halve_cf(c); });
    }
    return out;
}

template <typename Cf, typename Key>
std::vector<CodedTerm<Cf>> code_terms(const TermSet<Cf, Key> &ts, const KroneckerCodec &codec)
{
    std::vector<CodedTerm<Cf>> out;
    out.reserve(ts.size());
    for (const auto &[k, c] : ts) {
        bool cosine = true;
        if constexpr (Key::is_trig) {
            cosine = k.is_cosine();
        }
        const auto v = k.array().unpack();
        out.push_back({codec.raw(std::span<const int>(v)), c, cosine});
    }
    std::sort(out.begin(), out.end(), [](const CodedTerm<Cf> &x, const CodedTerm<Cf> &y) {
        return x.code != y.code ? x.code < y.code : x.cosine > y.cosine;
    });
    return out;
}

template <typename Cf>
std::array<std::vector<CodedTerm<Cf>>, 2> split_flavours(std::vector<CodedTerm<Cf>> v)
{
    std::array<std::vector<CodedTerm<Cf>>, 2> out;
    for (auto &t : v) {
        out[t.cosine ? 0 : 1].push_back(std::move(t));
    }
    return out;
}

// Accumulates a[i]*b[j] at code(a[i]) + code(b[j]). The first operand's
// codes are pre-shifted by -chi so the sum lands on the product's code.
template <typename Cf, typename Acc>
void poly_kernel(const std::vector<CodedTerm<Cf>> &a, const std::vector<CodedTerm<Cf>> &b, std::uint64_t chi,
                 std::size_t block, Acc &acc)
{
    for (const auto &t : block_schedule(a.size(), b.size(), block)) {
        for (std::size_t i = t.i_begin; i < t.i_end; ++i) {
            const std::uint64_t ci = a[i].code - chi;
            const Cf &ca = a[i].cf;
            for (std::size_t j = t.j_begin; j < t.j_end; ++j) {
                cf_traits<Cf>::fma(acc[ci + b[j].code], ca, b[j].cf);
            }
        }
    }
}

template <bool Negative, typename Cf>
inline void accumulate(Cf &acc, const Cf &a, const Cf &b)
{
    if constexpr (Negative) {
        cf_traits<Cf>::fms(acc, a, b);
    } else {
        cf_traits<Cf>::fma(acc, a, b);
    }
}

// Same loop for one flavour pair of trigonometric operands, writing the
// difference and sum terms (unhalved) into their flavour accumulators.
template <bool DiffNeg, bool SumNeg, typename Cf, typename Acc>
void trig_kernel(const std::vector<CodedTerm<Cf>> &a, const std::vector<CodedTerm<Cf>> &b, std::uint64_t chi,
                 std::size_t block, Acc &diff_acc, Acc &sum_acc)
{
    for (const auto &t : block_schedule(a.size(), b.size(), block)) {
        for (std::size_t i = t.i_begin; i < t.i_end; ++i) {
            const std::uint64_t ci = a[i].code - chi;
            const Cf &ca = a[i].cf;
            for (std::size_t j = t.j_begin; j < t.j_end; ++j) {
                accumulate<DiffNeg>(diff_acc[ci - b[j].code], ca, b[j].cf);
                accumulate<SumNeg>(sum_acc[ci + b[j].code], ca, b[j].cf);
            }
        }
    }
}

template <typename Cf, typename Acc>
void trig_pair(const std::vector<CodedTerm<Cf>> &a, const std::vector<CodedTerm<Cf>> &b, bool cos1, bool cos2,
               std::uint64_t chi, std::size_t block, std::array<Acc, 2> &acc)
{
    if (a.empty() || b.empty()) {
        return;
    }
    const auto r = werner_rule(cos1, cos2);
    Acc &d = acc[r.diff_cosine ? 0 : 1];
    Acc &s = acc[r.sum_cosine ? 0 : 1];
    if (r.diff_negative) {
        trig_kernel<true, false>(a, b, chi, block, d, s);
    } else if (r.sum_negative) {
        trig_kernel<false, true>(a, b, chi, block, d, s);
    } else {
        trig_kernel<false, false>(a, b, chi, block, d, s);
    }
}

template <typename Key>
Key decode_key(const KroneckerCodec &codec, std::uint64_t code, bool cosine)
{
    typename Key::array_type arr(codec.size());
    codec.decode_unchecked(code, [&](std::size_t k, long long v) { arr.set(k, v); });
    if constexpr (Key::is_trig) {
        return Key(std::move(arr), cosine);
    } else {
        (void)cosine;
        return Key(std::move(arr));
    }
}

template <typename Cf, typename Key>
void emit(TermSet<Cf, Key> &out, const KroneckerCodec &codec, std::uint64_t code, Cf cf, bool cosine)
{
    if constexpr (Key::is_trig) {
        cf_traits<Cf>::halve(cf);
    }
    out.insert(decode_key<Key>(codec, code, cosine), std::move(cf));
}

// Product exponents must fit the packed width of the key.
template <typename Key>
void check_width(const KroneckerCodec &codec)
{
    for (std::size_t k = 0; k < codec.size(); ++k) {
        if (!Key::array_type::fits(codec.e_min()[k]) || !Key::array_type::fits(codec.e_max()[k])) {
            throw std::overflow_error("product exponents exceed the " + std::to_string(Key::bits)
                                      + "-bit packed width");
        }
    }
}

template <typename Cf, typename Key, typename Acc>
void run_kernels(const TermSet<Cf, Key> &a, const TermSet<Cf, Key> &b, const KroneckerCodec &codec,
                 std::size_t block, std::array<Acc, 2> &acc)
{
    auto ca = code_terms(a, codec);
    auto cb = code_terms(b, codec);
    if constexpr (Key::is_trig) {
        const auto fa = split_flavours(std::move(ca));
        const auto fb = split_flavours(std::move(cb));
        for (int x = 0; x < 2; ++x) {
            for (int y = 0; y < 2; ++y) {
                trig_pair(fa[x], fb[y], x == 0, y == 0, codec.chi(), block, acc);
            }
        }
    } else {
        poly_kernel(ca, cb, codec.chi(), block, acc[0]);
    }
}

// Perfect hashing over a code range too large for one array: the range is
// swept in windows of fixed size, each accumulated directly by code offset.
// Codes of the second operand are taken relative to its own minimum so that,
// for a fixed first term, sum codes rise and difference codes fall with j;
// binary search then finds the columns landing in the current window, and
// windows without output are skipped.
constexpr std::size_t perfect_window_slots = std::size_t(1) << 20;
// Larger single arrays are swept in windows as well.
constexpr std::uint64_t perfect_max_bytes = std::uint64_t(1) << 30;

template <typename Cf>
struct WindowStream {
    // Output code for row i is offset[i] + sign * rel[j], sign = +1 or -1.
    std::vector<__int128> offset;
    const std::vector<CodedTerm<Cf>> *a = nullptr;
    const std::vector<CodedTerm<Cf>> *b = nullptr;
    std::vector<std::uint64_t> rel;
    bool difference = false;
    bool negative = false;
    int target = 0;
};

template <typename Cf>
std::vector<CodedTerm<Cf>> sort_relative(std::vector<CodedTerm<Cf>> v, std::uint64_t base)
{
    std::sort(v.begin(), v.end(),
              [base](const CodedTerm<Cf> &x, const CodedTerm<Cf> &y) { return x.code - base < y.code - base; });
    return v;
}

template <typename Cf>
void add_stream(std::vector<WindowStream<Cf>> &out, const std::vector<CodedTerm<Cf>> &a,
                const std::vector<CodedTerm<Cf>> &b, std::uint64_t base, std::uint64_t chi, bool difference,
                bool negative, int target)
{
    if (a.empty() || b.empty()) {
        return;
    }
    WindowStream<Cf> w;
    w.a = &a;
    w.b = &b;
    w.difference = difference;
    w.negative = negative;
    w.target = target;
    for (const auto &t : b) {
        w.rel.push_back(t.code - base);
    }
    // Any column gives a valid output code from which the row offset follows.
    for (const auto &t : a) {
        const std::uint64_t ci = t.code - chi;
        const std::uint64_t c0 = difference ? ci - b[0].code : ci + b[0].code;
        w.offset.push_back(difference ? static_cast<__int128>(c0) + w.rel[0]
                                      : static_cast<__int128>(c0) - w.rel[0]);
    }
    out.push_back(std::move(w));
}

// Columns of row i whose output lies in [lo, hi).
template <typename Cf>
std::pair<std::size_t, std::size_t> window_columns(const WindowStream<Cf> &w, std::size_t i, __int128 lo, __int128 hi)
{
    const auto &r = w.rel;
    const __int128 o = w.offset[i];
    const auto lb = [&](__int128 x) {
        return static_cast<std::size_t>(
            std::partition_point(r.begin(), r.end(), [x](std::uint64_t v) { return static_cast<__int128>(v) < x; })
            - r.begin());
    };
    if (w.difference) {
        // o - rel in [lo, hi)  <=>  rel in (o - hi, o - lo]
        return {lb(o - hi + 1), lb(o - lo + 1)};
    }
    return {lb(lo - o), lb(hi - o)};
}

// Smallest output code of the stream that is >= lo, or -1.
template <typename Cf>
__int128 next_output(const WindowStream<Cf> &w, __int128 lo)
{
    __int128 best = -1;
    const __int128 top = static_cast<__int128>(1) << 100;
    for (std::size_t i = 0; i < w.offset.size(); ++i) {
        const auto [j0, j1] = window_columns(w, i, lo, top);
        if (j0 == j1) {
            continue;
        }
        const __int128 c = w.difference ? w.offset[i] - w.rel[j1 - 1] : w.offset[i] + w.rel[j0];
        if (best < 0 || c < best) {
            best = c;
        }
    }
    return best;
}

template <typename Cf, typename Key>
TermSet<Cf, Key> windowed_perfect_multiply(const TermSet<Cf, Key> &a, const TermSet<Cf, Key> &b,
                                           const KroneckerCodec &codec, const MultiplyOptions &opts)
{
    const auto t0 = clock::now();
    double decode = 0;
    std::vector<long long> lo_b(codec.size(), 0);
    bool first = true;
    for (const auto &[k, c] : b) {
        for (std::size_t v = 0; v < codec.size(); ++v) {
            lo_b[v] = first ? k.array()[v] : std::min<long long>(lo_b[v], k.array()[v]);
        }
        first = false;
    }
    const std::uint64_t base = codec.raw(std::span<const long long>(lo_b));
    const std::uint64_t chi = codec.chi();

    std::array<std::vector<CodedTerm<Cf>>, 2> fa, fb;
    if constexpr (Key::is_trig) {
        fa = split_flavours(code_terms(a, codec));
        fb = split_flavours(code_terms(b, codec));
        for (auto &v : fb) {
            v = sort_relative(std::move(v), base);
        }
    } else {
        fa[0] = code_terms(a, codec);
        fb[0] = sort_relative(code_terms(b, codec), base);
    }
    std::vector<WindowStream<Cf>> streams;
    if constexpr (Key::is_trig) {
        for (int x = 0; x < 2; ++x) {
            for (int y = 0; y < 2; ++y) {
                const auto r = werner_rule(x == 0, y == 0);
                add_stream(streams, fa[x], fb[y], base, chi, true, r.diff_negative, r.diff_cosine ? 0 : 1);
                add_stream(streams, fa[x], fb[y], base, chi, false, r.sum_negative, r.sum_cosine ? 0 : 1);
            }
        }
    } else {
        add_stream(streams, fa[0], fb[0], base, chi, false, false, 0);
    }

    const auto width = static_cast<std::size_t>(
        std::clamp<std::uint64_t>(multiply_settings().perfect_max_slots, 1, perfect_window_slots));
    std::array<std::vector<Cf>, 2> acc;
    std::array<std::vector<char>, 2> used;
    std::array<std::vector<std::uint32_t>, 2> touched;
    for (std::size_t f = 0; f < (Key::is_trig ? 2 : 1); ++f) {
        acc[f].resize(width);
        used[f].resize(width);
    }
    TermSet<Cf, Key> out;
    __int128 lo = 0;
    while (true) {
        __int128 next = -1;
        for (const auto &w : streams) {
            const __int128 c = next_output(w, lo);
            if (c >= 0 && (next < 0 || c < next)) {
                next = c;
            }
        }
        if (next < 0) {
            break;
        }
        lo = next;
        const __int128 hi = lo + static_cast<__int128>(width);
        for (const auto &w : streams) {
            auto &dst = acc[w.target];
            auto &mark = used[w.target];
            auto &list = touched[w.target];
            for (std::size_t i = 0; i < w.offset.size(); ++i) {
                const auto [j0, j1] = window_columns(w, i, lo, hi);
                const Cf &ca = (*w.a)[i].cf;
                const __int128 o = w.offset[i] - lo;
                for (std::size_t j = j0; j < j1; ++j) {
                    const auto slot = static_cast<std::size_t>(w.difference ? o - w.rel[j] : o + w.rel[j]);
                    if (!mark[slot]) {
                        mark[slot] = 1;
                        list.push_back(static_cast<std::uint32_t>(slot));
                    }
                    if (w.negative) {
                        cf_traits<Cf>::fms(dst[slot], ca, (*w.b)[j].cf);
                    } else {
                        cf_traits<Cf>::fma(dst[slot], ca, (*w.b)[j].cf);
                    }
                }
            }
        }
        const auto t1 = clock::now();
        for (std::size_t f = 0; f < 2; ++f) {
            auto &v = acc[f];
            std::sort(touched[f].begin(), touched[f].end());
            for (const auto k : touched[f]) {
                if (!is_ignorable(v[k])) {
                    emit(out, codec, static_cast<std::uint64_t>(lo + static_cast<__int128>(k)), std::move(v[k]),
                         f == 0);
                }
                v[k] = Cf{};
                used[f][k] = 0;
            }
            touched[f].clear();
        }
        decode += seconds_since(t1);
        lo = hi;
    }
    if (opts.stats) {
        opts.stats->multiply_seconds = seconds_since(t0) - decode;
        opts.stats->decode_seconds = decode;
    }
    return out;
}

template <typename Cf, typename Key>
TermSet<Cf, Key> perfect_multiply(const TermSet<Cf, Key> &a, const TermSet<Cf, Key> &b, const KroneckerCodec &codec,
                                  const MultiplyOptions &opts)
{
    const std::uint64_t flavours = Key::is_trig ? 2 : 1;
    if (codec.code_bound() > multiply_settings().perfect_max_slots
        || codec.code_bound() > perfect_max_bytes / (sizeof(Cf) * flavours)) {
        return windowed_perfect_multiply(a, b, codec, opts);
    }
    const auto t0 = clock::now();
    const auto bound = static_cast<std::size_t>(codec.code_bound());
    std::array<std::vector<Cf>, 2> acc;
    acc[0].resize(bound);
    if constexpr (Key::is_trig) {
        acc[1].resize(bound);
    }
    run_kernels(a, b, codec, opts.block, acc);
    const auto t1 = clock::now();

    TermSet<Cf, Key> out;
    std::size_t n = 0;
    for (const auto &v : acc) {
        for (const auto &c : v) {
            n += is_ignorable(c) ? 0 : 1;
        }
    }
    out.reserve(n);
    for (std::size_t f = 0; f < 2; ++f) {
        auto &v = acc[f];
        for (std::size_t code = 0; code < v.size(); ++code) {
            if (!is_ignorable(v[code])) {
                emit(out, codec, code, std::move(v[code]), f == 0);
            }
        }
    }
    if (opts.stats) {
        opts.stats->multiply_seconds = std::chrono::duration<double>(t1 - t0).count();
        opts.stats->decode_seconds = seconds_since(t1);
    }
    return out;
}

template <typename Cf, typename Key>
TermSet<Cf, Key> sparse_multiply(const TermSet<Cf, Key> &a, const TermSet<Cf, Key> &b, const KroneckerCodec &codec,
                                 const MultiplyOptions &opts)
{
    const auto t0 = clock::now();
    std::size_t buckets = opts.sparse_buckets;
    if (buckets == 0) {
        buckets = std::max<std::size_t>(16, (a.size() + b.size()) / 4);
    }
    std::array<SparseCodedTable<Cf>, 2> acc{SparseCodedTable<Cf>(buckets),
                                            SparseCodedTable<Cf>(Key::is_trig ? buckets : 2)};
    run_kernels(a, b, codec, opts.block, acc);
    const auto t1 = clock::now();

    TermSet<Cf, Key> out;
    out.reserve(acc[0].size() + acc[1].size());
    for (std::size_t f = 0; f < 2; ++f) {
        acc[f].for_each([&](std::uint64_t code, const Cf &c) {
            if (!is_ignorable(c)) {
                emit(out, codec, code, c, f == 0);
            }
        });
    }
    if (opts.stats) {
        opts.stats->multiply_seconds = std::chrono::duration<double>(t1 - t0).count();
        opts.stats->decode_seconds = seconds_since(t1);
        opts.stats->rehashes = acc[0].rehash_count() + acc[1].rehash_count();
        opts.stats->fill_at_first_rehash = acc[0].fill_at_first_rehash();
    }
    return out;
}

} // namespace detail

// Strategy used by automatic selection for a feasible codec.
inline Strategy choose_strategy(std::uint64_t code_bound, std::size_t n1, std::size_t n2)
{
    const auto &s = multiply_settings();
    const double density = static_cast<double>(n1) * static_cast<double>(n2) / static_cast<double>(code_bound);
    if (code_bound <= s.perfect_max_slots && density >= s.perfect_min_density) {
        return Strategy::perfect;
    }
    return Strategy::sparse;
}

// Product of two term sets on the same layout.
//
// Coded backends need a codec whose codes fit a word; automatic selection
// falls back to plain otherwise, while explicitly requesting perfect or
// sparse then throws std::invalid_argument. Throws
// std::overflow_error when product exponents exceed the packed width.
template <typename Cf, typename Key>
TermSet<Cf, Key> multiply_terms(const TermSet<Cf, Key> &a, const TermSet<Cf, Key> &b, const MultiplyOptions &opts)
{
    if (opts.stats) {
        *opts.stats = MultiplyStats{};
        opts.stats->term_products = static_cast<std::uint64_t>(a.size()) * b.size();
    }
    if (a.empty() || b.empty()) {
        return {};
    }
    // Series coefficients: the outer product is schoolbook, each coefficient
    // product goes back through this function with the same options.
    if constexpr (is_term_set<Cf>::value) {
        const auto t0 = detail::clock::now();
        auto out = detail::plain_multiply(a, b, opts);
        if (opts.stats) {
            opts.stats->used = Strategy::plain;
            opts.stats->multiply_seconds = detail::seconds_since(t0);
        }
        return out;
    }
    Strategy s = opts.strategy;
    std::optional<KroneckerCodec> codec;
    if constexpr (!is_term_set<Cf>::value) {
        if (s != Strategy::plain) {
            codec = build_codec(a, b, Key::is_trig ? CodecMode::trig : CodecMode::poly);
            if (codec) {
                detail::check_width<Key>(*codec);
                if (opts.stats) {
                    opts.stats->code_bound = codec->code_bound();
                }
            }
        }
    }
    if (s == Strategy::automatic) {
        s = codec ? choose_strategy(codec->code_bound(), a.size(), b.size()) : Strategy::plain;
    } else if (s != Strategy::plain && !codec) {
        throw std::invalid_argument(std::string("the ") + to_string(s)
                                    + " strategy needs numeric coefficients and a code range that fits 64 bits");
    }

    if constexpr (!is_term_set<Cf>::value) {
        if (s == Strategy::perfect) {
            auto out = detail::perfect_multiply(a, b, *codec, opts);
            if (opts.stats) {
                opts.stats->used = Strategy::perfect;
            }
            return out;
        }
        if (s == Strategy::sparse) {
            auto out = detail::sparse_multiply(a, b, *codec, opts);
            if (opts.stats) {
                opts.stats->used = Strategy::sparse;
            }
            return out;
        }
    }
    const auto t0 = detail::clock::now();
    auto out = detail::plain_multiply(a, b, opts);
    if (opts.stats) {
        opts.stats->used = Strategy::plain;
        opts.stats->multiply_seconds = detail::seconds_since(t0);
    }
    return out;
}

template <typename Cf, typename Key>
Series<Cf, Key> multiply(const Series<Cf, Key> &a, const Series<Cf, Key> &b, const MultiplyOptions &opts = {})
{
    if (a.args() == b.args()) {
        Series<Cf, Key> out(a.args());
        out.assign_terms(multiply_terms(a.terms(), b.terms(), opts));
        return out;
    }
    const auto m = merge_args(a, b);
    const auto x = a.remapped(m.layout, m.remap1);
    const auto y = b.remapped(m.layout, m.remap2);
    Series<Cf, Key> out(m.layout);
    out.assign_terms(multiply_terms(x.terms(), y.terms(), opts));
    return out;
}

template <typename Cf, typename Key>
Series<Cf, Key> operator*(const Series<Cf, Key> &a, const Series<Cf, Key> &b)
{
    return multiply(a, b);
}

} // namespace echelon

#endif
