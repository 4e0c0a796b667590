#ifndef ECHELON_SPARSE_TABLE_HPP
#define ECHELON_SPARSE_TABLE_HPP

#include <algorithm>
#include <bit>
#include <cstddef>
#include <cstdint>
#include <utility>
#include <vector>

namespace echelon
{

// Accumulator for (code, coefficient) pairs produced by coded multiplication.
//
// Buckets hold up to `depth` slots each and live, together with the
// overflow buckets appended after them, in one contiguous allocation.
// Codes map to their home bucket by masking with the (power of two) bucket
// count. A full bucket is chained to the next free overflow bucket, so a
// lookup scans the home bucket and then its overflow chain. The table grows
// only once a chain needs extending and no overflow bucket is left. No entry
// is ever removed, so slot counts only grow.
template <typename Cf>
class SparseCodedTable
{
public:
    using code_type = std::uint64_t;
    static constexpr std::size_t depth = 12;

    struct Slot {
        code_type code = 0;
        Cf cf{};
    };

    explicit SparseCodedTable(std::size_t min_buckets = 16)
    {
        allocate(std::bit_ceil(std::max<std::size_t>(min_buckets, 2)));
    }

    // Returns the coefficient slot for code, creating a zero entry if needed.
    Cf &operator[](code_type code)
    {
        while (true) {
            if (Cf *p = locate(code)) {
                return *p;
            }
            grow();
        }
    }

    std::size_t size() const
    {
        return size_;
    }
    std::size_t bucket_count() const
    {
        return n_buckets_;
    }
    std::size_t overflow_bucket_count() const
    {
        return n_over_;
    }
    // Overflow buckets handed out to chains.
    std::size_t overflow_used() const
    {
        return over_used_;
    }
    std::size_t rehash_count() const
    {
        return rehashes_;
    }
    // size() / main-area capacity when the first rehash was triggered, or
    // 0 if the table never grew.
    double fill_at_first_rehash() const
    {
        return first_fill_;
    }
    // Slots of main and overflow area, in one block.
    const Slot *data() const
    {
        return slots_.data();
    }
    std::size_t capacity() const
    {
        return slots_.size();
    }

    template <typename F>
    void for_each(F &&f) const
    {
        for (std::size_t b = 0; b < n_buckets_ + n_over_; ++b) {
            const Slot *base = slots_.data() + b * depth;
            for (std::size_t i = 0; i < counts_[b]; ++i) {
                f(base[i].code, base[i].cf);
            }
        }
    }

private:
    void allocate(std::size_t n)
    {
        n_buckets_ = n;
        mask_ = n - 1;
        n_over_ = std::max<std::size_t>(1, n / 64);
        over_used_ = 0;
        slots_.assign((n_buckets_ + n_over_) * depth, Slot{});
        counts_.assign(n_buckets_ + n_over_, 0);
        next_.assign(n_buckets_ + n_over_, 0);
        size_ = 0;
    }

    Cf *append(std::size_t b, code_type code)
    {
        Slot &s = slots_[b * depth + counts_[b]];
        s.code = code;
        ++counts_[b];
        ++size_;
        return &s.cf;
    }

    Cf *locate(code_type code)
    {
        auto b = static_cast<std::size_t>(code & mask_);
        while (true) {
            Slot *base = slots_.data() + b * depth;
            const std::size_t n = counts_[b];
            for (std::size_t i = 0; i < n; ++i) {
                if (base[i].code == code) {
                    return &base[i].cf;
                }
            }
            if (n < depth) {
                return append(b, code);
            }
            if (next_[b] != 0) {
                b = next_[b];
                continue;
            }
            if (over_used_ == n_over_) {
                return nullptr;
            }
            const std::size_t o = n_buckets_ + over_used_++;
            next_[b] = static_cast<std::uint32_t>(o);
            return append(o, code);
        }
    }

    void grow()
    {
        if (rehashes_ == 0) {
            first_fill_ = static_cast<double>(size_) / static_cast<double>(n_buckets_ * depth);
        }
        std::size_t n = n_buckets_ * 2;
        while (true) {
            SparseCodedTable next(n);
            bool ok = true;
            for_each([&](code_type code, const Cf &cf) {
                if (!ok) {
                    return;
                }
                if (Cf *p = next.locate(code)) {
                    *p = cf;
                } else {
                    ok = false;
                }
            });
            if (ok) {
                slots_ = std::move(next.slots_);
                counts_ = std::move(next.counts_);
                n_buckets_ = next.n_buckets_;
                next_ = std::move(next.next_);
                mask_ = next.mask_;
                n_over_ = next.n_over_;
                over_used_ = next.over_used_;
                size_ = next.size_;
                ++rehashes_;
                return;
            }
            n *= 2;
        }
    }

    std::vector<Slot> slots_;
    std::vector<unsigned char> counts_;
    // Overflow bucket chained after each bucket, 0 for none.
    std::vector<std::uint32_t> next_;
    std::size_t n_buckets_ = 0;
    std::size_t mask_ = 0;
    std::size_t n_over_ = 0;
    std::size_t over_used_ = 0;
    std::size_t size_ = 0;
    std::size_t rehashes_ = 0;
    double first_fill_ = 0;
};

} // namespace echelon

#endif
