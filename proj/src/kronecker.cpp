#include <echelon/kronecker.hpp>

#include <algorithm>
#include <string>

namespace echelon
{

std::optional<KroneckerCodec> KroneckerCodec::from_box(std::vector<long long> e_min, std::vector<long long> e_max)
{
    if (e_min.size() != e_max.size()) {
        throw std::invalid_argument("codec bounds have different lengths");
    }
    KroneckerCodec c;
    c.coding_.resize(e_min.size());
    code_type prod = 1;
    for (std::size_t k = 0; k < e_min.size(); ++k) {
        if (e_max[k] < e_min[k]) {
            throw std::invalid_argument("empty range for variable " + std::to_string(k));
        }
        c.coding_[k] = prod;
        const auto span = static_cast<unsigned __int128>(e_max[k] - e_min[k]) + 1u;
        const auto next = static_cast<unsigned __int128>(prod) * span;
        if (next > static_cast<unsigned __int128>(UINT64_MAX)) {
            return std::nullopt;
        }
        prod = static_cast<code_type>(next);
    }
    c.bound_ = prod;
    c.e_min_ = std::move(e_min);
    c.e_max_ = std::move(e_max);
    c.chi_ = c.raw(std::span<const long long>(c.e_min_));
    return c;
}

std::optional<KroneckerCodec> KroneckerCodec::for_product(std::span<const IndexRange> r1,
                                                          std::span<const IndexRange> r2, CodecMode mode)
{
    if (r1.size() != r2.size()) {
        throw std::invalid_argument("operand ranges have different lengths");
    }
    std::vector<long long> lo(r1.size());
    std::vector<long long> hi(r1.size());
    for (std::size_t k = 0; k < r1.size(); ++k) {
        lo[k] = r1[k].min + r2[k].min;
        hi[k] = r1[k].max + r2[k].max;
        if (mode == CodecMode::trig) {
            lo[k] = std::min(lo[k], r1[k].min - r2[k].max);
            hi[k] = std::max(hi[k], r1[k].max - r2[k].min);
        }
    }
    auto c = from_box(std::move(lo), std::move(hi));
    if (c) {
        c->mode_ = mode;
    }
    return c;
}

void KroneckerCodec::decode(code_type code, std::span<long long> out) const
{
    if (code >= bound_) {
        throw std::out_of_range("code " + std::to_string(code) + " outside the codec bound");
    }
    if (out.size() != size()) {
        throw std::invalid_argument("decode output has the wrong length");
    }
    decode_unchecked(code, [&](std::size_t k, long long v) { out[k] = v; });
}

} // namespace echelon
