#include "defcalc/multi_index.hpp"

#include <stdexcept>

namespace defcalc {

MultiIndex MultiIndex::from_entries(const std::vector<int>& entries) {
    uint32_t bits = 0;
    int prev = 0;
    for (int e : entries) {
        if (e <= prev)
            throw std::invalid_argument("MultiIndex: entries must be strictly increasing");
        if (e > 32)
            throw std::out_of_range("MultiIndex: axis exceeds 32");
        bits |= 1u << (e - 1);
        prev = e;
    }
    return MultiIndex(bits);
}

std::vector<int> MultiIndex::entries() const {
    std::vector<int> out;
    for (int k = 0; k < 32; ++k)
        if (bits_ & (1u << k))
            out.push_back(k + 1);
    return out;
}

std::pair<int, MultiIndex> MultiIndex::merge(const MultiIndex& other) const {
    if (bits_ & other.bits_)
        return {0, *this};
    // Each entry b of `other` moves left past the entries of `this` that
    // exceed b; parity of the total count is the sign.
    long inversions = 0;
    for (int b : other.entries())
        inversions += size() - position(b);
    int sign = (inversions % 2 == 0) ? 1 : -1;
    return {sign, MultiIndex(bits_ | other.bits_)};
}

bool MultiIndex::lex_less(const MultiIndex& o) const {
    uint32_t a = bits_, b = o.bits_;
    while (a && b) {
        int ea = __builtin_ctz(a), eb = __builtin_ctz(b);
        if (ea != eb)
            return ea < eb;
        a &= a - 1;
        b &= b - 1;
    }
    return a == 0 && b != 0; // proper prefix sorts first
}

std::string MultiIndex::to_string() const {
    std::string out;
    for (int e : entries()) {
        if (!out.empty())
            out += ",";
        out += std::to_string(e);
    }
    return out;
}

std::vector<MultiIndex> multi_indices(int n, int size) {
    std::vector<MultiIndex> out;
    if (size < 0 || size > n)
        return out;
    std::vector<int> comb(size);
    for (int k = 0; k < size; ++k)
        comb[k] = k + 1;
    while (true) {
        out.push_back(MultiIndex::from_entries(comb));
        if (size == 0)
            break;
        int k = size - 1;
        while (k >= 0 && comb[k] == n - (size - 1 - k))
            --k;
        if (k < 0)
            break;
        ++comb[k];
        for (int j = k + 1; j < size; ++j)
            comb[j] = comb[j - 1] + 1;
    }
    return out;
}

} // namespace defcalc
