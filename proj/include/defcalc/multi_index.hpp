#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace defcalc {

/// Strictly increasing tuple of axis indices in 1..n, stored as a bitmask
/// (bit k-1 set means axis k is present). Signs of wedge reorderings are
/// computed by counting transpositions against the ascending order.
class MultiIndex {
public:
    MultiIndex() : bits_(0) {}
    explicit MultiIndex(uint32_t bits) : bits_(bits) {}

    static MultiIndex empty() { return MultiIndex(); }
    static MultiIndex single(int axis) { return MultiIndex(1u << (axis - 1)); }
    static MultiIndex full(int n) { return MultiIndex(n == 32 ? ~0u : (1u << n) - 1u); }
    static MultiIndex from_entries(const std::vector<int>& entries);

    uint32_t bits() const { return bits_; }
    int size() const { return __builtin_popcount(bits_); }
    bool contains(int axis) const { return bits_ & (1u << (axis - 1)); }
    bool is_empty() const { return bits_ == 0; }

    std::vector<int> entries() const;

    /// Position (0-based) of axis within the ascending entry list.
    int position(int axis) const {
        return __builtin_popcount(bits_ & ((1u << (axis - 1)) - 1u));
    }

    /// Wedge a single generator on the left of this ascending block.
    /// Returns {0, ...} when the axis already occurs; otherwise the sign
    /// is (-1)^(number of present entries smaller than axis).
    std::pair<int, MultiIndex> insert(int axis) const {
        if (contains(axis))
            return {0, *this};
        int sign = (position(axis) % 2 == 0) ? 1 : -1;
        return {sign, MultiIndex(bits_ | (1u << (axis - 1)))};
    }

    /// Remove a generator, with the sign of moving it to the front.
    std::pair<int, MultiIndex> remove(int axis) const {
        if (!contains(axis))
            return {0, *this};
        int sign = (position(axis) % 2 == 0) ? 1 : -1;
        return {sign, MultiIndex(bits_ & ~(1u << (axis - 1)))};
    }

    /// Sign of sorting the concatenation (this, other) into ascending order;
    /// {0, ...} when the blocks intersect.
    std::pair<int, MultiIndex> merge(const MultiIndex& other) const;

    bool operator==(const MultiIndex& o) const { return bits_ == o.bits_; }
    bool operator!=(const MultiIndex& o) const { return bits_ != o.bits_; }

    /// Lexicographic order on ascending entry sequences ({} < {1} < {1,2} < {2}).
    bool lex_less(const MultiIndex& o) const;

    std::string to_string() const; // "1,3"

private:
    uint32_t bits_;
};

/// All ascending index sets of the given size in lexicographic order.
std::vector<MultiIndex> multi_indices(int n, int size);

} // namespace defcalc
