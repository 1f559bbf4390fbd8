#pragma once

#include <bit>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <vector>

namespace ofd {

using AttrIndex = std::uint32_t;
using TupleId = std::uint32_t;

/// Canonical set of attribute indices, stored as a 64-bit mask; iteration is
/// always ascending. Relations wider than kMaxAttributes are rejected up front.
class AttrSet {
public:
    static constexpr std::size_t kMaxAttributes = 64;

    constexpr AttrSet() = default;
    AttrSet(std::initializer_list<AttrIndex> attrs) {
        for (AttrIndex a : attrs) bits_ |= bit(a);
    }

    static constexpr AttrSet from_mask(std::uint64_t mask) {
        AttrSet s;
        s.bits_ = mask;
        return s;
    }
    static constexpr AttrSet single(AttrIndex a) { return from_mask(bit(a)); }
    static constexpr AttrSet first_n(std::size_t n) {
        return from_mask(n >= 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << n) - 1);
    }

    constexpr std::uint64_t mask() const noexcept { return bits_; }
    constexpr bool empty() const noexcept { return bits_ == 0; }
    constexpr std::size_t size() const noexcept { return static_cast<std::size_t>(std::popcount(bits_)); }
    constexpr bool contains(AttrIndex a) const noexcept { return (bits_ & bit(a)) != 0; }
    constexpr bool is_subset_of(AttrSet other) const noexcept { return (bits_ & ~other.bits_) == 0; }
    constexpr bool is_proper_subset_of(AttrSet other) const noexcept {
        return is_subset_of(other) && bits_ != other.bits_;
    }

    constexpr AttrSet with(AttrIndex a) const noexcept { return from_mask(bits_ | bit(a)); }
    constexpr AttrSet without(AttrIndex a) const noexcept { return from_mask(bits_ & ~bit(a)); }

    /// Highest attribute index in the set; undefined on an empty set.
    constexpr AttrIndex max() const noexcept { return static_cast<AttrIndex>(63 - std::countl_zero(bits_)); }
    constexpr AttrIndex min() const noexcept { return static_cast<AttrIndex>(std::countr_zero(bits_)); }

    friend constexpr AttrSet operator|(AttrSet a, AttrSet b) noexcept { return from_mask(a.bits_ | b.bits_); }
    friend constexpr AttrSet operator&(AttrSet a, AttrSet b) noexcept { return from_mask(a.bits_ & b.bits_); }
    friend constexpr AttrSet operator-(AttrSet a, AttrSet b) noexcept { return from_mask(a.bits_ & ~b.bits_); }
    AttrSet& operator|=(AttrSet o) noexcept { bits_ |= o.bits_; return *this; }
    AttrSet& operator&=(AttrSet o) noexcept { bits_ &= o.bits_; return *this; }

    friend constexpr bool operator==(AttrSet, AttrSet) = default;

    /// Lexicographic order over the ascending index sequences.
    static bool lex_less(AttrSet a, AttrSet b) noexcept {
        std::uint64_t x = a.bits_, y = b.bits_;
        while (x != 0 && y != 0) {
            int ix = std::countr_zero(x), iy = std::countr_zero(y);
            if (ix != iy) return ix < iy;
            x &= x - 1;
            y &= y - 1;
        }
        return x == 0 && y != 0;
    }

    /// Size first, then lexicographic: the output order for dependencies.
    static bool canonical_less(AttrSet a, AttrSet b) noexcept {
        if (a.size() != b.size()) return a.size() < b.size();
        return lex_less(a, b);
    }

    class iterator {
    public:
        using value_type = AttrIndex;
        using difference_type = std::ptrdiff_t;
        constexpr iterator() = default;
        constexpr explicit iterator(std::uint64_t rest) : rest_(rest) {}
        constexpr AttrIndex operator*() const noexcept { return static_cast<AttrIndex>(std::countr_zero(rest_)); }
        constexpr iterator& operator++() noexcept { rest_ &= rest_ - 1; return *this; }
        constexpr iterator operator++(int) noexcept { auto t = *this; ++*this; return t; }
        friend constexpr bool operator==(iterator, iterator) = default;

    private:
        std::uint64_t rest_ = 0;
    };

    constexpr iterator begin() const noexcept { return iterator(bits_); }
    constexpr iterator end() const noexcept { return iterator(0); }

    std::vector<AttrIndex> to_vector() const { return {begin(), end()}; }

private:
    static constexpr std::uint64_t bit(AttrIndex a) noexcept { return std::uint64_t{1} << a; }

    std::uint64_t bits_ = 0;
};

struct AttrSetHash {
    std::size_t operator()(AttrSet s) const noexcept {
        std::uint64_t x = s.mask();
        x ^= x >> 33;
        x *= 0xff51afd7ed558ccdULL;
        x ^= x >> 33;
        return static_cast<std::size_t>(x);
    }
};

}  // namespace ofd
