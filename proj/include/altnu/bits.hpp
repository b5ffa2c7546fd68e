#pragma once

#include <array>
#include <bit>
#include <cstddef>
#include <cstdint>
#include <functional>

namespace altnu {

// Fixed-width bit set with the handful of operations the tree and complex
// code needs. Wd is the number of 64-bit words.
template <std::size_t Wd>
struct WordMask {
    std::array<std::uint64_t, Wd> w{};

    static constexpr int capacity() { return static_cast<int>(64 * Wd); }

    void set(int i) { w[i >> 6] |= std::uint64_t{1} << (i & 63); }
    void reset(int i) { w[i >> 6] &= ~(std::uint64_t{1} << (i & 63)); }
    bool test(int i) const { return (w[i >> 6] >> (i & 63)) & 1u; }

    bool any() const {
        for (auto x : w)
            if (x) return true;
        return false;
    }
    bool none() const { return !any(); }
    int count() const {
        int c = 0;
        for (auto x : w) c += std::popcount(x);
        return c;
    }

    // Lowest set index >= from, or -1.
    int next(int from) const {
        if (from >= capacity()) return -1;
        std::size_t k = static_cast<std::size_t>(from) >> 6;
        std::uint64_t cur = w[k] & (~std::uint64_t{0} << (from & 63));
        while (true) {
            if (cur) return static_cast<int>(k * 64 + std::countr_zero(cur));
            if (++k == Wd) return -1;
            cur = w[k];
        }
    }
    int first() const { return next(0); }

    // Highest set index < before, or -1.
    int prev(int before) const {
        if (before <= 0) return -1;
        int k = (before - 1) >> 6;
        std::uint64_t cur = w[k] & (~std::uint64_t{0} >> (63 - ((before - 1) & 63)));
        while (true) {
            if (cur) return k * 64 + 63 - std::countl_zero(cur);
            if (--k < 0) return -1;
            cur = w[k];
        }
    }

    // Any bit set in the closed range [lo, hi]?
    bool any_in(int lo, int hi) const {
        if (lo > hi) return false;
        int a = lo >> 6, b = hi >> 6;
        for (int k = a; k <= b; ++k) {
            std::uint64_t m = ~std::uint64_t{0};
            if (k == a) m &= ~std::uint64_t{0} << (lo & 63);
            if (k == b) m &= ~std::uint64_t{0} >> (63 - (hi & 63));
            if (w[k] & m) return true;
        }
        return false;
    }

    // f(i) for every set index, ascending.
    template <class F>
    void for_each(F&& f) const {
        for (std::size_t k = 0; k < Wd; ++k)
            for (std::uint64_t x = w[k]; x; x &= x - 1) f(static_cast<int>(k * 64 + std::countr_zero(x)));
    }

    bool intersects(const WordMask& o) const {
        for (std::size_t k = 0; k < Wd; ++k)
            if (w[k] & o.w[k]) return true;
        return false;
    }

    WordMask& operator|=(const WordMask& o) {
        for (std::size_t k = 0; k < Wd; ++k) w[k] |= o.w[k];
        return *this;
    }
    WordMask& operator&=(const WordMask& o) {
        for (std::size_t k = 0; k < Wd; ++k) w[k] &= o.w[k];
        return *this;
    }
    WordMask operator|(const WordMask& o) const { return WordMask(*this) |= o; }
    WordMask operator&(const WordMask& o) const { return WordMask(*this) &= o; }
    WordMask operator~() const {
        WordMask r;
        for (std::size_t k = 0; k < Wd; ++k) r.w[k] = ~w[k];
        return r;
    }
    friend bool operator==(const WordMask& a, const WordMask& b) {
        std::uint64_t d = 0;
        for (std::size_t k = 0; k < Wd; ++k) d |= a.w[k] ^ b.w[k];
        return d == 0;
    }
    friend auto operator<=>(const WordMask& a, const WordMask& b) {
        // most significant word first, so the order is numeric
        for (std::size_t k = Wd; k-- > 0;)
            if (a.w[k] != b.w[k]) return a.w[k] <=> b.w[k];
        return std::strong_ordering::equal;
    }

    std::size_t hash() const {
        std::uint64_t h = 0x9e3779b97f4a7c15ull;
        for (auto x : w) {
            h ^= x + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
            h *= 0xff51afd7ed558ccdull;
        }
        return static_cast<std::size_t>(h ^ (h >> 33));
    }
};

template <std::size_t Wd>
struct WordMaskHash {
    std::size_t operator()(const WordMask<Wd>& m) const { return m.hash(); }
};

inline int popcount64(std::uint64_t x) { return std::popcount(x); }

}  // namespace altnu
