#pragma once

#include <bit>
#include <cstddef>
#include <cstdint>
#include <vector>

namespace endolat {

/// Square boolean matrix stored as packed 64-bit rows.
///
/// Rows are the unit of work: closure, subset tests and intersections
/// all run word-at-a-time, which is what keeps O(n^3) order checks
/// usable for universes of a few thousand elements.
class BitMatrix {
public:
    using word = std::uint64_t;
    static constexpr std::size_t word_bits = 64;

    BitMatrix() = default;
    explicit BitMatrix(std::size_t n)
        : n_(n), words_((n + word_bits - 1) / word_bits), bits_(n * words_, 0) {}

    std::size_t size() const noexcept { return n_; }
    std::size_t words_per_row() const noexcept { return words_; }

    bool test(std::size_t r, std::size_t c) const noexcept {
        return (bits_[r * words_ + c / word_bits] >> (c % word_bits)) & 1u;
    }
    void set(std::size_t r, std::size_t c, bool v = true) noexcept {
        word& w = bits_[r * words_ + c / word_bits];
        word const mask = word{1} << (c % word_bits);
        w = v ? (w | mask) : (w & ~mask);
    }

    word const* row(std::size_t r) const noexcept { return bits_.data() + r * words_; }
    word* row(std::size_t r) noexcept { return bits_.data() + r * words_; }

    // row(dst) |= row(src); returns true if dst changed.
    bool or_row(std::size_t dst, std::size_t src) noexcept {
        return or_into(row(dst), row(src));
    }
    bool or_into(word* dst, word const* src) const noexcept {
        bool changed = false;
        for (std::size_t i = 0; i < words_; ++i) {
            word const merged = dst[i] | src[i];
            changed |= merged != dst[i];
            dst[i] = merged;
        }
        return changed;
    }

    // (a & b) ⊆ c, all given as rows of this width.
    bool and_subset_of(word const* a, word const* b, word const* c) const noexcept {
        for (std::size_t i = 0; i < words_; ++i)
            if ((a[i] & b[i]) & ~c[i]) return false;
        return true;
    }
    bool subset_of(word const* a, word const* b) const noexcept {
        for (std::size_t i = 0; i < words_; ++i)
            if (a[i] & ~b[i]) return false;
        return true;
    }

    std::size_t row_count(std::size_t r) const noexcept {
        std::size_t total = 0;
        for (std::size_t i = 0; i < words_; ++i) total += std::popcount(row(r)[i]);
        return total;
    }

    template <typename Fn>
    void for_each_in_row(std::size_t r, Fn&& fn) const {
        word const* p = row(r);
        for (std::size_t i = 0; i < words_; ++i) {
            word w = p[i];
            while (w) {
                fn(i * word_bits + static_cast<std::size_t>(std::countr_zero(w)));
                w &= w - 1;
            }
        }
    }

    bool operator==(BitMatrix const&) const = default;

private:
    std::size_t n_ = 0;
    std::size_t words_ = 0;
    std::vector<word> bits_;
};

} // namespace endolat
