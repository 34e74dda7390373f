#pragma once

#include <bit>
#include <cstdint>
#include <vector>

namespace sbp {

// Packed vector of n spins in {-1,+1}; bit 1 encodes +1, bit 0 encodes -1.
class BitVec {
public:
    BitVec() = default;
    explicit BitVec(int n) : n_(n), words_((n + 63) / 64, 0) {}

    int size() const { return n_; }

    int sign(int i) const {
        return ((words_[static_cast<size_t>(i) >> 6] >> (i & 63)) & 1) ? +1 : -1;
    }
    bool bit(int i) const {
        return ((words_[static_cast<size_t>(i) >> 6] >> (i & 63)) & 1) != 0;
    }
    void set_bit(int i, bool plus) {
        const uint64_t mask = uint64_t{1} << (i & 63);
        if (plus)
            words_[static_cast<size_t>(i) >> 6] |= mask;
        else
            words_[static_cast<size_t>(i) >> 6] &= ~mask;
    }
    void flip(int i) { words_[static_cast<size_t>(i) >> 6] ^= uint64_t{1} << (i & 63); }

    // Number of +1 entries.
    int popcount() const {
        int c = 0;
        for (uint64_t w : words_) c += std::popcount(w);
        return c;
    }

    // Sum of entries as integers.
    int entry_sum() const { return 2 * popcount() - n_; }

    // Inner product <a, b> over +-1 entries; requires equal sizes.
    friend int dot(const BitVec& a, const BitVec& b) {
        int diff = 0;
        for (size_t w = 0; w < a.words_.size(); ++w)
            diff += std::popcount(a.words_[w] ^ b.words_[w]);
        return a.n_ - 2 * diff;
    }

    friend bool operator==(const BitVec& a, const BitVec& b) = default;

    const std::vector<uint64_t>& words() const { return words_; }
    std::vector<uint64_t>& words() { return words_; }

    // Clears bits above position n-1 (call after bulk word writes).
    void mask_tail() {
        if (n_ % 64 != 0 && !words_.empty())
            words_.back() &= (uint64_t{1} << (n_ % 64)) - 1;
    }

private:
    int n_ = 0;
    std::vector<uint64_t> words_;
};

} // namespace sbp
