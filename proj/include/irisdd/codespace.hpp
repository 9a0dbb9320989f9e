#pragma once

// Binary iris codes, comparison codes and plain Hamming similarity.

#include <bit>
#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace irisdd {

// Fixed-length bit vector packed into 64-bit words. Bit i lives in word i/64 at
// position i%64. Padding bits past size() are always zero.
class BitVector {
public:
    BitVector() = default;
    explicit BitVector(std::size_t ell);

    // Each element must be 0 or 1.
    static BitVector from_bits(std::span<const std::uint8_t> bits);

    std::size_t size() const noexcept { return ell_; }
    bool empty() const noexcept { return ell_ == 0; }

    bool test(std::size_t i) const noexcept { return (words_[i >> 6] >> (i & 63)) & 1u; }
    void set(std::size_t i, bool value) noexcept;
    void flip(std::size_t i) noexcept { words_[i >> 6] ^= std::uint64_t{1} << (i & 63); }

    std::span<const std::uint64_t> words() const noexcept { return words_; }
    // Raw word access for generators; callers must keep padding zero (see clear_padding).
    std::span<std::uint64_t> mutable_words() noexcept { return words_; }
    void clear_padding() noexcept;

    std::size_t popcount() const noexcept;
    std::vector<std::uint8_t> to_bits() const;

    // Calls f(i) for every set bit, ascending.
    template <class F>
    void for_each_set_bit(F&& f) const {
        for (std::size_t w = 0; w < words_.size(); ++w) {
            std::uint64_t word = words_[w];
            while (word) {
                f(w * 64 + static_cast<std::size_t>(std::countr_zero(word)));
                word &= word - 1;
            }
        }
    }

    friend bool operator==(const BitVector&, const BitVector&) = default;

private:
    std::size_t ell_ = 0;
    std::vector<std::uint64_t> words_;
};

// Agreement mask: bit i set iff a[i] == b[i]. Lengths must match.
BitVector equal_bits(const BitVector& a, const BitVector& b);

struct SampleRef {
    std::int64_t identity_id = 0;
    std::int64_t sample_id = 0;

    friend auto operator<=>(const SampleRef&, const SampleRef&) = default;
};

struct IrisCode {
    BitVector bits;
    std::int64_t identity_id = 0;
    std::int64_t sample_id = 0;

    // Throws ValidationError when bits is empty.
    IrisCode(BitVector bits, std::int64_t identity_id, std::int64_t sample_id);

    SampleRef ref() const noexcept { return {identity_id, sample_id}; }
    std::size_t ell() const noexcept { return bits.size(); }
};

enum class Label : std::uint8_t { genuine, imposter };

const char* to_string(Label label) noexcept;

struct ComparisonCode {
    BitVector bits;
    Label label = Label::imposter;
    SampleRef left;
    SampleRef right;

    std::size_t ell() const noexcept { return bits.size(); }
};

// Throws DimensionError on length mismatch.
ComparisonCode compare(const IrisCode& a, const IrisCode& b);

ComparisonCode complement(const ComparisonCode& c);

// Fraction of agreeing bits, popcount / ell.
double hamming_similarity(const ComparisonCode& c);
double hamming_similarity(const BitVector& bits);

}  // namespace irisdd
