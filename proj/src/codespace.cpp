#include "irisdd/codespace.hpp"

#include "irisdd/errors.hpp"

#include <string>

namespace irisdd {

namespace {

std::size_t word_count(std::size_t ell) { return (ell + 63) / 64; }

}  // namespace

BitVector::BitVector(std::size_t ell) : ell_(ell), words_(word_count(ell), 0) {}

BitVector BitVector::from_bits(std::span<const std::uint8_t> bits) {
    BitVector out(bits.size());
    for (std::size_t i = 0; i < bits.size(); ++i) {
        if (bits[i] > 1) {
            throw ValidationError("bit " + std::to_string(i) + " is neither 0 nor 1");
        }
        if (bits[i]) out.words_[i >> 6] |= std::uint64_t{1} << (i & 63);
    }
    return out;
}

void BitVector::set(std::size_t i, bool value) noexcept {
    const std::uint64_t mask = std::uint64_t{1} << (i & 63);
    if (value)
        words_[i >> 6] |= mask;
    else
        words_[i >> 6] &= ~mask;
}

void BitVector::clear_padding() noexcept {
    if (const std::size_t tail = ell_ & 63; tail != 0) {
        words_.back() &= (std::uint64_t{1} << tail) - 1;
    }
}

std::size_t BitVector::popcount() const noexcept {
    std::size_t n = 0;
    for (std::uint64_t w : words_) n += static_cast<std::size_t>(std::popcount(w));
    return n;
}

std::vector<std::uint8_t> BitVector::to_bits() const {
    std::vector<std::uint8_t> out(ell_);
    for (std::size_t i = 0; i < ell_; ++i) out[i] = test(i) ? 1 : 0;
    return out;
}

BitVector equal_bits(const BitVector& a, const BitVector& b) {
    if (a.size() != b.size()) {
        throw DimensionError("code lengths differ: " + std::to_string(a.size()) + " vs " +
                             std::to_string(b.size()));
    }
    BitVector out(a.size());
    auto dst = out.mutable_words();
    auto wa = a.words();
    auto wb = b.words();
    for (std::size_t w = 0; w < dst.size(); ++w) dst[w] = ~(wa[w] ^ wb[w]);
    out.clear_padding();
    return out;
}

IrisCode::IrisCode(BitVector b, std::int64_t identity, std::int64_t sample)
    : bits(std::move(b)), identity_id(identity), sample_id(sample) {
    if (bits.empty()) throw ValidationError("iris code must have at least one bit");
}

const char* to_string(Label label) noexcept {
    return label == Label::genuine ? "genuine" : "imposter";
}

ComparisonCode compare(const IrisCode& a, const IrisCode& b) {
    return ComparisonCode{
        equal_bits(a.bits, b.bits),
        a.identity_id == b.identity_id ? Label::genuine : Label::imposter,
        a.ref(),
        b.ref(),
    };
}

ComparisonCode complement(const ComparisonCode& c) {
    ComparisonCode out = c;
    for (auto& w : out.bits.mutable_words()) w = ~w;
    out.bits.clear_padding();
    return out;
}

double hamming_similarity(const BitVector& bits) {
    return static_cast<double>(bits.popcount()) / static_cast<double>(bits.size());
}

double hamming_similarity(const ComparisonCode& c) { return hamming_similarity(c.bits); }

}  // namespace irisdd
