#pragma once

// Test-only helpers: random codes and naive per-element reference computations
// that do not go through the packed-word paths under test.

#include "irisdd/codespace.hpp"
#include "irisdd/dataset.hpp"

#include <random>
#include <vector>

namespace irisdd::testing {

inline std::vector<std::uint8_t> random_bits(std::mt19937_64& rng, std::size_t ell) {
    std::vector<std::uint8_t> v(ell);
    for (auto& b : v) b = static_cast<std::uint8_t>(rng() & 1u);
    return v;
}

inline ComparisonCode random_comparison(std::mt19937_64& rng, std::size_t ell) {
    return {BitVector::from_bits(random_bits(rng, ell)), Label::imposter, {0, 0}, {1, 0}};
}

inline ComparisonCode comparison_of(std::vector<std::uint8_t> bits,
                                    Label label = Label::genuine) {
    return {BitVector::from_bits(bits), label, {0, 0}, {0, 1}};
}

inline std::size_t naive_count(const std::vector<std::uint8_t>& bits) {
    std::size_t n = 0;
    for (auto b : bits) n += b;
    return n;
}

// Score by an explicit per-element loop, no sparsity shortcut.
inline double naive_score(const std::vector<std::uint8_t>& bits, const std::vector<double>& w) {
    double num = 0.0;
    double den = 0.0;
    for (std::size_t i = 0; i < w.size(); ++i) {
        num += bits[i] ? w[i] : 0.0;
        den += w[i];
    }
    return num / den;
}

inline Dataset dataset_of(std::size_t ell,
                          std::vector<std::tuple<std::int64_t, std::int64_t, std::vector<std::uint8_t>>> rows) {
    Dataset ds;
    ds.ell = ell;
    for (auto& [id, sample, bits] : rows) ds.codes.emplace_back(BitVector::from_bits(bits), id, sample);
    return ds;
}

}  // namespace irisdd::testing
