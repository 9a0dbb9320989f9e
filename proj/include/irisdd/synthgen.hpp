#pragma once

// Synthetic personal clusters: every identity has a uniformly random centroid
// code and each of its samples is the centroid with every bit flipped
// independently with probability p_intra.
//
// Draw order from one seeded mt19937_64 stream:
//   1. centroids, identity-major, one 64-bit draw per code word;
//   2. samples, identity-major then sample-major, one uniform draw per bit;
//   3. train/test split, identity-major, a Fisher-Yates shuffle per identity.

#include "irisdd/dataset.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace irisdd {

inline constexpr const char* synthgen_version = "irisdd-synthgen/1";

struct SynthConfig {
    std::size_t k = 50;
    std::size_t samples_per_identity = 20;
    std::size_t ell = 4096;
    double p_intra = 0.05;
    std::size_t train_per_identity = 5;
    std::uint64_t seed = 7;

    void validate() const;

    // Overlapping-cluster variant.
    static SynthConfig hard_mode() {
        SynthConfig c;
        c.p_intra = 0.15;
        return c;
    }
};

struct SynthDataset {
    Dataset train;
    Dataset test;
    std::vector<IrisCode> centroids;  // sample_id 0, identity ascending

    // Raw Hamming extremes over all generated codes.
    double min_genuine_hamming = 0.0;
    double max_imposter_hamming = 0.0;
    bool hamming_separable() const noexcept { return min_genuine_hamming > max_imposter_hamming; }
};

SynthDataset generate(const SynthConfig& cfg);

// Sidecar metadata: generator version, full config and the Hamming extremes.
std::string synth_metadata_json(const SynthConfig& cfg, const SynthDataset& data);

}  // namespace irisdd
