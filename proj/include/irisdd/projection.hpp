#pragma once

// Scoring comparison codes by projection onto discriminant directions.
//
// A comparison code C is scored through a direction D as
//
//     S(C) = (C . D) / (W . D)
//
// where W is the witness direction. Only the trivial witness (all ones, the main
// diagonal of the unit hypercube) is implemented, so W . D is the weight sum.
// With D = W the score reduces to the Hamming similarity of C.

#include "irisdd/codespace.hpp"

#include <cstdint>
#include <span>
#include <vector>

namespace irisdd {

enum class WitnessKind : std::uint8_t { trivial };

struct WitnessDirection {
    WitnessKind kind = WitnessKind::trivial;
    std::size_t ell = 0;

    static WitnessDirection trivial(std::size_t ell) { return {WitnessKind::trivial, ell}; }
};

struct DiscriminantDirection {
    std::vector<double> weights;
    std::int64_t identity_id = 0;

    std::size_t ell() const noexcept { return weights.size(); }

    // All-ones direction; scores with it equal Hamming similarity.
    static DiscriminantDirection trivial(std::size_t ell, std::int64_t identity_id = 0);
};

// Below this |W . D| a direction cannot score.
inline constexpr double degenerate_threshold = 1e-12;

// C . D accumulated in index order over the set bits of C.
double dot(const BitVector& bits, std::span<const double> weights);

// W . D for the trivial witness: sum of weights in index order.
double witness_dot(std::span<const double> weights);

double euclidean_norm(std::span<const double> weights);

// Raw (unclamped) projection score. Throws DimensionError on length mismatch and
// DegenerateDirectionError when |W . D| < degenerate_threshold or W . D <= 0.
double projection_score(const ComparisonCode& c, const DiscriminantDirection& d,
                        const WitnessDirection& w);
double projection_score(const BitVector& c, const DiscriminantDirection& d,
                        const WitnessDirection& w);

struct Theorem1Pair {
    double hamming;    // popcount / ell
    double projected;  // C^D / sqrt(ell) with D = W = ones
};

// Hamming similarity alongside the same quantity computed as a projection onto
// the hypercube diagonal. The two values agree to rounding.
Theorem1Pair theorem1_check(const ComparisonCode& c);

double clamp_unit(double score) noexcept;

struct RecognitionVector {
    std::vector<double> components;
    double norm = 0.0;
};

// clamp(S(C), 0, 1) * D / ||D||. The norm equals the clamped score.
RecognitionVector recognition_map(const ComparisonCode& c, const DiscriminantDirection& d,
                                  const WitnessDirection& w);

// Radii of the recognition map for one identity: imposters should land strictly
// inside the sphere on which the weakest genuine lies.
struct SphereCheck {
    std::int64_t identity_id = 0;
    double imposter_radius = 0.0;  // max ||R|| over imposter codes
    double genuine_radius = 0.0;   // min ||R|| over genuine codes
    std::size_t n_genuine = 0;
    std::size_t n_imposter = 0;
    bool holds = false;
};

SphereCheck hypersphere_check(std::span<const ComparisonCode> codes,
                              const DiscriminantDirection& d);

}  // namespace irisdd
