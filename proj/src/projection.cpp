#include "irisdd/projection.hpp"

#include "irisdd/errors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

namespace irisdd {

namespace {

void check_lengths(std::size_t code, std::size_t direction, std::size_t witness) {
    if (code != direction || code != witness) {
        throw DimensionError("length mismatch: code " + std::to_string(code) + ", direction " +
                             std::to_string(direction) + ", witness " + std::to_string(witness));
    }
}

}  // namespace

DiscriminantDirection DiscriminantDirection::trivial(std::size_t ell, std::int64_t identity_id) {
    return {std::vector<double>(ell, 1.0), identity_id};
}

double dot(const BitVector& bits, std::span<const double> weights) {
    double sum = 0.0;
    bits.for_each_set_bit([&](std::size_t i) { sum += weights[i]; });
    return sum;
}

double witness_dot(std::span<const double> weights) {
    double sum = 0.0;
    for (double w : weights) sum += w;
    return sum;
}

double euclidean_norm(std::span<const double> weights) {
    double sum = 0.0;
    for (double w : weights) sum += w * w;
    return std::sqrt(sum);
}

double projection_score(const BitVector& c, const DiscriminantDirection& d,
                        const WitnessDirection& w) {
    check_lengths(c.size(), d.ell(), w.ell);
    const double denom = witness_dot(d.weights);
    if (!(denom > 0.0) || std::abs(denom) < degenerate_threshold) {
        throw DegenerateDirectionError(
            "direction of identity " + std::to_string(d.identity_id) +
                " has non-positive witness projection " + std::to_string(denom),
            d.identity_id);
    }
    return dot(c, d.weights) / denom;
}

double projection_score(const ComparisonCode& c, const DiscriminantDirection& d,
                        const WitnessDirection& w) {
    return projection_score(c.bits, d, w);
}

Theorem1Pair theorem1_check(const ComparisonCode& c) {
    const double ell = static_cast<double>(c.ell());
    const double root = std::sqrt(ell);
    // Projection lengths onto the unit diagonal D/||D||, ||D|| = sqrt(ell).
    double c_dot_d = 0.0;
    c.bits.for_each_set_bit([&](std::size_t) { c_dot_d += 1.0; });
    const double c_on_d = c_dot_d / root;
    return {hamming_similarity(c), c_on_d / root};
}

double clamp_unit(double score) noexcept { return std::clamp(score, 0.0, 1.0); }

RecognitionVector recognition_map(const ComparisonCode& c, const DiscriminantDirection& d,
                                  const WitnessDirection& w) {
    const double norm = euclidean_norm(d.weights);
    if (!(norm > 0.0)) {
        throw DegenerateDirectionError(
            "direction of identity " + std::to_string(d.identity_id) + " has zero norm",
            d.identity_id);
    }
    const double s = clamp_unit(projection_score(c, d, w));
    RecognitionVector out;
    out.components.resize(d.ell());
    for (std::size_t i = 0; i < d.ell(); ++i) out.components[i] = s * (d.weights[i] / norm);
    out.norm = s;
    return out;
}

SphereCheck hypersphere_check(std::span<const ComparisonCode> codes,
                              const DiscriminantDirection& d) {
    SphereCheck out;
    out.identity_id = d.identity_id;
    out.genuine_radius = std::numeric_limits<double>::infinity();
    const auto w = WitnessDirection::trivial(d.ell());
    for (const auto& c : codes) {
        const double r = recognition_map(c, d, w).norm;
        if (c.label == Label::genuine) {
            out.genuine_radius = std::min(out.genuine_radius, r);
            ++out.n_genuine;
        } else {
            out.imposter_radius = std::max(out.imposter_radius, r);
            ++out.n_imposter;
        }
    }
    out.holds = out.n_genuine > 0 && out.n_imposter > 0 && out.imposter_radius < out.genuine_radius;
    return out;
}

}  // namespace irisdd
