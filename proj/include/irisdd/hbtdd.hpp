#pragma once

// Heuristic blind training of discriminant directions.
//
// Every enrolled identity j owns a direction D_j. Training sweeps the comparison
// codes anchored at identity j's samples; whenever a code scores on the wrong
// side of the safety band [t - sb/2, t + sb/2] the direction is corrected
//
//     genuine:  D_j += r*C - r*~C,  sb -= b
//     imposter: D_j -= r*C - r*~C,  sb += b
//
// with sb clamped to [sb_min, sb_max]. An epoch without corrections ends
// training. sb is a single value shared by all identities.

#include "irisdd/dataset.hpp"
#include "irisdd/model.hpp"

#include <cstdint>
#include <functional>
#include <vector>

namespace irisdd {

struct TrainConfig {
    double r = 0.05;
    double b = 0.0005;
    double t0 = 0.5;
    double sb0 = 0.01;
    double sb_min = 0.002;
    double sb_max = 0.2;
    std::size_t max_epochs = 200;
    std::uint64_t seed = 7;

    // Throws ValidationError describing the first violated constraint.
    void validate() const;
};

struct BandEdges {
    double lower;
    double upper;
};

BandEdges band_edges(double t, double sb);

// Binary {0,1} weights, each bit drawn from the seeded engine (64 per draw).
// All-zero directions are redrawn. Identity ids are 0..k-1.
std::vector<DiscriminantDirection> init_directions(std::size_t k, std::size_t ell,
                                                   std::uint64_t seed);

struct UpdateResult {
    DiscriminantDirection direction;
    double sb;
    bool corrected;
};

// One guarded correction against the band centered at cfg.t0.
UpdateResult update_step(const DiscriminantDirection& d, const ComparisonCode& c,
                         const TrainConfig& cfg, double sb);

struct EpochStats {
    std::size_t epoch = 0;  // 1-based
    std::size_t corrections_genuine = 0;
    std::size_t corrections_imposter = 0;
    double sb = 0.0;  // at end of epoch
};

struct TrainOutcome {
    Model model;
    std::vector<EpochStats> log;

    double final_sb() const noexcept { return model.final_sb; }
    std::size_t epochs_used() const noexcept { return model.epochs_used; }
    bool converged() const noexcept { return model.converged; }
};

// Comparison codes the trainer sweeps for one identity, in sweep order: each of
// the identity's samples (ascending) against every other code (ascending).
// `dataset` must be sorted.
std::vector<ComparisonCode> training_comparisons(const Dataset& dataset, std::int64_t identity_id);

using EpochCallback = std::function<void(const EpochStats&)>;

// Reference sequential trainer. Throws ValidationError on an empty dataset and
// DegenerateDirectionError when a direction loses its positive witness projection.
TrainOutcome train(const Dataset& dataset, const TrainConfig& cfg,
                   const EpochCallback& on_epoch = {});

// Non-reference variant: identities train independently on `jobs` threads, each
// with its own copy of sb. The model's final_sb is the smallest per-identity band
// so that it still certifies every identity. Deterministic for a given dataset
// and config; not bit-compatible with train().
TrainOutcome train_parallel(const Dataset& dataset, const TrainConfig& cfg, std::size_t jobs);

void write_training_log(std::ostream& out, const std::vector<EpochStats>& log);

}  // namespace irisdd
