#pragma once

// All-to-all scoring and the separation statistics built on it: score extrema
// and gap, the f-EER interval, fixed-bin histograms, crisp safety rates, the
// fuzzy three-way (f0 / fu / f1) partition and per-sample friend/enemy margins.
//
// Every statistic is taken over clamped scores, which live in [0, 1]. Raw score
// extremes are kept alongside for diagnostics.

#include "irisdd/dataset.hpp"
#include "irisdd/model.hpp"

#include <array>
#include <optional>
#include <string>
#include <vector>

namespace irisdd {

enum class ScorerKind : std::uint8_t { hamming_baseline, discriminant };

const char* to_string(ScorerKind kind) noexcept;

struct ScoreEntry {
    SampleRef left;
    SampleRef right;
    Label label = Label::imposter;
    double raw = 0.0;
    double clamped = 0.0;
};

struct ScoreTable {
    ScorerKind scorer = ScorerKind::hamming_baseline;
    std::size_t dataset_codes = 0;  // size of the scored dataset
    std::vector<ScoreEntry> entries;

    // Builds an entry, clamping the raw score.
    void add(SampleRef left, SampleRef right, Label label, double raw);
};

// Without a model every unordered pair is scored once by Hamming similarity.
// With a model each code anchors comparisons against every other code, scored
// through its own identity's direction (ordered pairs, self-pairs excluded).
// `jobs` > 1 splits scoring across threads; output order is fixed.
// Throws ValidationError naming the identity when an anchor has no direction,
// DimensionError when model and dataset lengths differ.
ScoreTable score_all(const Dataset& dataset, const Model* model, std::size_t jobs = 1);

inline constexpr std::size_t histogram_bins = 101;

// Bin b covers [b/100, (b+1)/100); the last bin holds exactly 1.0.
std::size_t histogram_bin(double clamped_score) noexcept;
double histogram_bin_lower(std::size_t bin) noexcept;

struct Interval {
    double lo = 0.0;
    double hi = 0.0;
};

struct SeparationReport {
    ScorerKind scorer = ScorerKind::hamming_baseline;
    std::size_t dataset_codes = 0;
    std::size_t n_genuine = 0;
    std::size_t n_imposter = 0;
    double min_genuine = 0.0;
    double max_imposter = 0.0;
    double gap = 0.0;
    double threshold = 0.0;
    double sb = 0.0;
    double delta = 0.03;
    Interval band;
    Interval feer;        // [max_imposter, min_genuine], or the overlap when colliding
    bool colliding = false;
    bool theory5_holds = false;  // max imposter < min genuine
    bool theory6_holds = false;  // gap >= delta
    double genuine_crisp_pct = 0.0;   // genuine scores clamped to exactly 1
    double imposter_crisp_pct = 0.0;  // imposter scores clamped to exactly 0
    Interval raw_range;               // min / max raw score, both labels
    std::array<std::size_t, histogram_bins> genuine_hist{};
    std::array<std::size_t, histogram_bins> imposter_hist{};
};

// Throws ValidationError unless both labels are present.
SeparationReport separation_report(const ScoreTable& scores, double t, double sb,
                                   double delta = 0.03);

struct TriClassCounts {
    std::size_t n_f0 = 0;
    std::size_t n_fu = 0;
    std::size_t n_f1 = 0;
    bool condition15_holds = false;             // n_fu < min(n_f0, n_f1)
    std::optional<double> ambiguity_ratio;      // n_fu / min(n_f0, n_f1); empty when min is 0

    std::size_t total() const noexcept { return n_f0 + n_fu + n_f1; }
};

// Below the band -> f0, above it -> f1, inside (edges included) -> fu.
TriClassCounts triclass(const ScoreTable& scores, double t, double sb);

struct FriendEnemyRow {
    SampleRef sample;
    bool evaluable = false;  // has at least one genuine and one imposter comparison
    double farthest_friend = 0.0;  // lowest genuine score involving the sample
    double nearest_enemy = 0.0;    // highest imposter score involving the sample
    bool holds = false;            // farthest_friend > nearest_enemy
};

struct FriendEnemySummary {
    std::vector<FriendEnemyRow> rows;  // ascending sample
    std::size_t n_evaluable = 0;
    std::size_t n_holds = 0;
    double min_margin = 0.0;  // min over evaluable rows of friend - enemy

    bool all_hold() const noexcept { return n_evaluable > 0 && n_holds == n_evaluable; }
};

FriendEnemySummary friend_enemy(const ScoreTable& scores);

// trained.gap - baseline.gap; positive when training moved the distributions
// apart. Throws ValidationError when the reports cover datasets of different size.
double defuzzification_delta(const SeparationReport& baseline, const SeparationReport& trained);

}  // namespace irisdd
