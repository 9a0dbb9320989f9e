#pragma once

// Evaluation outputs:
//   report.json        separation, tri-class and friend/enemy summaries
//   histogram.csv      bin_lower,genuine_count,imposter_count (101 rows)
//   friend_enemy.csv   identity_id,sample_id,evaluable,farthest_friend,nearest_enemy,holds

#include "irisdd/evalstats.hpp"

#include <iosfwd>
#include <optional>
#include <string>

namespace irisdd {

inline constexpr int report_format_version = 1;

struct EvalRun {
    std::string split;
    SeparationReport separation;
    TriClassCounts tri;
    FriendEnemySummary friends;
};

// Scores `dataset` (baseline when model is null) and derives every statistic.
EvalRun evaluate(const Dataset& dataset, const Model* model, const std::string& split, double t,
                 double sb, double delta, std::size_t jobs = 1);

struct EvalDocument {
    EvalRun primary;
    std::optional<EvalRun> baseline;  // present in compare mode
    std::optional<double> defuzzification_delta;
};

void write_report_json(std::ostream& out, const EvalDocument& doc);
void write_histogram_csv(std::ostream& out, const SeparationReport& report);
void write_friend_enemy_csv(std::ostream& out, const FriendEnemySummary& summary);

}  // namespace irisdd
