#include "irisdd/report.hpp"

#include <nlohmann/json.hpp>

#include <cstdio>
#include <ostream>

namespace irisdd {

namespace {

using ordered_json = nlohmann::ordered_json;

std::string real17(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

ordered_json to_json(const EvalRun& run) {
    const auto& s = run.separation;
    ordered_json j;
    j["split"] = run.split;
    j["scorer"] = to_string(s.scorer);
    j["dataset_codes"] = s.dataset_codes;
    j["n_genuine"] = s.n_genuine;
    j["n_imposter"] = s.n_imposter;
    j["threshold"] = s.threshold;
    j["sb"] = s.sb;
    j["band"] = {s.band.lo, s.band.hi};
    j["min_genuine"] = s.min_genuine;
    j["max_imposter"] = s.max_imposter;
    j["gap"] = s.gap;
    j["feer_interval"] = {s.feer.lo, s.feer.hi};
    j["colliding"] = s.colliding;
    j["delta"] = s.delta;
    j["theory5_holds"] = s.theory5_holds;
    j["theory6_holds"] = s.theory6_holds;
    j["safety_rates"] = {{"genuine_crisp_pct", s.genuine_crisp_pct},
                         {"imposter_crisp_pct", s.imposter_crisp_pct}};
    j["raw_score_range"] = {s.raw_range.lo, s.raw_range.hi};
    j["triclass"] = {
        {"n_f0", run.tri.n_f0},
        {"n_fu", run.tri.n_fu},
        {"n_f1", run.tri.n_f1},
        {"condition15_holds", run.tri.condition15_holds},
        {"ambiguity_ratio", run.tri.ambiguity_ratio ? ordered_json(*run.tri.ambiguity_ratio)
                                                    : ordered_json(nullptr)},
    };
    j["friend_enemy"] = {
        {"n_samples", run.friends.rows.size()},
        {"n_evaluable", run.friends.n_evaluable},
        {"n_holds", run.friends.n_holds},
        {"min_margin", run.friends.min_margin},
    };
    return j;
}

}  // namespace

EvalRun evaluate(const Dataset& dataset, const Model* model, const std::string& split, double t,
                 double sb, double delta, std::size_t jobs) {
    const ScoreTable table = score_all(dataset, model, jobs);
    return {split, separation_report(table, t, sb, delta), triclass(table, t, sb),
            friend_enemy(table)};
}

void write_report_json(std::ostream& out, const EvalDocument& doc) {
    ordered_json j;
    j["version"] = report_format_version;
    j["report"] = to_json(doc.primary);
    if (doc.baseline) j["baseline"] = to_json(*doc.baseline);
    if (doc.defuzzification_delta) j["defuzzification_delta"] = *doc.defuzzification_delta;
    out << j.dump(2) << '\n';
}

void write_histogram_csv(std::ostream& out, const SeparationReport& report) {
    out << "bin_lower,genuine_count,imposter_count\n";
    char buf[16];
    for (std::size_t b = 0; b < histogram_bins; ++b) {
        std::snprintf(buf, sizeof buf, "%.2f", histogram_bin_lower(b));
        out << buf << ',' << report.genuine_hist[b] << ',' << report.imposter_hist[b] << '\n';
    }
}

void write_friend_enemy_csv(std::ostream& out, const FriendEnemySummary& summary) {
    out << "identity_id,sample_id,evaluable,farthest_friend,nearest_enemy,holds\n";
    for (const auto& row : summary.rows) {
        out << row.sample.identity_id << ',' << row.sample.sample_id << ','
            << (row.evaluable ? 1 : 0) << ',';
        if (row.evaluable)
            out << real17(row.farthest_friend) << ',' << real17(row.nearest_enemy) << ','
                << (row.holds ? 1 : 0);
        else
            out << ",,";
        out << '\n';
    }
}

}  // namespace irisdd
