#include "irisdd/evalstats.hpp"

#include "irisdd/errors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <string>
#include <thread>

namespace irisdd {

const char* to_string(ScorerKind kind) noexcept {
    return kind == ScorerKind::discriminant ? "discriminant" : "hamming-baseline";
}

void ScoreTable::add(SampleRef left, SampleRef right, Label label, double raw) {
    entries.push_back({left, right, label, raw, clamp_unit(raw)});
}

namespace {

// Runs body(i, out_i) for i in [0, n) over `jobs` threads with contiguous
// chunks; each chunk writes only its own slots.
template <class Body>
void parallel_for(std::size_t n, std::size_t jobs, Body body) {
    jobs = std::clamp<std::size_t>(jobs, 1, std::max<std::size_t>(n, 1));
    if (jobs == 1) {
        for (std::size_t i = 0; i < n; ++i) body(i);
        return;
    }
    std::vector<std::thread> workers;
    std::vector<std::exception_ptr> errors(jobs);
    const std::size_t chunk = (n + jobs - 1) / jobs;
    for (std::size_t w = 0; w < jobs; ++w) {
        workers.emplace_back([&, w] {
            try {
                for (std::size_t i = w * chunk; i < std::min(n, (w + 1) * chunk); ++i) body(i);
            } catch (...) {
                errors[w] = std::current_exception();
            }
        });
    }
    for (auto& t : workers) t.join();
    for (auto& e : errors) {
        if (e) std::rethrow_exception(e);
    }
}

}  // namespace

ScoreTable score_all(const Dataset& dataset, const Model* model, std::size_t jobs) {
    ScoreTable table;
    table.dataset_codes = dataset.codes.size();
    const auto& codes = dataset.codes;
    const std::size_t n = codes.size();

    if (!model) {
        table.scorer = ScorerKind::hamming_baseline;
        // Row a holds pairs (a, b > a); row offsets fix the output order.
        std::vector<std::size_t> offset(n + 1, 0);
        for (std::size_t a = 0; a < n; ++a) offset[a + 1] = offset[a] + (n - a - 1);
        table.entries.resize(offset[n]);
        parallel_for(n, jobs, [&](std::size_t a) {
            for (std::size_t b = a + 1; b < n; ++b) {
                const auto c = compare(codes[a], codes[b]);
                const double h = hamming_similarity(c);
                table.entries[offset[a] + (b - a - 1)] = {c.left, c.right, c.label, h, h};
            }
        });
        return table;
    }

    table.scorer = ScorerKind::discriminant;
    if (model->ell != dataset.ell) {
        throw DimensionError("model ell " + std::to_string(model->ell) +
                             " does not match dataset ell " + std::to_string(dataset.ell));
    }
    std::vector<const DiscriminantDirection*> dirs(n);
    for (std::size_t a = 0; a < n; ++a) {
        dirs[a] = model->find(codes[a].identity_id);
        if (!dirs[a]) {
            throw ValidationError("model has no direction for identity " +
                                  std::to_string(codes[a].identity_id));
        }
    }
    const auto witness = WitnessDirection::trivial(dataset.ell);
    table.entries.resize(n * (n ? n - 1 : 0));
    parallel_for(n, jobs, [&](std::size_t a) {
        std::size_t slot = a * (n - 1);
        for (std::size_t b = 0; b < n; ++b) {
            if (b == a) continue;
            const auto c = compare(codes[a], codes[b]);
            const double raw = projection_score(c, *dirs[a], witness);
            table.entries[slot++] = {c.left, c.right, c.label, raw, clamp_unit(raw)};
        }
    });
    return table;
}

std::size_t histogram_bin(double s) noexcept {
    if (!(s > 0.0)) return 0;
    if (s >= 1.0) return histogram_bins - 1;
    auto b = static_cast<std::size_t>(std::floor(s * 100.0));
    // Keep the bin consistent with its printed lower edge b/100.
    while (b + 1 < histogram_bins && s >= histogram_bin_lower(b + 1)) ++b;
    while (b > 0 && s < histogram_bin_lower(b)) --b;
    return b;
}

double histogram_bin_lower(std::size_t bin) noexcept { return static_cast<double>(bin) / 100.0; }

SeparationReport separation_report(const ScoreTable& scores, double t, double sb, double delta) {
    SeparationReport r;
    r.scorer = scores.scorer;
    r.dataset_codes = scores.dataset_codes;
    r.threshold = t;
    r.sb = sb;
    r.delta = delta;
    r.band = {t - sb / 2.0, t + sb / 2.0};
    r.min_genuine = std::numeric_limits<double>::infinity();
    r.max_imposter = -std::numeric_limits<double>::infinity();
    r.raw_range = {std::numeric_limits<double>::infinity(),
                   -std::numeric_limits<double>::infinity()};

    std::size_t crisp_genuine = 0;
    std::size_t crisp_imposter = 0;
    for (const auto& e : scores.entries) {
        r.raw_range.lo = std::min(r.raw_range.lo, e.raw);
        r.raw_range.hi = std::max(r.raw_range.hi, e.raw);
        const std::size_t bin = histogram_bin(e.clamped);
        if (e.label == Label::genuine) {
            ++r.n_genuine;
            ++r.genuine_hist[bin];
            r.min_genuine = std::min(r.min_genuine, e.clamped);
            if (e.clamped == 1.0) ++crisp_genuine;
        } else {
            ++r.n_imposter;
            ++r.imposter_hist[bin];
            r.max_imposter = std::max(r.max_imposter, e.clamped);
            if (e.clamped == 0.0) ++crisp_imposter;
        }
    }
    if (r.n_genuine == 0 || r.n_imposter == 0) {
        throw ValidationError("separation report needs both genuine and imposter scores");
    }

    r.gap = r.min_genuine - r.max_imposter;
    r.theory5_holds = r.gap > 0.0;
    r.theory6_holds = r.gap >= delta;
    r.colliding = !r.theory5_holds;
    r.feer = r.colliding ? Interval{r.min_genuine, r.max_imposter}
                         : Interval{r.max_imposter, r.min_genuine};
    r.genuine_crisp_pct = 100.0 * static_cast<double>(crisp_genuine) / static_cast<double>(r.n_genuine);
    r.imposter_crisp_pct =
        100.0 * static_cast<double>(crisp_imposter) / static_cast<double>(r.n_imposter);
    return r;
}

TriClassCounts triclass(const ScoreTable& scores, double t, double sb) {
    if (sb < 0.0) throw ValidationError("safety band width must be >= 0");
    const double lower = t - sb / 2.0;
    const double upper = t + sb / 2.0;
    TriClassCounts out;
    for (const auto& e : scores.entries) {
        if (e.clamped < lower)
            ++out.n_f0;
        else if (e.clamped > upper)
            ++out.n_f1;
        else
            ++out.n_fu;
    }
    const std::size_t floor = std::min(out.n_f0, out.n_f1);
    out.condition15_holds = out.n_fu < floor;
    if (floor > 0) out.ambiguity_ratio = static_cast<double>(out.n_fu) / static_cast<double>(floor);
    return out;
}

FriendEnemySummary friend_enemy(const ScoreTable& scores) {
    struct Acc {
        double friend_score = std::numeric_limits<double>::infinity();
        double enemy_score = -std::numeric_limits<double>::infinity();
        bool has_friend = false;
        bool has_enemy = false;
    };
    std::map<SampleRef, Acc> acc;
    auto visit = [&](const SampleRef& s, const ScoreEntry& e) {
        Acc& a = acc[s];
        if (e.label == Label::genuine) {
            a.has_friend = true;
            a.friend_score = std::min(a.friend_score, e.clamped);
        } else {
            a.has_enemy = true;
            a.enemy_score = std::max(a.enemy_score, e.clamped);
        }
    };
    for (const auto& e : scores.entries) {
        visit(e.left, e);
        visit(e.right, e);
    }

    FriendEnemySummary out;
    out.min_margin = std::numeric_limits<double>::infinity();
    for (const auto& [ref, a] : acc) {
        FriendEnemyRow row;
        row.sample = ref;
        row.evaluable = a.has_friend && a.has_enemy;
        if (a.has_friend) row.farthest_friend = a.friend_score;
        if (a.has_enemy) row.nearest_enemy = a.enemy_score;
        if (row.evaluable) {
            row.holds = row.farthest_friend > row.nearest_enemy;
            ++out.n_evaluable;
            if (row.holds) ++out.n_holds;
            out.min_margin = std::min(out.min_margin, row.farthest_friend - row.nearest_enemy);
        }
        out.rows.push_back(row);
    }
    if (out.n_evaluable == 0) out.min_margin = 0.0;
    return out;
}

double defuzzification_delta(const SeparationReport& baseline, const SeparationReport& trained) {
    if (baseline.dataset_codes != trained.dataset_codes) {
        throw ValidationError("reports cover different datasets (" +
                              std::to_string(baseline.dataset_codes) + " vs " +
                              std::to_string(trained.dataset_codes) + " codes)");
    }
    return trained.gap - baseline.gap;
}

}  // namespace irisdd
