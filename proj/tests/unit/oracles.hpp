#pragma once

// Brute-force references for the separation statistics. They sort and scan or
// sweep thresholds; none of them calls into evalstats beyond the table type.

#include "irisdd/evalstats.hpp"

#include <algorithm>
#include <cmath>
#include <random>

namespace irisdd::testing {

// Scores on a 1/1000 grid in [-0.2, 1.2]; always holds both labels.
inline ScoreTable random_table(std::mt19937_64& rng, std::size_t n) {
    n = std::max<std::size_t>(n, 2);
    ScoreTable t;
    for (std::size_t i = 0; i < n; ++i) {
        const Label label = i == 0 ? Label::genuine
                            : i == 1 ? Label::imposter
                                     : ((rng() & 1) ? Label::genuine : Label::imposter);
        // Genuine scores skew high so both separated and colliding tables occur.
        const int base = label == Label::genuine ? 300 : -200;
        const double raw = static_cast<double>(base + static_cast<int>(rng() % 1101)) / 1000.0;
        t.add({static_cast<std::int64_t>(i % 7), static_cast<std::int64_t>(i)},
              {static_cast<std::int64_t>((i + 3) % 7), static_cast<std::int64_t>(i + n)}, label, raw);
    }
    return t;
}

struct NaiveSeparation {
    double min_genuine, max_imposter, gap, raw_lo, raw_hi, feer_lo, feer_hi;
    bool colliding, theory5, theory6;
    double genuine_crisp_pct, imposter_crisp_pct;
    std::size_t n_genuine, n_imposter;
    std::array<std::size_t, histogram_bins> genuine_hist{}, imposter_hist{};
};

inline NaiveSeparation naive_separation(const ScoreTable& table, double delta) {
    std::vector<ScoreEntry> sorted = table.entries;
    std::sort(sorted.begin(), sorted.end(),
              [](const ScoreEntry& a, const ScoreEntry& b) { return a.clamped < b.clamped; });
    NaiveSeparation o{};
    for (const auto& e : sorted) {
        if (e.label == Label::genuine) {
            o.min_genuine = e.clamped;
            break;
        }
    }
    for (auto it = sorted.rbegin(); it != sorted.rend(); ++it) {
        if (it->label == Label::imposter) {
            o.max_imposter = it->clamped;
            break;
        }
    }
    std::vector<double> raws;
    for (const auto& e : sorted) raws.push_back(e.raw);
    std::sort(raws.begin(), raws.end());
    o.raw_lo = raws.front();
    o.raw_hi = raws.back();

    o.gap = o.min_genuine - o.max_imposter;
    o.theory5 = o.gap > 0;
    o.theory6 = o.gap >= delta;
    o.colliding = !o.theory5;
    o.feer_lo = std::min(o.min_genuine, o.max_imposter);
    o.feer_hi = std::max(o.min_genuine, o.max_imposter);

    std::size_t crisp_g = 0, crisp_i = 0;
    for (const auto& e : sorted) {
        auto& hist = e.label == Label::genuine ? o.genuine_hist : o.imposter_hist;
        for (std::size_t b = 0; b < histogram_bins; ++b) {
            const double lo = static_cast<double>(b) / 100.0;
            const double hi = static_cast<double>(b + 1) / 100.0;
            if (e.clamped >= lo && (e.clamped < hi || b + 1 == histogram_bins)) {
                ++hist[b];
                break;
            }
        }
        if (e.label == Label::genuine) {
            ++o.n_genuine;
            crisp_g += e.clamped == 1.0;
        } else {
            ++o.n_imposter;
            crisp_i += e.clamped == 0.0;
        }
    }
    o.genuine_crisp_pct = 100.0 * static_cast<double>(crisp_g) / static_cast<double>(o.n_genuine);
    o.imposter_crisp_pct = 100.0 * static_cast<double>(crisp_i) / static_cast<double>(o.n_imposter);
    return o;
}

inline bool same_report(const SeparationReport& r, const NaiveSeparation& o) {
    return r.min_genuine == o.min_genuine && r.max_imposter == o.max_imposter && r.gap == o.gap &&
           r.raw_range.lo == o.raw_lo && r.raw_range.hi == o.raw_hi && r.feer.lo == o.feer_lo &&
           r.feer.hi == o.feer_hi && r.colliding == o.colliding && r.theory5_holds == o.theory5 &&
           r.theory6_holds == o.theory6 && r.genuine_crisp_pct == o.genuine_crisp_pct &&
           r.imposter_crisp_pct == o.imposter_crisp_pct && r.n_genuine == o.n_genuine &&
           r.n_imposter == o.n_imposter && r.genuine_hist == o.genuine_hist &&
           r.imposter_hist == o.imposter_hist;
}

struct SweepInterval {
    bool found = false;
    bool separated = false;
    double lo = 0.0;
    double hi = 0.0;
};

// Accept when score >= tau. Sweeps tau over 10,001 points of [0, 1]. When some
// threshold has FAR = FRR = 0 the distributions are separated and the interval
// spans those thresholds; otherwise it spans the thresholds where both error
// rates are positive.
inline SweepInterval feer_sweep(const ScoreTable& table) {
    SweepInterval zero, both;
    for (int k = 0; k <= 10000; ++k) {
        const double tau = k / 10000.0;
        std::size_t false_accept = 0, false_reject = 0;
        for (const auto& e : table.entries) {
            if (e.label == Label::genuine && e.clamped < tau) ++false_reject;
            if (e.label == Label::imposter && e.clamped >= tau) ++false_accept;
        }
        SweepInterval* target = nullptr;
        if (false_accept == 0 && false_reject == 0) target = &zero;
        if (false_accept > 0 && false_reject > 0) target = &both;
        if (!target) continue;
        if (!target->found) target->lo = tau;
        target->found = true;
        target->hi = tau;
    }
    if (zero.found) {
        zero.separated = true;
        return zero;
    }
    return both;
}

}  // namespace irisdd::testing
