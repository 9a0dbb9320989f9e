#include "irisdd/hbtdd.hpp"

#include "irisdd/errors.hpp"
#include "irisdd/rng.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <ostream>
#include <string>
#include <thread>

namespace irisdd {

void TrainConfig::validate() const {
    if (!(r > 0.0)) throw ValidationError("learning rate r must be > 0");
    if (!(b >= 0.0)) throw ValidationError("band rate b must be >= 0");
    if (!(t0 > 0.0 && t0 < 1.0)) throw ValidationError("threshold t0 must lie in (0, 1)");
    if (!(sb_min >= 0.0 && sb_min <= sb0 && sb0 <= sb_max)) {
        throw ValidationError("safety band must satisfy 0 <= sb_min <= sb0 <= sb_max");
    }
    if (max_epochs < 1) throw ValidationError("max_epochs must be >= 1");
}

BandEdges band_edges(double t, double sb) { return {t - sb / 2.0, t + sb / 2.0}; }

std::vector<DiscriminantDirection> init_directions(std::size_t k, std::size_t ell,
                                                   std::uint64_t seed) {
    Engine eng(seed);
    std::vector<DiscriminantDirection> out;
    out.reserve(k);
    BitVector bits(ell);
    for (std::size_t j = 0; j < k; ++j) {
        do {
            for (auto& w : bits.mutable_words()) w = eng();
            bits.clear_padding();
        } while (bits.popcount() == 0);
        DiscriminantDirection d{std::vector<double>(ell, 0.0), static_cast<std::int64_t>(j)};
        bits.for_each_set_bit([&](std::size_t i) { d.weights[i] = 1.0; });
        out.push_back(std::move(d));
    }
    return out;
}

namespace {

// Direction under training with its witness projection cached.
struct Trainee {
    DiscriminantDirection direction;
    double witness = 0.0;

    void refresh() { witness = witness_dot(direction.weights); }

    double score(const BitVector& c) const {
        if (!(witness > 0.0) || std::abs(witness) < degenerate_threshold) {
            throw DegenerateDirectionError(
                "training aborted: direction of identity " +
                    std::to_string(direction.identity_id) +
                    " has non-positive witness projection " + std::to_string(witness),
                direction.identity_id);
        }
        return dot(c, direction.weights) / witness;
    }
};

// D + r*C - r*~C for genuine codes, D - r*C + r*~C for imposters.
void apply_correction(std::vector<double>& weights, const BitVector& c, double r, Label label) {
    for (std::size_t i = 0; i < weights.size(); ++i) {
        const double on = c.test(i) ? 1.0 : 0.0;
        const double off = 1.0 - on;
        if (label == Label::genuine)
            weights[i] = weights[i] + r * on - r * off;
        else
            weights[i] = weights[i] - r * on + r * off;
    }
}

// Returns true when c forced a correction; updates t, sb in place.
bool step(Trainee& t, const ComparisonCode& c, const TrainConfig& cfg, double& sb) {
    const double s = t.score(c.bits);
    const auto edges = band_edges(cfg.t0, sb);
    if (c.label == Label::genuine) {
        if (s > edges.upper) return false;
        apply_correction(t.direction.weights, c.bits, cfg.r, Label::genuine);
        sb = std::clamp(sb - cfg.b, cfg.sb_min, cfg.sb_max);
    } else {
        if (s < edges.lower) return false;
        apply_correction(t.direction.weights, c.bits, cfg.r, Label::imposter);
        sb = std::clamp(sb + cfg.b, cfg.sb_min, cfg.sb_max);
    }
    t.refresh();
    return true;
}

struct Prepared {
    Dataset sorted;
    std::vector<std::int64_t> ids;
    std::vector<Trainee> trainees;
    std::vector<std::vector<ComparisonCode>> sweeps;
};

Prepared prepare(const Dataset& dataset, const TrainConfig& cfg) {
    cfg.validate();
    if (dataset.codes.empty()) throw ValidationError("training dataset is empty");
    dataset.validate();

    Prepared p{dataset, dataset.identities(), {}, {}};
    p.sorted.sort();
    auto init = init_directions(p.ids.size(), dataset.ell, cfg.seed);
    for (std::size_t j = 0; j < p.ids.size(); ++j) {
        init[j].identity_id = p.ids[j];
        Trainee t{std::move(init[j]), 0.0};
        t.refresh();
        p.trainees.push_back(std::move(t));
        p.sweeps.push_back(training_comparisons(p.sorted, p.ids[j]));
    }
    return p;
}

Model finish(Prepared& p, const TrainConfig& cfg, double sb, std::size_t epochs, bool converged) {
    Model m;
    m.ell = p.sorted.ell;
    m.threshold = cfg.t0;
    m.final_sb = sb;
    m.converged = converged;
    m.epochs_used = epochs;
    for (auto& t : p.trainees) m.directions.push_back(std::move(t.direction));
    return m;
}

}  // namespace

UpdateResult update_step(const DiscriminantDirection& d, const ComparisonCode& c,
                         const TrainConfig& cfg, double sb) {
    if (c.ell() != d.ell()) {
        throw DimensionError("comparison code length " + std::to_string(c.ell()) +
                             " does not match direction length " + std::to_string(d.ell()));
    }
    Trainee t{d, 0.0};
    t.refresh();
    const bool corrected = step(t, c, cfg, sb);
    return {std::move(t.direction), sb, corrected};
}

std::vector<ComparisonCode> training_comparisons(const Dataset& dataset,
                                                 std::int64_t identity_id) {
    std::vector<ComparisonCode> out;
    for (const auto& anchor : dataset.codes) {
        if (anchor.identity_id != identity_id) continue;
        for (const auto& other : dataset.codes) {
            if (other.ref() == anchor.ref()) continue;
            out.push_back(compare(anchor, other));
        }
    }
    return out;
}

TrainOutcome train(const Dataset& dataset, const TrainConfig& cfg, const EpochCallback& on_epoch) {
    Prepared p = prepare(dataset, cfg);
    TrainOutcome out;
    double sb = cfg.sb0;
    bool converged = false;
    std::size_t epoch = 0;
    while (epoch < cfg.max_epochs && !converged) {
        ++epoch;
        EpochStats stats{epoch, 0, 0, 0.0};
        for (std::size_t j = 0; j < p.trainees.size(); ++j) {
            for (const auto& c : p.sweeps[j]) {
                if (!step(p.trainees[j], c, cfg, sb)) continue;
                if (c.label == Label::genuine)
                    ++stats.corrections_genuine;
                else
                    ++stats.corrections_imposter;
            }
        }
        stats.sb = sb;
        out.log.push_back(stats);
        if (on_epoch) on_epoch(stats);
        converged = stats.corrections_genuine + stats.corrections_imposter == 0;
    }
    out.model = finish(p, cfg, sb, epoch, converged);
    return out;
}

TrainOutcome train_parallel(const Dataset& dataset, const TrainConfig& cfg, std::size_t jobs) {
    Prepared p = prepare(dataset, cfg);
    const std::size_t k = p.trainees.size();
    jobs = std::clamp<std::size_t>(jobs, 1, k);

    struct Local {
        double sb = 0.0;
        std::size_t epochs = 0;
        bool converged = false;
        std::vector<EpochStats> log;
        std::exception_ptr error;
    };
    std::vector<Local> locals(k);

    auto run_identity = [&](std::size_t j) {
        Local& L = locals[j];
        L.sb = cfg.sb0;
        try {
            while (L.epochs < cfg.max_epochs && !L.converged) {
                EpochStats stats{++L.epochs, 0, 0, 0.0};
                for (const auto& c : p.sweeps[j]) {
                    if (!step(p.trainees[j], c, cfg, L.sb)) continue;
                    if (c.label == Label::genuine)
                        ++stats.corrections_genuine;
                    else
                        ++stats.corrections_imposter;
                }
                stats.sb = L.sb;
                L.log.push_back(stats);
                L.converged = stats.corrections_genuine + stats.corrections_imposter == 0;
            }
        } catch (...) {
            L.error = std::current_exception();
        }
    };

    // Static round-robin partition keeps the per-identity work independent of timing.
    std::vector<std::thread> workers;
    for (std::size_t w = 0; w < jobs; ++w) {
        workers.emplace_back([&, w] {
            for (std::size_t j = w; j < k; j += jobs) run_identity(j);
        });
    }
    for (auto& t : workers) t.join();
    for (const auto& L : locals) {
        if (L.error) std::rethrow_exception(L.error);
    }

    TrainOutcome out;
    std::size_t epochs = 0;
    bool converged = true;
    double sb = std::numeric_limits<double>::infinity();
    for (const auto& L : locals) {
        epochs = std::max(epochs, L.epochs);
        converged = converged && L.converged;
        sb = std::min(sb, L.sb);
    }
    for (std::size_t e = 0; e < epochs; ++e) {
        EpochStats agg{e + 1, 0, 0, std::numeric_limits<double>::infinity()};
        for (const auto& L : locals) {
            const auto& s = L.log[std::min(e, L.log.size() - 1)];
            if (e < L.log.size()) {
                agg.corrections_genuine += s.corrections_genuine;
                agg.corrections_imposter += s.corrections_imposter;
            }
            agg.sb = std::min(agg.sb, s.sb);
        }
        out.log.push_back(agg);
    }
    out.model = finish(p, cfg, sb, epochs, converged);
    return out;
}

void write_training_log(std::ostream& out, const std::vector<EpochStats>& log) {
    out << "epoch,corrections_genuine,corrections_imposter,sb\n";
    char buf[32];
    for (const auto& e : log) {
        std::snprintf(buf, sizeof buf, "%.17g", e.sb);
        out << e.epoch << ',' << e.corrections_genuine << ',' << e.corrections_imposter << ','
            << buf << '\n';
    }
}

}  // namespace irisdd
