#include "irisdd/synthgen.hpp"

#include "irisdd/errors.hpp"
#include "irisdd/rng.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <numeric>

namespace irisdd {

void SynthConfig::validate() const {
    if (k < 1) throw ValidationError("k must be >= 1");
    if (samples_per_identity < 1) throw ValidationError("samples per identity must be >= 1");
    if (ell < 1) throw ValidationError("ell must be >= 1");
    if (!(p_intra >= 0.0 && p_intra <= 0.5)) throw ValidationError("p_intra must lie in [0, 0.5]");
    if (train_per_identity > samples_per_identity) {
        throw ValidationError("train count per identity exceeds samples per identity");
    }
}

SynthDataset generate(const SynthConfig& cfg) {
    cfg.validate();
    Engine eng(cfg.seed);
    SynthDataset out;
    out.train.ell = cfg.ell;
    out.test.ell = cfg.ell;

    for (std::size_t j = 0; j < cfg.k; ++j) {
        BitVector bits(cfg.ell);
        for (auto& w : bits.mutable_words()) w = eng();
        bits.clear_padding();
        out.centroids.emplace_back(std::move(bits), static_cast<std::int64_t>(j), 0);
    }

    std::vector<std::vector<IrisCode>> samples(cfg.k);
    for (std::size_t j = 0; j < cfg.k; ++j) {
        for (std::size_t s = 0; s < cfg.samples_per_identity; ++s) {
            BitVector bits = out.centroids[j].bits;
            for (std::size_t i = 0; i < cfg.ell; ++i) {
                if (uniform_unit(eng) < cfg.p_intra) bits.flip(i);
            }
            samples[j].emplace_back(std::move(bits), static_cast<std::int64_t>(j),
                                    static_cast<std::int64_t>(s));
        }
    }

    for (std::size_t j = 0; j < cfg.k; ++j) {
        std::vector<std::size_t> order(cfg.samples_per_identity);
        std::iota(order.begin(), order.end(), std::size_t{0});
        for (std::size_t i = order.size(); i > 1; --i) {
            std::swap(order[i - 1], order[uniform_below(eng, i)]);
        }
        for (std::size_t n = 0; n < order.size(); ++n) {
            auto& dst = n < cfg.train_per_identity ? out.train : out.test;
            dst.codes.push_back(samples[j][order[n]]);
        }
    }
    out.train.sort();
    out.test.sort();

    // Baseline separability over every generated code.
    std::vector<const IrisCode*> all;
    for (const auto& per_id : samples) {
        for (const auto& c : per_id) all.push_back(&c);
    }
    double min_gen = 1.0;
    double max_imp = 0.0;
    for (std::size_t a = 0; a < all.size(); ++a) {
        for (std::size_t b = a + 1; b < all.size(); ++b) {
            const double h = hamming_similarity(equal_bits(all[a]->bits, all[b]->bits));
            if (all[a]->identity_id == all[b]->identity_id)
                min_gen = std::min(min_gen, h);
            else
                max_imp = std::max(max_imp, h);
        }
    }
    out.min_genuine_hamming = min_gen;
    out.max_imposter_hamming = max_imp;
    return out;
}

std::string synth_metadata_json(const SynthConfig& cfg, const SynthDataset& data) {
    nlohmann::ordered_json j;
    j["generator_version"] = synthgen_version;
    j["config"] = {
        {"k", cfg.k},
        {"samples_per_identity", cfg.samples_per_identity},
        {"ell", cfg.ell},
        {"p_intra", cfg.p_intra},
        {"train_per_identity", cfg.train_per_identity},
        {"seed", cfg.seed},
    };
    j["train_codes"] = data.train.codes.size();
    j["test_codes"] = data.test.codes.size();
    j["min_genuine_hamming"] = data.min_genuine_hamming;
    j["max_imposter_hamming"] = data.max_imposter_hamming;
    j["hamming_separable"] = data.hamming_separable();
    return j.dump(2) + "\n";
}

}  // namespace irisdd
