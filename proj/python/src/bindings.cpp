// Python bindings. Bit vectors cross the boundary as uint8 numpy arrays of 0/1,
// directions as float64 arrays.

#include "irisdd/errors.hpp"
#include "irisdd/hbtdd.hpp"
#include "irisdd/report.hpp"
#include "irisdd/synthgen.hpp"

#include <pybind11/functional.h>
#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include <sstream>

namespace py = pybind11;
using namespace irisdd;

namespace {

using BitArray = py::array_t<std::uint8_t, py::array::c_style | py::array::forcecast>;
using WeightArray = py::array_t<double, py::array::c_style | py::array::forcecast>;

BitVector to_bitvector(const BitArray& a) {
    if (a.ndim() != 1) throw DimensionError("bit array must be one-dimensional");
    return BitVector::from_bits({a.data(), static_cast<std::size_t>(a.size())});
}

BitArray to_array(const BitVector& v) {
    const auto bits = v.to_bits();
    BitArray out(static_cast<py::ssize_t>(bits.size()));
    std::copy(bits.begin(), bits.end(), out.mutable_data());
    return out;
}

WeightArray to_array(const std::vector<double>& w) {
    WeightArray out(static_cast<py::ssize_t>(w.size()));
    std::copy(w.begin(), w.end(), out.mutable_data());
    return out;
}

DiscriminantDirection to_direction(const WeightArray& w, std::int64_t identity_id) {
    if (w.ndim() != 1) throw DimensionError("weights must be one-dimensional");
    return {std::vector<double>(w.data(), w.data() + w.size()), identity_id};
}

ComparisonCode comparison(const BitArray& a, const BitArray& b) {
    return {equal_bits(to_bitvector(a), to_bitvector(b)), Label::imposter, {}, {}};
}

template <class F>
std::string to_text(F&& write) {
    std::ostringstream s;
    write(s);
    return s.str();
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Discriminant-direction training for binary iris codes";

    auto error = py::register_exception<Error>(m, "Error", PyExc_RuntimeError);
    py::register_exception<DimensionError>(m, "DimensionError", error);
    py::register_exception<DegenerateDirectionError>(m, "DegenerateDirectionError", error);
    py::register_exception<ValidationError>(m, "ValidationError", error);
    py::register_exception<ParseError>(m, "ParseError", error);
    py::register_exception<IoError>(m, "IoError", error);

    py::class_<Dataset>(m, "Dataset")
        .def(py::init([](std::size_t ell, const std::vector<std::tuple<std::int64_t, std::int64_t, BitArray>>& rows) {
                 Dataset ds;
                 ds.ell = ell;
                 for (const auto& [id, sample, bits] : rows) ds.codes.emplace_back(to_bitvector(bits), id, sample);
                 ds.validate();
                 ds.sort();
                 return ds;
             }),
             py::arg("ell"), py::arg("codes"))
        .def_readonly("ell", &Dataset::ell)
        .def("__len__", [](const Dataset& ds) { return ds.codes.size(); })
        .def("identities", &Dataset::identities)
        .def("codes", [](const Dataset& ds) {
            py::list out;
            for (const auto& c : ds.codes) out.append(py::make_tuple(c.identity_id, c.sample_id, to_array(c.bits)));
            return out;
        })
        .def("to_text", [](const Dataset& ds) { return to_text([&](std::ostream& s) { write_dataset(s, ds); }); });

    m.def("read_dataset", py::overload_cast<const std::filesystem::path&>(&read_dataset), py::arg("path"));
    m.def("write_dataset", py::overload_cast<const std::filesystem::path&, const Dataset&>(&write_dataset),
          py::arg("path"), py::arg("dataset"));
    m.def("merge", &merge);

    py::class_<SynthConfig>(m, "SynthConfig")
        .def(py::init<>())
        .def_static("hard_mode", &SynthConfig::hard_mode)
        .def_readwrite("k", &SynthConfig::k)
        .def_readwrite("samples_per_identity", &SynthConfig::samples_per_identity)
        .def_readwrite("ell", &SynthConfig::ell)
        .def_readwrite("p_intra", &SynthConfig::p_intra)
        .def_readwrite("train_per_identity", &SynthConfig::train_per_identity)
        .def_readwrite("seed", &SynthConfig::seed);

    py::class_<SynthDataset>(m, "SynthDataset")
        .def_readonly("train", &SynthDataset::train)
        .def_readonly("test", &SynthDataset::test)
        .def_readonly("min_genuine_hamming", &SynthDataset::min_genuine_hamming)
        .def_readonly("max_imposter_hamming", &SynthDataset::max_imposter_hamming)
        .def_property_readonly("hamming_separable", &SynthDataset::hamming_separable);

    m.def("generate", &generate, py::arg("config") = SynthConfig{});

    m.def("hamming_similarity", [](const BitArray& a, const BitArray& b) {
        return hamming_similarity(comparison(a, b));
    });
    m.def("projection_score",
          [](const BitArray& a, const BitArray& b, const WeightArray& weights) {
              const auto c = comparison(a, b);
              return projection_score(c, to_direction(weights, 0), WitnessDirection::trivial(c.ell()));
          },
          py::arg("a"), py::arg("b"), py::arg("weights"));
    m.def("theorem1_check", [](const BitArray& a, const BitArray& b) {
        const auto p = theorem1_check(comparison(a, b));
        return py::make_tuple(p.hamming, p.projected);
    });

    py::class_<Model>(m, "Model")
        .def_readonly("ell", &Model::ell)
        .def_readonly("threshold", &Model::threshold)
        .def_readonly("final_sb", &Model::final_sb)
        .def_readonly("converged", &Model::converged)
        .def_readonly("epochs_used", &Model::epochs_used)
        .def("identities", [](const Model& model) {
            std::vector<std::int64_t> ids;
            for (const auto& d : model.directions) ids.push_back(d.identity_id);
            return ids;
        })
        .def("weights", [](const Model& model, std::int64_t identity_id) {
            const auto* d = model.find(identity_id);
            if (!d) throw py::key_error("identity " + std::to_string(identity_id) + " is not enrolled");
            return to_array(d->weights);
        })
        .def("to_json", [](const Model& model) { return to_text([&](std::ostream& s) { write_model(s, model); }); });

    m.def("read_model", py::overload_cast<const std::filesystem::path&>(&read_model), py::arg("path"));
    m.def("write_model", py::overload_cast<const std::filesystem::path&, const Model&>(&write_model),
          py::arg("path"), py::arg("model"));

    py::class_<TrainConfig>(m, "TrainConfig")
        .def(py::init<>())
        .def_readwrite("r", &TrainConfig::r)
        .def_readwrite("b", &TrainConfig::b)
        .def_readwrite("t0", &TrainConfig::t0)
        .def_readwrite("sb0", &TrainConfig::sb0)
        .def_readwrite("sb_min", &TrainConfig::sb_min)
        .def_readwrite("sb_max", &TrainConfig::sb_max)
        .def_readwrite("max_epochs", &TrainConfig::max_epochs)
        .def_readwrite("seed", &TrainConfig::seed);

    py::class_<EpochStats>(m, "EpochStats")
        .def_readonly("epoch", &EpochStats::epoch)
        .def_readonly("corrections_genuine", &EpochStats::corrections_genuine)
        .def_readonly("corrections_imposter", &EpochStats::corrections_imposter)
        .def_readonly("sb", &EpochStats::sb);

    py::class_<TrainOutcome>(m, "TrainOutcome")
        .def_readonly("model", &TrainOutcome::model)
        .def_readonly("log", &TrainOutcome::log)
        .def_property_readonly("converged", &TrainOutcome::converged)
        .def_property_readonly("epochs_used", &TrainOutcome::epochs_used)
        .def_property_readonly("final_sb", &TrainOutcome::final_sb);

    m.def("train",
          [](const Dataset& ds, const TrainConfig& cfg, std::size_t jobs) {
              py::gil_scoped_release release;
              return jobs == 0 ? train(ds, cfg) : train_parallel(ds, cfg, jobs);
          },
          py::arg("dataset"), py::arg("config") = TrainConfig{}, py::arg("parallel_jobs") = 0,
          "Sequential reference trainer, or the per-identity parallel variant when parallel_jobs > 0.");

    py::class_<Interval>(m, "Interval")
        .def_readonly("lo", &Interval::lo)
        .def_readonly("hi", &Interval::hi)
        .def("__iter__", [](const Interval& i) { return py::iter(py::make_tuple(i.lo, i.hi)); });

    py::class_<SeparationReport>(m, "SeparationReport")
        .def_property_readonly("scorer", [](const SeparationReport& r) { return std::string(to_string(r.scorer)); })
        .def_readonly("n_genuine", &SeparationReport::n_genuine)
        .def_readonly("n_imposter", &SeparationReport::n_imposter)
        .def_readonly("min_genuine", &SeparationReport::min_genuine)
        .def_readonly("max_imposter", &SeparationReport::max_imposter)
        .def_readonly("gap", &SeparationReport::gap)
        .def_readonly("band", &SeparationReport::band)
        .def_readonly("feer", &SeparationReport::feer)
        .def_readonly("colliding", &SeparationReport::colliding)
        .def_readonly("theory5_holds", &SeparationReport::theory5_holds)
        .def_readonly("theory6_holds", &SeparationReport::theory6_holds)
        .def_readonly("genuine_crisp_pct", &SeparationReport::genuine_crisp_pct)
        .def_readonly("imposter_crisp_pct", &SeparationReport::imposter_crisp_pct)
        .def_readonly("genuine_hist", &SeparationReport::genuine_hist)
        .def_readonly("imposter_hist", &SeparationReport::imposter_hist);

    py::class_<TriClassCounts>(m, "TriClassCounts")
        .def_readonly("n_f0", &TriClassCounts::n_f0)
        .def_readonly("n_fu", &TriClassCounts::n_fu)
        .def_readonly("n_f1", &TriClassCounts::n_f1)
        .def_readonly("condition15_holds", &TriClassCounts::condition15_holds)
        .def_readonly("ambiguity_ratio", &TriClassCounts::ambiguity_ratio)
        .def("total", &TriClassCounts::total);

    py::class_<FriendEnemySummary>(m, "FriendEnemySummary")
        .def_readonly("n_evaluable", &FriendEnemySummary::n_evaluable)
        .def_readonly("n_holds", &FriendEnemySummary::n_holds)
        .def_readonly("min_margin", &FriendEnemySummary::min_margin)
        .def("all_hold", &FriendEnemySummary::all_hold);

    py::class_<EvalRun>(m, "EvalRun")
        .def_readonly("split", &EvalRun::split)
        .def_readonly("separation", &EvalRun::separation)
        .def_readonly("triclass", &EvalRun::tri)
        .def_readonly("friend_enemy", &EvalRun::friends);

    m.def("evaluate",
          [](const Dataset& ds, const Model* model, const std::string& split, std::optional<double> t,
             std::optional<double> sb, double delta, std::size_t jobs) {
              const double threshold = t ? *t : model ? model->threshold : TrainConfig{}.t0;
              const double band = sb ? *sb : model ? model->final_sb : TrainConfig{}.sb0;
              py::gil_scoped_release release;
              return evaluate(ds, model, split, threshold, band, delta, jobs);
          },
          py::arg("dataset"), py::arg("model") = nullptr, py::arg("split") = "test", py::arg("t") = py::none(),
          py::arg("sb") = py::none(), py::arg("delta") = 0.03, py::arg("jobs") = 1,
          "Scores the dataset with the model (Hamming baseline when model is None).");

    m.def("defuzzification_delta", &defuzzification_delta, py::arg("baseline"), py::arg("trained"));

    m.def("report_json",
          [](const EvalRun& primary, std::optional<EvalRun> baseline) {
              EvalDocument doc{primary, baseline, std::nullopt};
              if (baseline) doc.defuzzification_delta = defuzzification_delta(baseline->separation, primary.separation);
              return to_text([&](std::ostream& s) { write_report_json(s, doc); });
          },
          py::arg("primary"), py::arg("baseline") = py::none());
}
