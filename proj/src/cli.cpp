#include "irisdd/cli.hpp"

#include "irisdd/errors.hpp"
#include "irisdd/hbtdd.hpp"
#include "irisdd/report.hpp"
#include "irisdd/synthgen.hpp"

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

namespace irisdd::cli {

namespace fs = std::filesystem;
using ordered_json = nlohmann::ordered_json;

namespace {

// Thrown for bad flag values found after CLI11 parsing.
struct UsageError : Error {
    using Error::Error;
};

std::string default_out_dir() {
    const char* env = std::getenv(out_dir_env);
    return env && *env ? env : ".";
}

void write_text(const fs::path& path, const std::string& text) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw IoError("cannot open " + path.string() + " for writing");
    f << text;
    if (!f) throw IoError("failed writing " + path.string());
}

template <class Writer>
void write_file(const fs::path& path, Writer&& writer) {
    std::ostringstream buf;
    writer(buf);
    write_text(path, buf.str());
}

void ensure_dir(const fs::path& dir) {
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec || !fs::is_directory(dir)) throw IoError("cannot create output directory " + dir.string());
}

// A dataset argument is either a file or a directory written by `generate`.
Dataset load_split(const fs::path& data, const std::string& split) {
    if (!fs::is_directory(data)) {
        if (!fs::exists(data)) throw IoError("dataset " + data.string() + " does not exist");
        return read_dataset(data);
    }
    if (split == "train") return read_dataset(data / "train.codes");
    if (split == "test") return read_dataset(data / "test.codes");
    return merge(read_dataset(data / "train.codes"), read_dataset(data / "test.codes"));
}

struct Manifest {
    std::string command;
    std::vector<std::string> argv;
    ordered_json config;
    std::vector<std::string> inputs;
    std::vector<std::string> outputs;
    std::optional<std::uint64_t> seed;
};

void write_manifest(const fs::path& dir, const Manifest& m,
                    std::chrono::steady_clock::time_point started, int status) {
    ordered_json j;
    j["tool"] = "irisdd";
    j["tool_version"] = tool_version;
    j["command"] = m.command;
    j["argv"] = m.argv;
    j["config"] = m.config;
    j["inputs"] = m.inputs;
    j["outputs"] = m.outputs;
    j["seed"] = m.seed ? ordered_json(*m.seed) : ordered_json(nullptr);
    j["exit_status"] = status;
    j["duration_seconds"] =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
    write_text(dir / ("manifest." + m.command + ".json"), j.dump(2) + "\n");
}

struct GenerateOpts {
    SynthConfig cfg;
    bool hard = false;
    std::string out;
};

struct TrainOpts {
    TrainConfig cfg;
    std::string data;
    std::string out;
    bool parallel = false;
    std::size_t jobs = 1;
};

struct EvalOpts {
    std::string data;
    std::string model;
    std::string split = "test";
    std::string compare;
    double t = 0.5;
    double sb = 0.01;
    double delta = 0.03;
    std::size_t jobs = 1;
    std::string out;
};

int cmd_generate(GenerateOpts o, const std::vector<std::string>& argv, std::ostream& out,
                 std::ostream& err) {
    const auto started = std::chrono::steady_clock::now();
    if (o.hard) o.cfg.p_intra = SynthConfig::hard_mode().p_intra;
    try {
        o.cfg.validate();
    } catch (const ValidationError& e) {
        throw UsageError(e.what());
    }
    const fs::path dir = o.out;
    ensure_dir(dir);
    const SynthDataset data = generate(o.cfg);
    if (!data.hamming_separable()) {
        err << "warning: generated clusters are not separable by Hamming similarity (min genuine "
            << data.min_genuine_hamming << " <= max imposter " << data.max_imposter_hamming
            << ")\n";
    }
    write_file(dir / "train.codes", [&](std::ostream& s) { write_dataset(s, data.train); });
    write_file(dir / "test.codes", [&](std::ostream& s) { write_dataset(s, data.test); });
    write_text(dir / "dataset.meta.json", synth_metadata_json(o.cfg, data));

    Manifest m{"generate", argv, ordered_json::parse(synth_metadata_json(o.cfg, data))["config"],
               {}, {"train.codes", "test.codes", "dataset.meta.json"}, o.cfg.seed};
    write_manifest(dir, m, started, exit_ok);
    out << "wrote " << data.train.codes.size() << " train and " << data.test.codes.size()
        << " test codes to " << dir.string() << "\n";
    return exit_ok;
}

int cmd_train(const TrainOpts& o, const std::vector<std::string>& argv, std::ostream& out,
              std::ostream& err) {
    const auto started = std::chrono::steady_clock::now();
    try {
        o.cfg.validate();
    } catch (const ValidationError& e) {
        throw UsageError(e.what());
    }
    const fs::path dir = o.out;
    const Dataset train_set = load_split(o.data, "train");
    ensure_dir(dir);

    Manifest m{"train", argv, {}, {o.data}, {"model.json", "train_log.csv"}, o.cfg.seed};
    m.config = {{"r", o.cfg.r},           {"b", o.cfg.b},
                {"t0", o.cfg.t0},         {"sb0", o.cfg.sb0},
                {"sb_min", o.cfg.sb_min}, {"sb_max", o.cfg.sb_max},
                {"max_epochs", o.cfg.max_epochs}, {"seed", o.cfg.seed},
                {"mode", o.parallel ? "parallel-nonreference" : "reference"}};

    TrainOutcome result;
    try {
        result = o.parallel ? train_parallel(train_set, o.cfg, o.jobs) : train(train_set, o.cfg);
    } catch (const DegenerateDirectionError& e) {
        err << "error: " << e.what() << "\n";
        m.outputs.clear();
        write_manifest(dir, m, started, exit_degenerate);
        return exit_degenerate;
    }
    write_file(dir / "model.json", [&](std::ostream& s) { write_model(s, result.model); });
    write_file(dir / "train_log.csv", [&](std::ostream& s) { write_training_log(s, result.log); });
    const int status = result.converged() ? exit_ok : exit_not_converged;
    write_manifest(dir, m, started, status);
    out << (result.converged() ? "converged" : "not converged") << " after "
        << result.epochs_used() << " epochs, final sb " << result.final_sb() << "\n";
    return status;
}

int cmd_eval(const EvalOpts& o, const std::vector<std::string>& argv, std::ostream& out) {
    const auto started = std::chrono::steady_clock::now();
    if (!(o.sb >= 0.0)) throw UsageError("--sb must be >= 0");
    if (!o.compare.empty() && o.model.empty()) throw UsageError("--compare requires --model");
    const fs::path dir = o.out;
    const Dataset data = load_split(o.data, o.split);
    std::optional<Model> model;
    if (!o.model.empty()) model = read_model(fs::path(o.model));
    ensure_dir(dir);

    const double t = model ? model->threshold : o.t;
    const double sb = model ? model->final_sb : o.sb;
    EvalDocument doc{evaluate(data, model ? &*model : nullptr, o.split, t, sb, o.delta, o.jobs),
                     std::nullopt, std::nullopt};

    Manifest m{"eval", argv, {}, {o.data}, {"report.json", "histogram.csv", "friend_enemy.csv"},
               std::nullopt};
    if (model) m.inputs.push_back(o.model);
    m.config = {{"split", o.split}, {"threshold", t}, {"sb", sb},
                {"delta", o.delta}, {"compare", o.compare}, {"jobs", o.jobs}};

    if (!o.compare.empty()) {
        doc.baseline = evaluate(data, nullptr, o.split, t, sb, o.delta, o.jobs);
        doc.defuzzification_delta =
            defuzzification_delta(doc.baseline->separation, doc.primary.separation);
        write_file(dir / "histogram_baseline.csv",
                   [&](std::ostream& s) { write_histogram_csv(s, doc.baseline->separation); });
        write_file(dir / "friend_enemy_baseline.csv",
                   [&](std::ostream& s) { write_friend_enemy_csv(s, doc.baseline->friends); });
        m.outputs.insert(m.outputs.end(), {"histogram_baseline.csv", "friend_enemy_baseline.csv"});
    }
    write_file(dir / "report.json", [&](std::ostream& s) { write_report_json(s, doc); });
    write_file(dir / "histogram.csv",
               [&](std::ostream& s) { write_histogram_csv(s, doc.primary.separation); });
    write_file(dir / "friend_enemy.csv",
               [&](std::ostream& s) { write_friend_enemy_csv(s, doc.primary.friends); });
    write_manifest(dir, m, started, exit_ok);

    const auto& s = doc.primary.separation;
    out << to_string(s.scorer) << " on " << o.split << ": gap " << s.gap << ", f-EER ["
        << s.feer.lo << ", " << s.feer.hi << "]" << (s.colliding ? " (colliding)" : "") << "\n";
    if (doc.defuzzification_delta) out << "defuzzification delta " << *doc.defuzzification_delta << "\n";
    return exit_ok;
}

int cmd_rerun(const std::string& manifest_path, const std::string& out_override, std::ostream& out,
              std::ostream& err) {
    std::ifstream f(manifest_path);
    if (!f) throw IoError("cannot open manifest " + manifest_path);
    ordered_json j;
    try {
        j = ordered_json::parse(f);
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(std::string("manifest is not valid JSON: ") + e.what(), 0, manifest_path);
    }
    auto args = j.at("argv").get<std::vector<std::string>>();
    if (!out_override.empty()) {
        bool replaced = false;
        for (std::size_t i = 0; i + 1 < args.size(); ++i) {
            if (args[i] == "--out") {
                args[i + 1] = out_override;
                replaced = true;
            }
        }
        if (!replaced) args.insert(args.end(), {"--out", out_override});
    }
    return run(args, out, err);
}

}  // namespace

int run(std::span<const std::string> args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Discriminant-direction training and evaluation for binary iris codes", "irisdd"};
    app.set_version_flag("--version", tool_version);
    app.require_subcommand(1);

    GenerateOpts gen;
    gen.out = default_out_dir();
    auto* g = app.add_subcommand("generate", "Write a synthetic personal-cluster dataset");
    g->add_option("--k", gen.cfg.k, "Number of identities (50: 1000 codes at 20 samples each)")
        ->capture_default_str();
    g->add_option("--samples", gen.cfg.samples_per_identity, "Samples per identity")
        ->capture_default_str();
    g->add_option("--ell", gen.cfg.ell, "Code length in bits (4096 = 64x64 code)")
        ->capture_default_str();
    g->add_option("--p-intra", gen.cfg.p_intra,
                  "Per-bit flip probability inside a cluster, in [0, 0.5]")
        ->capture_default_str();
    g->add_option("--train-per-id", gen.cfg.train_per_identity,
                  "Training samples per identity; the rest form the test split")
        ->capture_default_str();
    g->add_option("--seed", gen.cfg.seed, "Generator seed")->capture_default_str();
    g->add_flag("--hard", gen.hard, "Overlapping clusters (p-intra 0.15)");
    g->add_option("--out", gen.out, "Output directory (default $IRISDD_OUT_DIR or .)");

    TrainOpts tr;
    tr.out = default_out_dir();
    auto* t = app.add_subcommand("train", "Train one discriminant direction per identity");
    t->add_option("--data", tr.data, "Dataset file, or a generate output directory (uses train.codes)")
        ->required();
    t->add_option("--r", tr.cfg.r, "Learning rate (tuned for desk-scale runs)")->capture_default_str();
    t->add_option("--b", tr.cfg.b, "Safety band rate (tuned for desk-scale runs)")
        ->capture_default_str();
    t->add_option("--t0", tr.cfg.t0, "Decision threshold, held fixed during training")
        ->capture_default_str();
    t->add_option("--sb0", tr.cfg.sb0, "Initial safety band width (early-training band of 0.01)")
        ->capture_default_str();
    t->add_option("--sb-min", tr.cfg.sb_min, "Lower clamp for the safety band")->capture_default_str();
    t->add_option("--sb-max", tr.cfg.sb_max, "Upper clamp for the safety band")->capture_default_str();
    t->add_option("--max-epochs", tr.cfg.max_epochs, "Epoch limit")->capture_default_str();
    t->add_option("--seed", tr.cfg.seed, "Seed for the initial binary directions")
        ->capture_default_str();
    t->add_flag("--parallel-nonreference", tr.parallel,
                "Train identities concurrently with per-identity bands (not the reference loop)");
    t->add_option("--jobs", tr.jobs, "Worker threads for --parallel-nonreference")
        ->capture_default_str()
        ->check(CLI::PositiveNumber);
    t->add_option("--out", tr.out, "Output directory (default $IRISDD_OUT_DIR or .)");

    EvalOpts ev;
    ev.out = default_out_dir();
    auto* e = app.add_subcommand("eval", "Score all-to-all comparisons and report separation");
    e->add_option("--data", ev.data, "Dataset file or generate output directory")->required();
    e->add_option("--model", ev.model, "Trained model; Hamming baseline when absent");
    e->add_option("--split", ev.split, "Split to evaluate when --data is a directory")
        ->check(CLI::IsMember({"train", "test", "all"}))
        ->capture_default_str();
    e->add_option("--compare", ev.compare, "Also run the baseline scorer and report the gap change")
        ->check(CLI::IsMember({"baseline"}));
    e->add_option("--t", ev.t, "Threshold when no model is given")->capture_default_str();
    e->add_option("--sb", ev.sb, "Safety band width when no model is given")->capture_default_str();
    e->add_option("--delta", ev.delta, "Wide-margin requirement for the comfortable-separation test")
        ->capture_default_str();
    e->add_option("--jobs", ev.jobs, "Scoring threads")->capture_default_str()->check(CLI::PositiveNumber);
    e->add_option("--out", ev.out, "Output directory (default $IRISDD_OUT_DIR or .)");

    std::string manifest_path;
    std::string rerun_out;
    auto* rr = app.add_subcommand("rerun", "Repeat the command recorded in a manifest");
    rr->add_option("manifest", manifest_path, "manifest.<command>.json")->required();
    rr->add_option("--out", rerun_out, "Redirect outputs to another directory");

    std::vector<std::string> argv(args.begin(), args.end());
    try {
        std::vector<std::string> reversed(argv.rbegin(), argv.rend());
        app.parse(reversed);
    } catch (const CLI::ParseError& ex) {
        if (ex.get_exit_code() == 0) return app.exit(ex, out, err);  // --help, --version
        err << "usage error: " << ex.what() << "\n";
        return exit_usage;
    }

    try {
        if (*g) return cmd_generate(gen, argv, out, err);
        if (*t) return cmd_train(tr, argv, out, err);
        if (*e) return cmd_eval(ev, argv, out);
        return cmd_rerun(manifest_path, rerun_out, out, err);
    } catch (const UsageError& ex) {
        err << "usage error: " << ex.what() << "\n";
        return exit_usage;
    } catch (const DegenerateDirectionError& ex) {
        err << "error: " << ex.what() << "\n";
        return exit_degenerate;
    } catch (const Error& ex) {
        err << "error: " << ex.what() << "\n";
        return exit_io;
    } catch (const nlohmann::json::exception& ex) {
        err << "error: malformed manifest: " << ex.what() << "\n";
        return exit_io;
    }
}

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    return run(args, std::cout, std::cerr);
}

}  // namespace irisdd::cli
