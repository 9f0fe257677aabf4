#include "cosenet/cli.hpp"

#include <chrono>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <map>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "cosenet/error.hpp"
#include "cosenet/io.hpp"
#include "cosenet/pipeline.hpp"
#include "cosenet/regressor.hpp"
#include "cosenet/synthgen.hpp"
#include "cosenet/tuner.hpp"

namespace cosenet {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

/// Reproducibility record written next to each command's output.
struct RunManifest {
    explicit RunManifest(std::string cmd) : command(std::move(cmd)) {}

    std::string command;
    json parameters = json::object();
    std::uint64_t seed = 0;
    std::vector<std::string> inputs;
    std::vector<std::string> outputs;
    std::chrono::steady_clock::time_point started = std::chrono::steady_clock::now();

    void write(const fs::path& path) const {
        const std::chrono::duration<double> elapsed = std::chrono::steady_clock::now() - started;
        const json doc = {
            {"command", command},          {"parameters", parameters},
            {"seed", seed},                {"inputs", inputs},
            {"outputs", outputs},          {"tool_version", kToolVersion},
            {"duration_seconds", elapsed.count()},
        };
        std::ofstream out(path);
        if (!out) throw Error(ErrorCode::IoError, "cannot write manifest " + path.string());
        out << doc.dump(2) << '\n';
    }
};

void ensure_dir(const fs::path& dir) {
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec) throw Error(ErrorCode::IoError, "cannot create directory " + dir.string());
}

void ensure_parent(const fs::path& file) {
    if (file.has_parent_path()) ensure_dir(file.parent_path());
}

fs::path manifest_for(const fs::path& output) {
    return output.string() + ".manifest.json";
}

ScalingParams parse_scale(const std::string& text) {
    if (text.empty()) return ScalingParams::identity();
    std::vector<double> values;
    std::stringstream ss(text);
    std::string field;
    while (std::getline(ss, field, ',')) {
        try {
            std::size_t used = 0;
            values.push_back(std::stod(field, &used));
            if (used != field.size()) throw std::invalid_argument(field);
        } catch (const std::exception&) {
            throw Error(ErrorCode::InvalidArgument, "--scale expects A,B,omega; got '" + text + "'");
        }
    }
    if (values.size() != 3) {
        throw Error(ErrorCode::InvalidArgument, "--scale expects A,B,omega; got '" + text + "'");
    }
    ScalingParams p{values[0], values[1], values[2]};
    p.check();
    return p;
}

json report_json(const MetricReport& r) {
    return {{"n", r.n}, {"mse", r.mse}, {"mae", r.mae}, {"r2", r.r2},
            {"wd", r.wd}, {"wd_percent", r.wd * 100.0}};
}

void print_report(std::ostream& out, const std::string& label, const MetricReport& r) {
    out << std::fixed << std::setprecision(6) << label << ": n=" << r.n << " mse=" << r.mse
        << " mae=" << r.mae << " r2=" << r.r2 << " wd=" << r.wd << '\n';
    out.unsetf(std::ios::floatfield);
}

// --- synth ---------------------------------------------------------------

struct SynthArgs {
    SynthSpec spec;
    fs::path out;
};

int cmd_synth(const SynthArgs& args, std::ostream& out) {
    RunManifest manifest("synth");
    const SynthSpec& spec = args.spec;
    spec.check();
    const SynthDataset ds = generate_dataset(spec);
    ensure_dir(args.out);
    write_split(args.out, Split::Train, ds.train);
    write_split(args.out, Split::Validation, ds.validation);
    write_split(args.out, Split::Test, ds.test);
    write_synth_spec(args.out, spec);

    manifest.seed = spec.seed;
    manifest.parameters = {{"size", spec.size},           {"noise_mean", spec.noise_mean},
                           {"noise_var", spec.noise_var}, {"groups_mean", spec.groups_mean},
                           {"groups_var", spec.groups_var}, {"count", spec.count}};
    for (auto split : {Split::Train, Split::Validation, Split::Test}) {
        manifest.outputs.push_back(split_path(args.out, split).string());
    }
    manifest.outputs.push_back((args.out / "spec.json").string());
    manifest.write(args.out / "manifest.json");

    out << "wrote " << ds.train.size() << "/" << ds.validation.size() << "/" << ds.test.size()
        << " train/validation/test records to " << args.out.string() << '\n';
    return kExitOk;
}

// --- train ---------------------------------------------------------------

struct TrainArgs {
    fs::path dataset;
    std::size_t throughput = 0;
    double lambda = 1.0;
    bool standardize = false;
    fs::path out;
};

void check_record_sizes(const std::vector<SynthRecord>& records, std::size_t throughput,
                        const char* split) {
    for (const auto& rec : records) {
        if (rec.matrix.size() != throughput) {
            throw Error(ErrorCode::ShapeMismatch,
                        std::string(split) + " split holds " + std::to_string(rec.matrix.size()) +
                            "x" + std::to_string(rec.matrix.size()) +
                            " matrices but throughput is " + std::to_string(throughput));
        }
    }
}

int cmd_train(const TrainArgs& args, std::ostream& out) {
    RunManifest manifest("train");
    compute_layout(1, args.throughput);  // rejects odd throughput early

    const auto train = read_split(args.dataset, Split::Train);
    const auto test = read_split(args.dataset, Split::Test);
    check_record_sizes(train, args.throughput, "train");
    check_record_sizes(test, args.throughput, "test");

    TrainingMeta meta;
    SynthSpec spec;
    if (read_synth_spec(args.dataset, spec)) {
        meta.noise_mean = spec.noise_mean;
        meta.noise_var = spec.noise_var;
        meta.groups_mean = spec.groups_mean;
        meta.groups_var = spec.groups_var;
        meta.seed = spec.seed;
    }
    const RidgeModel model =
        train_ridge(to_training_set(train, Split::Train), args.lambda, args.standardize, meta);
    ensure_parent(args.out);
    save_model(model, args.out);

    const PipelineConfig cfg{ScalingParams::identity(), MergeConfig{0.5}, &model};
    print_report(out, "train", evaluate_pipeline(train, cfg));
    if (!test.empty()) print_report(out, "test", evaluate_pipeline(test, cfg));

    manifest.parameters = {{"throughput", args.throughput},
                           {"lambda", args.lambda},
                           {"standardize", args.standardize}};
    manifest.seed = meta.seed;
    manifest.inputs = {split_path(args.dataset, Split::Train).string(),
                       split_path(args.dataset, Split::Test).string()};
    manifest.outputs = {args.out.string()};
    manifest.write(manifest_for(args.out));
    return kExitOk;
}

// --- segment -------------------------------------------------------------

struct SegmentArgs {
    fs::path model;
    fs::path input;
    std::string scale;
    double threshold = 0.5;
    fs::path out;
    fs::path emit_matrix;
};

int cmd_segment(const SegmentArgs& args, std::ostream& out) {
    RunManifest manifest("segment");
    const RidgeModel model = load_model(args.model);
    const ScalingParams scaling = parse_scale(args.scale);
    const CorrelationMatrix matrix = validate_matrix(read_matrix_file(args.input));

    const PipelineConfig cfg{scaling, MergeConfig{args.threshold}, &model};
    const SegmentationResult result = segment(matrix, cfg);

    const auto& bits = result.segmentation.bits();
    const json doc = {
        {"size", matrix.size()},
        {"segmentation", std::vector<int>(bits.begin(), bits.end())},
        {"group_starts", group_starts(result.segmentation)},
        {"probabilities", result.probabilities.probs()},
    };
    ensure_parent(args.out);
    {
        std::ofstream f(args.out);
        if (!f) throw Error(ErrorCode::IoError, "cannot write " + args.out.string());
        f << doc.dump(2) << '\n';
    }
    manifest.outputs.push_back(args.out.string());
    if (!args.emit_matrix.empty()) {
        ensure_parent(args.emit_matrix);
        write_matrix_file(args.emit_matrix, result.denoised);
        manifest.outputs.push_back(args.emit_matrix.string());
    }

    manifest.parameters = {{"scale", {scaling.a, scaling.b, scaling.omega}},
                           {"threshold", args.threshold},
                           {"throughput", model.throughput}};
    manifest.inputs = {args.model.string(), args.input.string()};
    manifest.write(manifest_for(args.out));

    out << "segmented " << matrix.size() << " elements into "
        << result.segmentation.group_count() << " groups\n";
    return kExitOk;
}

// --- eval ----------------------------------------------------------------

struct EvalArgs {
    fs::path model;
    fs::path dataset;
    std::string scale;
    double threshold = 0.5;
    std::string split = "test";
    fs::path out;
};

Split parse_split(const std::string& name) {
    if (name == "train") return Split::Train;
    if (name == "validation") return Split::Validation;
    if (name == "test") return Split::Test;
    throw Error(ErrorCode::InvalidArgument, "unknown split '" + name + "'");
}

int cmd_eval(const EvalArgs& args, std::ostream& out) {
    RunManifest manifest("eval");
    const RidgeModel model = load_model(args.model);
    const ScalingParams scaling = parse_scale(args.scale);
    const Split split = parse_split(args.split);
    const auto records = read_split(args.dataset, split);

    const PipelineConfig cfg{scaling, MergeConfig{args.threshold}, &model};
    const MetricReport report = evaluate_pipeline(records, cfg);
    print_report(out, args.split, report);

    if (!args.out.empty()) {
        json doc = report_json(report);
        doc["split"] = args.split;
        ensure_parent(args.out);
        std::ofstream f(args.out);
        if (!f) throw Error(ErrorCode::IoError, "cannot write " + args.out.string());
        f << doc.dump(2) << '\n';

        manifest.parameters = {{"scale", {scaling.a, scaling.b, scaling.omega}},
                               {"threshold", args.threshold},
                               {"split", args.split}};
        manifest.inputs = {args.model.string(), split_path(args.dataset, split).string()};
        manifest.outputs = {args.out.string()};
        manifest.write(manifest_for(args.out));
    }
    return kExitOk;
}

// --- tune ----------------------------------------------------------------

struct TuneArgs {
    std::vector<fs::path> models;
    fs::path dataset;
    std::string algo = "both";
    std::uint64_t seed = 0;
    std::size_t subset = 0;
    fs::path out;
    GaConfig ga;
    PsoConfig pso;
};

std::string format_fixed(double x, int digits) {
    std::ostringstream s;
    s << std::fixed << std::setprecision(digits) << x;
    return s.str();
}

std::string ranking_table(const std::vector<TuningCandidate>& ranked) {
    std::ostringstream s;
    s << "rank\talgorithm\tWD(%)\tA\tB\tomega\tth\tthroughput\n";
    for (std::size_t i = 0; i < ranked.size(); ++i) {
        const auto& c = ranked[i];
        s << i + 1 << '\t' << to_string(c.algorithm) << '\t' << format_fixed(c.fitness * 100.0, 2)
          << '\t' << format_fixed(c.a, 5) << '\t' << format_fixed(c.b, 5) << '\t'
          << format_fixed(c.omega, 5) << '\t' << format_fixed(c.threshold, 5) << '\t'
          << c.throughput << '\n';
    }
    return s.str();
}

json candidate_json(const TuningCandidate& c) {
    return {{"algorithm", to_string(c.algorithm)},
            {"fitness_wd", c.fitness},
            {"a", c.a},
            {"b", c.b},
            {"omega", c.omega},
            {"threshold", c.threshold},
            {"throughput", c.throughput}};
}

int cmd_tune(const TuneArgs& args, std::ostream& out) {
    RunManifest manifest("tune");
    if (args.algo != "ga" && args.algo != "pso" && args.algo != "both") {
        throw Error(ErrorCode::InvalidArgument, "--algo must be ga, pso or both");
    }
    ModelBank bank;
    for (const auto& path : args.models) {
        RidgeModel m = load_model(path);
        const std::size_t t = m.throughput;
        if (t != 8 && t != 16 && t != 32) {
            throw Error(ErrorCode::InvalidArgument,
                        "tuning supports throughputs 8, 16 and 32; " + path.string() + " has " +
                            std::to_string(t));
        }
        bank[t] = std::move(m);
    }
    if (bank.empty()) throw Error(ErrorCode::MissingModel, "no models given");

    auto records = read_split(args.dataset, Split::Validation);
    if (args.subset > 0 && records.size() > args.subset) records.erase(records.begin() + static_cast<std::ptrdiff_t>(args.subset), records.end());
    std::vector<LabeledMatrix> validation;
    validation.reserve(records.size());
    for (auto& rec : records) validation.push_back({rec.matrix, rec.segmentation});

    FitnessCache fitness(bank, validation);
    GaConfig ga = args.ga;
    PsoConfig pso = args.pso;
    ga.seed = pso.seed = args.seed;

    std::vector<OptimizerResult> ga_runs;
    std::vector<OptimizerResult> pso_runs;
    for (const auto& [t, model] : bank) {
        if (args.algo != "pso") ga_runs.push_back(ga_optimize(ga, t, fitness));
        if (args.algo != "ga") pso_runs.push_back(pso_optimize(pso, t, fitness));
    }
    const Selection sel = select_best(ga_runs, pso_runs, fitness);

    constexpr std::size_t kReported = 10;
    std::vector<TuningCandidate> top(sel.pooled.begin(),
                                     sel.pooled.begin() +
                                         static_cast<std::ptrdiff_t>(std::min(kReported, sel.pooled.size())));
    ensure_dir(args.out);
    const auto report_path = args.out / "ranking.tsv";
    const auto best_path = args.out / "best.json";
    {
        std::ofstream f(report_path);
        if (!f) throw Error(ErrorCode::IoError, "cannot write " + report_path.string());
        f << ranking_table(top);
    }
    {
        std::ofstream f(best_path);
        if (!f) throw Error(ErrorCode::IoError, "cannot write " + best_path.string());
        f << candidate_json(sel.best).dump(2) << '\n';
    }
    out << ranking_table(top);

    manifest.seed = args.seed;
    manifest.parameters = {
        {"algo", args.algo},
        {"validation_records", validation.size()},
        {"ga", {{"epochs", ga.epochs}, {"population", ga.population},
                {"offspring_per_epoch", ga.offspring_per_epoch},
                {"crossover_rate", ga.crossover_rate}, {"mutation_variance", ga.mutation_variance}}},
        {"pso", {{"particles", pso.particles}, {"inertia", pso.inertia},
                 {"cognition", pso.cognition}, {"social", pso.social},
                 {"iterations", pso.iterations}}},
        {"pipeline_evaluations", fitness.evaluations()},
    };
    for (const auto& m : args.models) manifest.inputs.push_back(m.string());
    manifest.inputs.push_back(split_path(args.dataset, Split::Validation).string());
    manifest.outputs = {report_path.string(), best_path.string()};
    manifest.write(args.out / "manifest.json");
    return kExitOk;
}

int exit_code_for(ErrorCode code) {
    switch (code) {
        case ErrorCode::IoError:
        case ErrorCode::FormatVersionMismatch:
            return kExitIo;
        default:
            return kExitValidation;
    }
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Segmentation of noisy, spatially ordered correlation matrices", "cosenet"};
    app.set_version_flag("--version", kToolVersion);
    app.require_subcommand(1);

    SynthArgs synth;
    auto* synth_cmd = app.add_subcommand("synth", "Generate a synthetic matrix/segmentation dataset");
    synth_cmd->add_option("--size", synth.spec.size, "Matrix size")->required()->check(CLI::PositiveNumber);
    synth_cmd->add_option("--noise-mean", synth.spec.noise_mean, "Gaussian noise mean")->required();
    synth_cmd->add_option("--noise-var", synth.spec.noise_var, "Gaussian noise variance")
        ->required()->check(CLI::NonNegativeNumber);
    synth_cmd->add_option("--groups-mean", synth.spec.groups_mean, "Mean number of groups")->required();
    synth_cmd->add_option("--groups-var", synth.spec.groups_var, "Variance of the number of groups")
        ->required()->check(CLI::NonNegativeNumber);
    synth_cmd->add_option("--count", synth.spec.count, "Number of records")->required()->check(CLI::PositiveNumber);
    synth_cmd->add_option("--seed", synth.spec.seed, "RNG seed")->required();
    synth_cmd->add_option("--out", synth.out, "Output directory")->required();

    TrainArgs train;
    auto* train_cmd = app.add_subcommand("train", "Train a ridge model on a dataset's train split");
    train_cmd->add_option("--dataset", train.dataset, "Dataset directory")->required();
    train_cmd->add_option("--throughput", train.throughput, "Window size T")->required();
    train_cmd->add_option("--lambda", train.lambda, "Ridge regularization strength")
        ->capture_default_str()->check(CLI::NonNegativeNumber);
    train_cmd->add_flag("--standardize", train.standardize, "Standardize features before fitting");
    train_cmd->add_option("--out", train.out, "Model file")->required();

    SegmentArgs seg;
    auto* seg_cmd = app.add_subcommand("segment", "Segment one correlation matrix");
    seg_cmd->add_option("--model", seg.model, "Model file")->required();
    seg_cmd->add_option("--input", seg.input, "Matrix file (CSV)")->required();
    seg_cmd->add_option("--scale", seg.scale, "Rescaling A,B,omega (default identity)");
    seg_cmd->add_option("--threshold", seg.threshold, "Boundary threshold")
        ->capture_default_str()->check(CLI::Range(0.0, 1.0));
    seg_cmd->add_option("--out", seg.out, "Segmentation output (JSON)")->required();
    seg_cmd->add_option("--emit-matrix", seg.emit_matrix, "Also write the denoised block matrix here");

    EvalArgs eval;
    auto* eval_cmd = app.add_subcommand("eval", "Evaluate the full pipeline on a dataset split");
    eval_cmd->add_option("--model", eval.model, "Model file")->required();
    eval_cmd->add_option("--dataset", eval.dataset, "Dataset directory")->required();
    eval_cmd->add_option("--scale", eval.scale, "Rescaling A,B,omega (default identity)");
    eval_cmd->add_option("--threshold", eval.threshold, "Boundary threshold")
        ->capture_default_str()->check(CLI::Range(0.0, 1.0));
    eval_cmd->add_option("--split", eval.split, "train, validation or test")->capture_default_str();
    eval_cmd->add_option("--out", eval.out, "Metric report (JSON)");

    TuneArgs tune;
    auto* tune_cmd = app.add_subcommand("tune", "Tune scaling and threshold with GA and/or PSO");
    tune_cmd->add_option("--models", tune.models, "Model files, one per throughput")->required();
    tune_cmd->add_option("--dataset", tune.dataset, "Dataset directory (validation split is used)")
        ->required();
    tune_cmd->add_option("--algo", tune.algo, "ga, pso or both")->capture_default_str();
    tune_cmd->add_option("--seed", tune.seed, "RNG seed")->required();
    tune_cmd->add_option("--subset", tune.subset, "Use at most this many validation records (0 = all)");
    tune_cmd->add_option("--out", tune.out, "Output directory")->required();
    tune_cmd->add_option("--ga-epochs", tune.ga.epochs)->capture_default_str();
    tune_cmd->add_option("--ga-population", tune.ga.population)->capture_default_str();
    tune_cmd->add_option("--ga-offspring", tune.ga.offspring_per_epoch)->capture_default_str();
    tune_cmd->add_option("--pso-particles", tune.pso.particles)->capture_default_str();
    tune_cmd->add_option("--pso-iterations", tune.pso.iterations)->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kExitOk : kExitUsage;
    }

    try {
        if (*synth_cmd) return cmd_synth(synth, out);
        if (*train_cmd) return cmd_train(train, out);
        if (*seg_cmd) return cmd_segment(seg, out);
        if (*eval_cmd) return cmd_eval(eval, out);
        if (*tune_cmd) return cmd_tune(tune, out);
    } catch (const Error& e) {
        err << "error [" << to_string(e.code()) << "]: " << e.what() << '\n';
        return exit_code_for(e.code());
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return kExitIo;
    }
    return kExitUsage;
}

}  // namespace cosenet
