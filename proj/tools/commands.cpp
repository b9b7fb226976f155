#include "commands.hpp"

#include <algorithm>
#include <filesystem>
#include <map>
#include <mutex>

#include "CLI11.hpp"
#include "ldsym/error.hpp"
#include "ldsym/io.hpp"
#include "ldsym/parallel.hpp"
#include "ldsym/pipeline.hpp"
#include "ldsym/render.hpp"

namespace ldsym::cli {

namespace fs = std::filesystem;

namespace {

int exit_code(ErrorKind kind) {
    switch (kind) {
        case ErrorKind::Config:
            return kBadConfig;
        case ErrorKind::NoEvidence:
        case ErrorKind::DegeneratePair:
        case ErrorKind::DegenerateExtent:
            return kNoEvidence;
        case ErrorKind::InvalidInput:
        case ErrorKind::InvalidBenchmark:
            return kBadInput;
    }
    return kBadInput;
}

bool is_image_file(const fs::path& p) {
    std::string ext = p.extension().string();
    std::transform(ext.begin(), ext.end(), ext.begin(), [](unsigned char c) { return std::tolower(c); });
    return ext == ".png" || ext == ".jpg" || ext == ".jpeg";
}

/// Config file, then --set pairs, then per-key flags.
struct ConfigFlags {
    std::string file;
    std::vector<std::string> sets;
    std::map<std::string, std::string> keyed;

    void attach(CLI::App& app) {
        app.add_option("--config", file, "Flat JSON config file")->check(CLI::ExistingFile);
        app.add_option("--set", sets, "Override KEY=VALUE (repeatable)");
        for (const auto& key : config_keys()) {
            auto* opt = app.add_option_function<std::string>(
                "--" + key, [this, key](const std::string& v) { keyed[key] = v; }, "Override " + key);
            opt->group("Config keys");
        }
    }

    PipelineConfig resolve() const {
        PipelineConfig config = file.empty() ? PipelineConfig{} : load_config(file);
        for (const auto& kv : sets) {
            const auto eq = kv.find('=');
            if (eq == std::string::npos) throw Error(ErrorKind::Config, "--set expects KEY=VALUE, got '" + kv + "'");
            set_config_value(config, kv.substr(0, eq), kv.substr(eq + 1));
        }
        for (const auto& [key, value] : keyed) set_config_value(config, key, value);
        config.validate();
        return config;
    }
};

struct DetectArgs {
    std::vector<std::string> inputs;
    std::string output;
    std::string dump_features, dump_candidates, dump_density, write_config;
    ConfigFlags config;
};

int detect_one(const std::string& input, const std::string& output, const DetectArgs& args,
               const PipelineConfig& config, std::ostream& err) {
    try {
        const GrayImage image = load_image(input);
        const DetectionResult result = detect(image, config);
        if (!args.dump_features.empty()) atomic_write_file(args.dump_features, features_to_json(result.features));
        if (!args.dump_candidates.empty())
            atomic_write_file(args.dump_candidates, candidates_to_csv(result.candidates));
        if (!args.dump_density.empty()) {
            atomic_write_file(args.dump_density + ".csv", density_to_csv(result.density));
            atomic_write_file(args.dump_density + ".json", density_header_json(result.density));
        }
        atomic_write_file(output, detections_to_json(result.axes));
        return kOk;
    } catch (const Error& e) {
        err << input << ": " << e.what() << "\n";
        return exit_code(e.kind());
    }
}

int cmd_detect(const DetectArgs& args, std::ostream& out, std::ostream& err) {
    const PipelineConfig config = args.config.resolve();
    if (!args.write_config.empty()) atomic_write_file(args.write_config, config_to_json(config));

    std::vector<fs::path> images;
    bool batch = args.inputs.size() > 1;
    for (const auto& in : args.inputs) {
        const fs::path p(in);
        if (fs::is_directory(p)) {
            batch = true;
            std::vector<fs::path> found;
            for (const auto& entry : fs::directory_iterator(p))
                if (entry.is_regular_file() && is_image_file(entry.path())) found.push_back(entry.path());
            std::sort(found.begin(), found.end());
            images.insert(images.end(), found.begin(), found.end());
        } else {
            images.push_back(p);
        }
    }
    if (!batch) return detect_one(images.front().string(), args.output, args, config, err);

    if (!args.dump_features.empty() || !args.dump_candidates.empty() || !args.dump_density.empty())
        throw Error(ErrorKind::Config, "debug dumps are only available for a single input image");
    fs::create_directories(args.output);

    // Images run in parallel; each image's pipeline is single-threaded.
    PipelineConfig per_image = config;
    per_image.threads = 1;
    std::vector<int> codes(images.size(), kOk);
    std::mutex err_lock;
    parallel_for(images.size(), config.threads, [&](std::size_t begin, std::size_t end) {
        for (std::size_t n = begin; n < end; ++n) {
            std::ostringstream local;
            const fs::path target = fs::path(args.output) / (images[n].stem().string() + ".json");
            codes[n] = detect_one(images[n].string(), target.string(), args, per_image, local);
            if (!local.str().empty()) {
                std::lock_guard lock(err_lock);
                err << local.str();
            }
        }
    });
    std::size_t ok = static_cast<std::size_t>(std::count(codes.begin(), codes.end(), kOk));
    out << ok << "/" << images.size() << " images processed\n";
    for (int c : codes)
        if (c != kOk) return c;
    return kOk;
}

struct RenderArgs {
    std::string image, detections, output;
    bool heatmap = false;
    ConfigFlags config;
};

int cmd_render(const RenderArgs& args, std::ostream&, std::ostream&) {
    RgbImage canvas = load_rgb(args.image);
    const auto axes = detections_from_json(read_text_file(args.detections));
    canvas = draw_axes(std::move(canvas), axes);
    if (args.heatmap) {
        const PipelineConfig config = args.config.resolve();
        const DetectionResult result = detect(load_image(args.image), config);
        canvas = hconcat(canvas, density_heatmap(result.density, canvas.height));
    }
    save_png(canvas, args.output);
    return kOk;
}

struct EvalArgs {
    std::string manifest, detections_dir, output, pr_output;
    ConfigFlags config;
};

std::vector<ImageEvaluation> load_benchmark(const EvalArgs& args) {
    std::vector<ImageEvaluation> images;
    for (const auto& entry : read_manifest(args.manifest)) {
        ImageEvaluation e;
        e.ground_truth = parse_ground_truth(read_text_file(entry.gt));
        const fs::path det = fs::path(args.detections_dir) / (entry.name + ".json");
        if (fs::exists(det)) e.detections = as_detections(detections_from_json(read_text_file(det.string())));
        images.push_back(std::move(e));
    }
    return images;
}

int cmd_eval(const EvalArgs& args, std::ostream& out, std::ostream&) {
    const PipelineConfig config = args.config.resolve();
    const PrCurve curve = pr_curve(load_benchmark(args), config.cluster);
    atomic_write_file(args.output, report_to_json(curve));
    const std::string pr_path =
        args.pr_output.empty() ? (fs::path(args.output).replace_extension(".pr.csv")).string() : args.pr_output;
    atomic_write_file(pr_path, pr_curve_to_csv(curve));
    const auto& best = curve.points[curve.best];
    out << "max F1 = " << best.report.f1 << " (precision " << best.report.precision << ", recall "
        << best.report.recall << ", threshold " << best.threshold << ")\n";
    return kOk;
}

int cmd_pr_curve(const EvalArgs& args, std::ostream& out, std::ostream&) {
    const PipelineConfig config = args.config.resolve();
    const PrCurve curve = pr_curve(load_benchmark(args), config.cluster);
    atomic_write_file(args.output, pr_curve_to_csv(curve));
    out << "max F1 = " << curve.max_f1() << "\n";
    return kOk;
}

struct ConvertArgs {
    std::string input, output, format = "psu";
};

int cmd_convert_gt(const ConvertArgs& args, std::ostream& out, std::ostream&) {
    const auto axes = convert_ground_truth(read_text_file(args.input), args.format);
    atomic_write_file(args.output, ground_truth_to_text(axes));
    out << axes.size() << " axes written to " << args.output << "\n";
    return kOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Multiple reflection-symmetry detection with linear-directional kernel density voting", "ldsym"};
    app.require_subcommand(1);

    DetectArgs detect_args;
    auto* detect_cmd = app.add_subcommand("detect", "Detect symmetry axes in one image, several, or a directory");
    detect_cmd->add_option("inputs", detect_args.inputs, "Image files or directories")->required();
    detect_cmd->add_option("-o,--output", detect_args.output, "Detection JSON (single image) or output directory")
        ->required();
    detect_cmd->add_option("--dump-features", detect_args.dump_features, "Write the feature list as JSON");
    detect_cmd->add_option("--dump-candidates", detect_args.dump_candidates, "Write axis candidates as CSV");
    detect_cmd->add_option("--dump-density", detect_args.dump_density, "Write PREFIX.csv and PREFIX.json");
    detect_cmd->add_option("--write-config", detect_args.write_config, "Write the effective config");
    detect_args.config.attach(*detect_cmd);

    RenderArgs render_args;
    auto* render_cmd = app.add_subcommand("render", "Draw detected axes over the image");
    render_cmd->add_option("image", render_args.image)->required()->check(CLI::ExistingFile);
    render_cmd->add_option("detections", render_args.detections)->required()->check(CLI::ExistingFile);
    render_cmd->add_option("-o,--output", render_args.output, "Output PNG")->required();
    render_cmd->add_flag("--heatmap", render_args.heatmap, "Append the density grid as a side panel");
    render_args.config.attach(*render_cmd);

    EvalArgs eval_args;
    auto* eval_cmd = app.add_subcommand("eval", "Score detections against ground truth");
    eval_cmd->add_option("manifest", eval_args.manifest)->required()->check(CLI::ExistingFile);
    eval_cmd->add_option("detections_dir", eval_args.detections_dir)->required();
    eval_cmd->add_option("-o,--output", eval_args.output, "Report JSON")->required();
    eval_cmd->add_option("--pr-output", eval_args.pr_output, "PR-curve CSV (default: <report>.pr.csv)");
    eval_args.config.attach(*eval_cmd);

    EvalArgs pr_args;
    auto* pr_cmd = app.add_subcommand("pr-curve", "Write the precision-recall curve of a benchmark");
    pr_cmd->add_option("manifest", pr_args.manifest)->required()->check(CLI::ExistingFile);
    pr_cmd->add_option("detections_dir", pr_args.detections_dir)->required();
    pr_cmd->add_option("-o,--output", pr_args.output, "PR-curve CSV")->required();
    pr_args.config.attach(*pr_cmd);

    ConvertArgs convert_args;
    auto* convert_cmd = app.add_subcommand("convert-gt", "Convert PSU / NY annotations to canonical ground truth");
    convert_cmd->add_option("input", convert_args.input)->required()->check(CLI::ExistingFile);
    convert_cmd->add_option("-o,--output", convert_args.output)->required();
    convert_cmd->add_option("--format", convert_args.format, "psu, ny or canonical")
        ->check(CLI::IsMember({"psu", "ny", "canonical"}));

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kOk;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return kOk;
    } catch (const CLI::ParseError& e) {
        err << e.what() << "\n";
        return kBadInput;
    }

    try {
        if (*detect_cmd) return cmd_detect(detect_args, out, err);
        if (*render_cmd) return cmd_render(render_args, out, err);
        if (*eval_cmd) return cmd_eval(eval_args, out, err);
        if (*pr_cmd) return cmd_pr_curve(pr_args, out, err);
        if (*convert_cmd) return cmd_convert_gt(convert_args, out, err);
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        return exit_code(e.kind());
    } catch (const fs::filesystem_error& e) {
        err << "error: " << e.what() << "\n";
        return kBadInput;
    }
    return kBadInput;
}

}  // namespace ldsym::cli
