// Copyright 2026 the cvbgs authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <CLI11.hpp>
#include <cstdio>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "cvbgs/config.hpp"
#include "cvbgs/dataset.hpp"
#include "cvbgs/errors.hpp"
#include "cvbgs/runner.hpp"
#include "cvbgs/synth.hpp"

namespace fs = std::filesystem;

namespace {

// Exit codes: 0 success, 1 usage, 2 I/O, 3 config.
constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitIo = 2;
constexpr int kExitConfig = 3;

struct RunArgs {
    std::string input;
    std::string output;
    std::string config_path;
    std::optional<std::uint64_t> seed;
    std::optional<int> stride;
    std::vector<std::string> categories;
    std::vector<std::string> overrides;  // key=value pairs
    bool no_log = false;
};

struct EvalArgs {
    std::string results;
    std::string dataset;
    std::string output;
    std::vector<std::string> categories;
};

struct SynthArgs {
    std::string scenario = "static_object";
    int length = 100;
    std::string size = "320x240";
    std::string output;
    std::uint64_t seed = 1;
};

cvbgs::PipelineConfig build_config(const RunArgs& args) {
    cvbgs::PipelineConfig config;
    if (!args.config_path.empty()) config = cvbgs::load_config_file(args.config_path);
    for (const std::string& entry : args.overrides) {
        const std::size_t eq = entry.find('=');
        if (eq == std::string::npos)
            throw cvbgs::ConfigError("--set expects key=value, got '" + entry + "'");
        cvbgs::apply_config_entry(config, entry.substr(0, eq), entry.substr(eq + 1));
    }
    if (args.seed) config.rng_seed = *args.seed;
    if (args.stride) config.recompute_stride = *args.stride;
    config.validate();
    return config;
}

bool has_frames(const fs::path& dir) {
    if (!fs::is_directory(dir)) return false;
    for (const auto& entry : fs::directory_iterator(dir)) {
        const std::string stem = entry.path().stem().string();
        if (entry.is_regular_file() && stem.size() == 8 && stem.rfind("in", 0) == 0) return true;
    }
    return false;
}

void run_one(const fs::path& input, const fs::path& output, const cvbgs::PipelineConfig& config,
             bool no_log) {
    cvbgs::RunOptions options;
    options.input_dir = input;
    options.output_dir = output;
    options.config = config;
    options.write_feedback_log = !no_log;
    const cvbgs::RunSummary summary = cvbgs::run_sequence(options);
    std::printf("%s: %d frames, %d masks (first bin%06d.png), %d scene reset(s)\n",
                input.string().c_str(), summary.frames_total, summary.masks_written,
                summary.first_mask_index, summary.scene_resets);
}

int command_run(const RunArgs& args) {
    const cvbgs::PipelineConfig config = build_config(args);
    const fs::path input(args.input);
    const fs::path output(args.output);

    if (has_frames(input)) {  // a bare frame directory
        run_one(input, output, config, args.no_log);
        return kExitOk;
    }
    if (has_frames(input / "input")) {  // a single video directory
        run_one(input / "input", output, config, args.no_log);
        return kExitOk;
    }
    // Otherwise treat it as a dataset tree and mirror the layout below output.
    const auto videos = cvbgs::discover_dataset(input, args.categories);
    if (videos.empty()) throw cvbgs::IoError("no sequences found under: " + input.string());
    for (const auto& video : videos)
        run_one(video.input_dir, output / video.category / video.video, config, args.no_log);
    return kExitOk;
}

int command_eval(const EvalArgs& args) {
    const cvbgs::EvalReport report =
        cvbgs::evaluate_results(args.results, args.dataset, args.categories);
    std::cout << cvbgs::format_report(report);
    const fs::path out_dir = args.output.empty() ? fs::path(args.results) : fs::path(args.output);
    const fs::path csv = out_dir / "report.csv";
    cvbgs::write_report_csv(report, csv);
    std::printf("report written to %s\n", csv.string().c_str());
    return kExitOk;
}

int command_synth(const SynthArgs& args) {
    const auto scenario = cvbgs::parse_scenario(args.scenario);
    if (!scenario) {
        std::fprintf(stderr, "unknown scenario '%s'\n", args.scenario.c_str());
        return kExitUsage;
    }
    int w = 0, h = 0;
    if (std::sscanf(args.size.c_str(), "%dx%d", &w, &h) != 2 || w < 16 || h < 16) {
        std::fprintf(stderr, "--size expects WIDTHxHEIGHT (e.g. 320x240), got '%s'\n",
                     args.size.c_str());
        return kExitUsage;
    }
    cvbgs::SynthConfig config;
    config.scenario = *scenario;
    config.length = args.length;
    config.width = w;
    config.height = h;
    config.seed = args.seed;
    cvbgs::write_synth_sequence(config, args.output);
    std::printf("wrote %d frames of %s to %s\n", config.length, args.scenario.c_str(),
                args.output.c_str());
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Background subtraction with a common-vector background model"};
    app.require_subcommand(1);

    RunArgs run_args;
    CLI::App* run = app.add_subcommand("run", "Segment an image sequence or dataset tree");
    run->add_option("--input", run_args.input, "Frame directory, video directory or dataset root")
        ->required();
    run->add_option("--output", run_args.output, "Directory for bin%06d.png masks")->required();
    run->add_option("--config", run_args.config_path, "key=value config file");
    run->add_option("--seed", run_args.seed, "Override rng_seed");
    run->add_option("--stride", run_args.stride, "Override recompute_stride");
    run->add_option("--categories", run_args.categories, "Dataset categories to process")
        ->delimiter(',');
    run->add_option("--set", run_args.overrides, "Ad-hoc config override (key=value)");
    run->add_flag("--no-log", run_args.no_log, "Skip the per-frame feedback log");

    EvalArgs eval_args;
    CLI::App* eval = app.add_subcommand("eval", "Score result masks against ground truth");
    eval->add_option("results", eval_args.results, "Results tree (<category>/<video>/bin*.png)")
        ->required();
    eval->add_option("dataset", eval_args.dataset, "Dataset tree (CDnet 2014 layout)")
        ->required();
    eval->add_option("--output", eval_args.output, "Directory for report.csv");
    eval->add_option("--categories", eval_args.categories, "Categories to score")
        ->delimiter(',');

    SynthArgs synth_args;
    CLI::App* synth = app.add_subcommand("synth", "Generate a synthetic test sequence");
    synth->add_option("--scenario", synth_args.scenario,
                      "static_object | dynamic_texture | illumination_ramp | scene_cut | "
                      "intermittent_stop")
        ->required();
    synth->add_option("--length", synth_args.length, "Number of frames")->required();
    synth->add_option("--size", synth_args.size, "Frame size WIDTHxHEIGHT (default 320x240)");
    synth->add_option("--output", synth_args.output, "Output directory")->required();
    synth->add_option("--seed", synth_args.seed, "Generator seed");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitUsage;
    }

    try {
        if (app.got_subcommand(run)) return command_run(run_args);
        if (app.got_subcommand(eval)) return command_eval(eval_args);
        if (app.got_subcommand(synth)) return command_synth(synth_args);
    } catch (const cvbgs::ConfigError& e) {
        std::fprintf(stderr, "config error: %s\n", e.what());
        return kExitConfig;
    } catch (const cvbgs::IoError& e) {
        std::fprintf(stderr, "I/O error: %s\n", e.what());
        return kExitIo;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kExitIo;
    }
    return kExitUsage;
}
