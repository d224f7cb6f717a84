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

#include "cvbgs/runner.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <vector>

#include "cvbgs/dataset.hpp"
#include "cvbgs/errors.hpp"
#include "cvbgs/image_io.hpp"

namespace cvbgs {

namespace {

struct MapStats {
    double min = 0, mean = 0, max = 0;
};

MapStats stats_of(const Grid<double>& map) {
    MapStats s{map[0], 0.0, map[0]};
    double sum = 0.0;
    for (double v : map) {
        s.min = std::min(s.min, v);
        s.max = std::max(s.max, v);
        sum += v;
    }
    s.mean = sum / static_cast<double>(map.size());
    return s;
}

}  // namespace

RunSummary run_sequence(const RunOptions& options) {
    options.config.validate();
    SequenceReader reader(options.input_dir, GrayWeights{
                                                 options.config.gray_r, options.config.gray_g,
                                                 options.config.gray_b});

    const int n = options.config.bank_size;
    if (reader.frame_count() <= n)
        throw IoError("sequence has " + std::to_string(reader.frame_count()) +
                      " frames; need more than bank_size (" + std::to_string(n) + "): " +
                      options.input_dir.string());

    RunSummary summary;
    summary.frames_total = reader.frame_count();
    summary.first_mask_index = reader.first_index() + n;

    std::vector<FrameVector> init_frames;
    init_frames.reserve(static_cast<std::size_t>(n));
    for (int i = reader.first_index(); i < reader.first_index() + n; ++i)
        init_frames.push_back(reader.read(i));

    BackgroundModel model(options.config);
    model.initialize(init_frames);
    init_frames.clear();

    std::ofstream log;
    if (options.write_feedback_log) {
        std::filesystem::create_directories(options.output_dir);
        summary.feedback_log = options.output_dir / "feedback_log.csv";
        log.open(summary.feedback_log);
        if (!log) throw IoError("cannot write " + summary.feedback_log.string());
        log << "frame,r_min,r_mean,r_max,t_min,t_mean,t_max,v_min,v_mean,v_max,"
               "dmin_mean,fg_fraction,scene_reset\n";
    }

    char line[256];
    for (int i = reader.first_index() + n; i <= reader.last_index(); ++i) {
        const FrameVector frame = reader.read(i);
        const StepResult result = model.step(frame);
        if (result.scene_reset) ++summary.scene_resets;

        if (options.write_masks) {
            char name[32];
            std::snprintf(name, sizeof(name), "bin%06d.png", i);
            write_mask_png(options.output_dir / name, result.mask);
            ++summary.masks_written;
        }

        if (options.write_feedback_log) {
            const PixelStateMap& state = model.pixel_state();
            const MapStats r = stats_of(state.r);
            const MapStats t = stats_of(state.t);
            const MapStats v = stats_of(state.v);
            const MapStats dm = stats_of(state.d_min);
            std::size_t fg = 0;
            for (const auto label : result.mask) fg += label ? 1 : 0;
            std::snprintf(line, sizeof(line),
                          "%d,%.3f,%.3f,%.3f,%.3f,%.3f,%.3f,%.3f,%.3f,%.3f,%.3f,%.5f,%d\n", i,
                          r.min, r.mean, r.max, t.min, t.mean, t.max, v.min, v.mean, v.max,
                          dm.mean,
                          static_cast<double>(fg) / static_cast<double>(result.mask.size()),
                          result.scene_reset ? 1 : 0);
            log << line;
        }
    }
    return summary;
}

}  // namespace cvbgs
