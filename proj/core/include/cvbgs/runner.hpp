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

#pragma once

#include <filesystem>

#include "cvbgs/pipeline.hpp"

namespace cvbgs {

struct RunOptions {
    std::filesystem::path input_dir;
    std::filesystem::path output_dir;
    PipelineConfig config;
    bool write_masks = true;
    bool write_feedback_log = true;
};

struct RunSummary {
    int frames_total = 0;
    int masks_written = 0;
    int first_mask_index = 0;  ///< index of the first frame after initialization
    int scene_resets = 0;
    std::filesystem::path feedback_log;
};

/// Feeds one image sequence through a BackgroundModel. The first bank_size
/// frames initialize the bank; every later frame yields bin%06d.png (same
/// index as its input frame) plus one row of controller summary statistics
/// (min/mean/max of R, T, v and the foreground fraction) in feedback_log.csv.
RunSummary run_sequence(const RunOptions& options);

}  // namespace cvbgs
