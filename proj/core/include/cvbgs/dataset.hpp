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
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "cvbgs/grid.hpp"
#include "cvbgs/metrics.hpp"

namespace cvbgs {

/// One video of a CDnet-style tree: numbered frames under input/, optional
/// ground truth, ROI image and temporal evaluation window.
struct SequenceDescriptor {
    std::filesystem::path input_dir;
    std::optional<std::filesystem::path> groundtruth_dir;
    std::optional<std::filesystem::path> roi_path;
    std::optional<std::pair<int, int>> temporal_roi;  ///< inclusive, 1-based
    std::string category;
    std::string video;
};

struct GrayWeights {
    double r = 0.299, g = 0.587, b = 0.114;
};

/// Streams the numbered frames (in%06d.<ext>) of one directory in index
/// order. Construction scans the directory and fails on gaps, naming the
/// missing file.
class SequenceReader {
public:
    explicit SequenceReader(std::filesystem::path input_dir, GrayWeights weights = {});

    int first_index() const { return first_; }
    int last_index() const { return last_; }
    int frame_count() const { return last_ - first_ + 1; }

    std::filesystem::path frame_path(int index) const;
    FrameVector read(int index) const;

private:
    std::filesystem::path input_dir_;
    GrayWeights weights_;
    int first_ = 0;
    int last_ = -1;
    std::string extension_;
};

/// Builds a descriptor from one <video> directory (expects an input/ child;
/// picks up groundtruth/, ROI.* and temporalROI.txt when present).
SequenceDescriptor describe_video_dir(const std::filesystem::path& video_dir);

/// Walks <root>/<category>/<video>/input trees; result sorted by names so runs
/// are deterministic. An empty filter keeps every category.
std::vector<SequenceDescriptor> discover_dataset(const std::filesystem::path& root,
                                                 const std::vector<std::string>& categories = {});

struct VideoScore {
    std::string category;
    std::string video;
    ConfusionCounts counts;
    double precision = 0;
    double recall = 0;
    double fscore = 0;
    double mcc = 0;
};

struct CategoryScore {
    std::string category;
    int video_count = 0;
    double mean_fscore = 0;  ///< unweighted mean over the category's videos
    double mean_mcc = 0;
    ConfusionCounts summed;
};

struct EvalReport {
    std::vector<VideoScore> videos;
    std::vector<CategoryScore> categories;
    double overall_fscore = 0;  ///< mean of the category means
    double overall_mcc = 0;
};

/// Scores the masks of one video (bin%06d.png under mask_dir) against its
/// ground truth. Frames evaluated are those inside the temporal ROI for which
/// a mask file exists; a mask without matching ground truth, or a video with
/// no scoreable frame at all, raises IoError naming the video.
ConfusionCounts score_video(const SequenceDescriptor& desc,
                            const std::filesystem::path& mask_dir);

/// Scores a whole results tree (results_root/<category>/<video>/bin*.png)
/// against the dataset tree and aggregates per video, category and overall.
EvalReport evaluate_results(const std::filesystem::path& results_root,
                            const std::filesystem::path& dataset_root,
                            const std::vector<std::string>& categories = {});

/// Human-readable tables (scores also shown as percentages).
std::string format_report(const EvalReport& report);

/// Per-video CSV: category, video, TP, TN, FP, FN, precision, recall, fscore,
/// mcc. Category and overall rows use "(category mean)" / "(overall)" in the
/// video column with the count columns left empty.
void write_report_csv(const EvalReport& report, const std::filesystem::path& csv_path);

}  // namespace cvbgs
