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

#include "cvbgs/dataset.hpp"

#include <algorithm>
#include <cctype>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include "cvbgs/errors.hpp"
#include "cvbgs/image_io.hpp"

namespace cvbgs {

namespace fs = std::filesystem;

namespace {

std::string frame_name(const char* prefix, int index, const std::string& ext) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%s%06d%s", prefix, index, ext.c_str());
    return std::string(buf);
}

// Parses "<prefix><6 digits>.<ext>"; returns the index or nullopt.
std::optional<int> parse_frame_index(const std::string& stem, const char* prefix) {
    const std::size_t plen = std::strlen(prefix);
    if (stem.size() != plen + 6 || stem.compare(0, plen, prefix) != 0) return std::nullopt;
    int value = 0;
    for (std::size_t i = plen; i < stem.size(); ++i) {
        const char c = stem[i];
        if (c < '0' || c > '9') return std::nullopt;
        value = value * 10 + (c - '0');
    }
    return value;
}

bool known_image_extension(const std::string& ext) {
    return ext == ".png" || ext == ".jpg" || ext == ".jpeg" || ext == ".pgm" || ext == ".bmp";
}

}  // namespace

SequenceReader::SequenceReader(std::filesystem::path input_dir, GrayWeights weights)
    : input_dir_(std::move(input_dir)), weights_(weights) {
    if (!fs::is_directory(input_dir_))
        throw IoError("sequence directory does not exist: " + input_dir_.string());

    std::map<int, std::string> found;  // index -> extension
    for (const auto& entry : fs::directory_iterator(input_dir_)) {
        if (!entry.is_regular_file()) continue;
        std::string ext = entry.path().extension().string();
        std::transform(ext.begin(), ext.end(), ext.begin(),
                       [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
        if (!known_image_extension(ext)) continue;
        const auto index = parse_frame_index(entry.path().stem().string(), "in");
        if (index) found.emplace(*index, ext);
    }
    if (found.empty())
        throw IoError("no frames (in%06d.*) found in: " + input_dir_.string());

    first_ = found.begin()->first;
    last_ = found.rbegin()->first;
    extension_ = found.begin()->second;
    for (int i = first_; i <= last_; ++i)
        if (found.find(i) == found.end())
            throw IoError("missing frame in sequence: " +
                          (input_dir_ / frame_name("in", i, extension_)).string());
}

std::filesystem::path SequenceReader::frame_path(int index) const {
    return input_dir_ / frame_name("in", index, extension_);
}

FrameVector SequenceReader::read(int index) const {
    if (index < first_ || index > last_)
        throw IoError("frame index out of range: " + frame_path(index).string());
    return read_frame_gray(frame_path(index), weights_.r, weights_.g, weights_.b);
}

SequenceDescriptor describe_video_dir(const std::filesystem::path& video_dir) {
    SequenceDescriptor desc;
    desc.input_dir = video_dir / "input";
    desc.video = video_dir.filename().string();
    desc.category = video_dir.parent_path().filename().string();

    if (fs::is_directory(video_dir / "groundtruth"))
        desc.groundtruth_dir = video_dir / "groundtruth";

    for (const char* name : {"ROI.bmp", "ROI.png", "roi.bmp", "roi.png", "ROI.jpg"}) {
        if (fs::is_regular_file(video_dir / name)) {
            desc.roi_path = video_dir / name;
            break;
        }
    }

    const fs::path troi = video_dir / "temporalROI.txt";
    if (fs::is_regular_file(troi)) {
        std::ifstream in(troi);
        int first = 0, last = 0;
        if (in >> first >> last) desc.temporal_roi = std::make_pair(first, last);
    }
    return desc;
}

std::vector<SequenceDescriptor> discover_dataset(const std::filesystem::path& root,
                                                 const std::vector<std::string>& categories) {
    if (!fs::is_directory(root)) throw IoError("dataset root does not exist: " + root.string());

    std::vector<SequenceDescriptor> out;
    std::vector<fs::path> category_dirs;
    for (const auto& entry : fs::directory_iterator(root))
        if (entry.is_directory()) category_dirs.push_back(entry.path());
    std::sort(category_dirs.begin(), category_dirs.end());

    for (const auto& cat_dir : category_dirs) {
        const std::string cat = cat_dir.filename().string();
        if (!categories.empty() &&
            std::find(categories.begin(), categories.end(), cat) == categories.end())
            continue;
        std::vector<fs::path> video_dirs;
        for (const auto& entry : fs::directory_iterator(cat_dir))
            if (entry.is_directory() && fs::is_directory(entry.path() / "input"))
                video_dirs.push_back(entry.path());
        std::sort(video_dirs.begin(), video_dirs.end());
        for (const auto& video_dir : video_dirs) out.push_back(describe_video_dir(video_dir));
    }
    return out;
}

ConfusionCounts score_video(const SequenceDescriptor& desc, const std::filesystem::path& mask_dir) {
    if (!desc.groundtruth_dir)
        throw IoError("no ground truth for video: " + desc.category + "/" + desc.video);
    if (!fs::is_directory(mask_dir))
        throw IoError("no result masks for video: " + desc.category + "/" + desc.video +
                      " (expected " + mask_dir.string() + ")");

    std::set<int> mask_indices;
    for (const auto& entry : fs::directory_iterator(mask_dir)) {
        if (!entry.is_regular_file() || entry.path().extension() != ".png") continue;
        const auto index = parse_frame_index(entry.path().stem().string(), "bin");
        if (index) mask_indices.insert(*index);
    }

    std::optional<Grid<std::uint8_t>> roi;
    if (desc.roi_path) roi = read_image_u8(*desc.roi_path);

    ConfusionCounts counts;
    int scored = 0;
    for (int index : mask_indices) {
        if (desc.temporal_roi &&
            (index < desc.temporal_roi->first || index > desc.temporal_roi->second))
            continue;
        const fs::path gt_path = *desc.groundtruth_dir / frame_name("gt", index, ".png");
        if (!fs::is_regular_file(gt_path))
            throw IoError("mask/ground-truth mismatch in " + desc.category + "/" + desc.video +
                          ": missing " + gt_path.string());
        const Grid<std::uint8_t> gt = read_image_u8(gt_path);
        Grid<std::uint8_t> mask_u8 = read_image_u8(mask_dir / frame_name("bin", index, ".png"));
        ForegroundMask mask(mask_u8.height(), mask_u8.width());
        for (std::size_t i = 0; i < mask.size(); ++i) mask[i] = mask_u8[i] >= 128 ? 1 : 0;
        accumulate_confusion(mask, gt, roi ? &*roi : nullptr, counts);
        ++scored;
    }
    if (scored == 0)
        throw IoError("no scoreable frames in " + desc.category + "/" + desc.video +
                      " (mask count does not match the evaluation window)");
    return counts;
}

EvalReport evaluate_results(const std::filesystem::path& results_root,
                            const std::filesystem::path& dataset_root,
                            const std::vector<std::string>& categories) {
    const std::vector<SequenceDescriptor> videos = discover_dataset(dataset_root, categories);
    if (videos.empty()) throw IoError("no videos found under: " + dataset_root.string());

    EvalReport report;
    std::vector<std::string> failures;
    for (const SequenceDescriptor& desc : videos) {
        const fs::path mask_dir = results_root / desc.category / desc.video;
        try {
            VideoScore score;
            score.category = desc.category;
            score.video = desc.video;
            score.counts = score_video(desc, mask_dir);
            score.precision = cvbgs::precision(score.counts);
            score.recall = cvbgs::recall(score.counts);
            score.fscore = cvbgs::f_score(score.counts);
            score.mcc = cvbgs::mcc(score.counts);
            report.videos.push_back(std::move(score));
        } catch (const IoError& e) {
            failures.push_back(e.what());
        }
    }
    if (!failures.empty()) {
        std::string message = "evaluation failed for " + std::to_string(failures.size()) +
                              " video(s):";
        for (const std::string& f : failures) message += "\n  " + f;
        throw IoError(message);
    }

    std::map<std::string, CategoryScore> by_category;
    for (const VideoScore& v : report.videos) {
        CategoryScore& cat = by_category[v.category];
        cat.category = v.category;
        cat.video_count += 1;
        cat.mean_fscore += v.fscore;
        cat.mean_mcc += v.mcc;
        cat.summed += v.counts;
    }
    for (auto& [name, cat] : by_category) {
        cat.mean_fscore /= cat.video_count;
        cat.mean_mcc /= cat.video_count;
        report.categories.push_back(cat);
    }
    for (const CategoryScore& cat : report.categories) {
        report.overall_fscore += cat.mean_fscore;
        report.overall_mcc += cat.mean_mcc;
    }
    report.overall_fscore /= static_cast<double>(report.categories.size());
    report.overall_mcc /= static_cast<double>(report.categories.size());
    return report;
}

std::string format_report(const EvalReport& report) {
    std::ostringstream out;
    char line[256];
    out << "per-video scores\n";
    std::snprintf(line, sizeof(line), "  %-24s %-24s %10s %10s %10s %10s\n", "category", "video",
                  "precision", "recall", "fscore", "mcc");
    out << line;
    for (const VideoScore& v : report.videos) {
        std::snprintf(line, sizeof(line), "  %-24s %-24s %10.4f %10.4f %10.4f %10.4f\n",
                      v.category.c_str(), v.video.c_str(), v.precision, v.recall, v.fscore, v.mcc);
        out << line;
    }
    out << "\nper-category means\n";
    std::snprintf(line, sizeof(line), "  %-24s %8s %12s %12s\n", "category", "videos",
                  "fscore (%)", "mcc (x100)");
    out << line;
    for (const CategoryScore& c : report.categories) {
        std::snprintf(line, sizeof(line), "  %-24s %8d %12.2f %12.2f\n", c.category.c_str(),
                      c.video_count, 100.0 * c.mean_fscore, 100.0 * c.mean_mcc);
        out << line;
    }
    std::snprintf(line, sizeof(line),
                  "\noverall: fscore %.4f (%.2f%%), mcc %.4f (%.2f x100)\n",
                  report.overall_fscore, 100.0 * report.overall_fscore, report.overall_mcc,
                  100.0 * report.overall_mcc);
    out << line;
    return out.str();
}

void write_report_csv(const EvalReport& report, const std::filesystem::path& csv_path) {
    if (!csv_path.parent_path().empty()) fs::create_directories(csv_path.parent_path());
    std::ofstream out(csv_path);
    if (!out) throw IoError("cannot write report: " + csv_path.string());

    out << "category,video,TP,TN,FP,FN,precision,recall,fscore,mcc\n";
    out.precision(12);
    for (const VideoScore& v : report.videos) {
        out << v.category << ',' << v.video << ',' << v.counts.tp << ',' << v.counts.tn << ','
            << v.counts.fp << ',' << v.counts.fn << ',' << v.precision << ',' << v.recall << ','
            << v.fscore << ',' << v.mcc << '\n';
    }
    for (const CategoryScore& c : report.categories) {
        out << c.category << ",(category mean),,,,,,," << c.mean_fscore << ',' << c.mean_mcc
            << '\n';
    }
    out << ",(overall),,,,,,," << report.overall_fscore << ',' << report.overall_mcc << '\n';
}

}  // namespace cvbgs
