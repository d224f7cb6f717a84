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

#include "cvbgs/image_io.hpp"

#include <opencv2/core.hpp>
#include <opencv2/imgcodecs.hpp>

#include "cvbgs/errors.hpp"

namespace cvbgs {

FrameVector read_frame_gray(const std::filesystem::path& path, double weight_r, double weight_g,
                            double weight_b) {
    const cv::Mat img = cv::imread(path.string(), cv::IMREAD_UNCHANGED);
    if (img.empty()) throw IoError("cannot read image: " + path.string());
    if (img.depth() != CV_8U)
        throw IoError("expected an 8-bit image: " + path.string());

    FrameVector out(img.rows, img.cols);
    if (img.channels() == 1) {
        for (int y = 0; y < img.rows; ++y) {
            const auto* row = img.ptr<std::uint8_t>(y);
            for (int x = 0; x < img.cols; ++x) out.at(y, x) = static_cast<double>(row[x]);
        }
    } else if (img.channels() == 3 || img.channels() == 4) {
        // OpenCV stores BGR(A).
        const int ch = img.channels();
        for (int y = 0; y < img.rows; ++y) {
            const auto* row = img.ptr<std::uint8_t>(y);
            for (int x = 0; x < img.cols; ++x) {
                const std::uint8_t b = row[x * ch + 0];
                const std::uint8_t g = row[x * ch + 1];
                const std::uint8_t r = row[x * ch + 2];
                out.at(y, x) = weight_r * r + weight_g * g + weight_b * b;
            }
        }
    } else {
        throw IoError("unsupported channel count in image: " + path.string());
    }
    return out;
}

Grid<std::uint8_t> read_image_u8(const std::filesystem::path& path) {
    const cv::Mat img = cv::imread(path.string(), cv::IMREAD_GRAYSCALE);
    if (img.empty()) throw IoError("cannot read image: " + path.string());

    Grid<std::uint8_t> out(img.rows, img.cols);
    for (int y = 0; y < img.rows; ++y) {
        const auto* row = img.ptr<std::uint8_t>(y);
        for (int x = 0; x < img.cols; ++x) out.at(y, x) = row[x];
    }
    return out;
}

void write_mask_png(const std::filesystem::path& path, const ForegroundMask& mask) {
    Grid<std::uint8_t> image(mask.height(), mask.width());
    for (std::size_t i = 0; i < mask.size(); ++i) image[i] = mask[i] ? 255 : 0;
    write_u8_png(path, image);
}

void write_u8_png(const std::filesystem::path& path, const Grid<std::uint8_t>& image) {
    cv::Mat mat(image.height(), image.width(), CV_8UC1);
    for (int y = 0; y < image.height(); ++y) {
        auto* row = mat.ptr<std::uint8_t>(y);
        for (int x = 0; x < image.width(); ++x) row[x] = image.at(y, x);
    }
    if (!path.parent_path().empty()) std::filesystem::create_directories(path.parent_path());
    if (!cv::imwrite(path.string(), mat)) throw IoError("cannot write image: " + path.string());
}

}  // namespace cvbgs
