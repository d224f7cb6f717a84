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

#include "cvbgs/grid.hpp"

namespace cvbgs {

/// Reads an 8-bit image (PNG/JPEG/PGM/BMP) as a grayscale frame; 3-channel
/// inputs are reduced with the given luma weights. Throws IoError naming the
/// path on failure.
FrameVector read_frame_gray(const std::filesystem::path& path, double weight_r = 0.299,
                            double weight_g = 0.587, double weight_b = 0.114);

/// Reads an 8-bit image as raw single-channel values (ground truth, ROI).
Grid<std::uint8_t> read_image_u8(const std::filesystem::path& path);

/// Writes a mask as an 8-bit PNG with values 0/255.
void write_mask_png(const std::filesystem::path& path, const ForegroundMask& mask);

void write_u8_png(const std::filesystem::path& path, const Grid<std::uint8_t>& image);

}  // namespace cvbgs
