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

#include <span>

#include "cvbgs/grid.hpp"

namespace cvbgs {

/// Mask clean-up chain; every stage can be switched off to expose the raw
/// decision map.
struct PostProcessConfig {
    bool median_filter = true;  ///< 9x9 binary median
    bool opening = true;        ///< erosion then dilation with a 3x3 box
    bool area_filter = true;    ///< drop 4-connected components below min_blob
    int min_blob = 15;          ///< minimum component area in pixels
};

/// Labels a pixel foreground iff the number of bank frames whose distance
/// reaches the per-pixel threshold exceeds min_count. With the default
/// min_count = N - 1 every bank frame must agree.
ForegroundMask decide_foreground(std::span<const DistanceMap> dists,
                                 const Grid<double>& threshold_map, int min_count);

ForegroundMask post_process(const ForegroundMask& mask, const PostProcessConfig& config = {});

// Individual stages, exposed for testing and tuning. Windows are clipped at
// the image border (only in-bounds pixels vote).
ForegroundMask median_filter_9x9(const ForegroundMask& mask);
ForegroundMask binary_open_3x3(const ForegroundMask& mask);
ForegroundMask remove_small_components(const ForegroundMask& mask, int min_area);

}  // namespace cvbgs
