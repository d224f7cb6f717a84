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

#include "cvbgs/cva.hpp"
#include "cvbgs/gradient.hpp"
#include "cvbgs/grid.hpp"

namespace cvbgs {

/// Pixels whose plain intensity difference does not exceed this many grey
/// levels contribute nothing to the combined distance (noise gate).
inline constexpr double kDefaultL1Gate = 1.0;

/// Elementwise |test - bank_frame|.
DistanceMap dist_l1(const FrameVector& test, const FrameVector& bank_frame);

/// Edge-suppressed gradient-magnitude distance: Sobel gradients of test and
/// mean background are both passed through the tensor (built from the mean
/// background) before the absolute magnitude difference is taken. Spatially
/// homogeneous changes such as global illumination offsets vanish here.
DistanceMap dist_gmag(const FrameVector& test, const FrameVector& mean_bg,
                      const CrossProjectionTensor& tensor);

/// Elementwise |DCV(test) - common vector|. Near zero whenever the test frame
/// is one of the bank frames.
DistanceMap dist_cva(const DiscriminativeCommonVector& test_dcv, const CommonVector& bg_common);

/// Gated sum of the three component maps: l1 + gmag + cva where l1 > gate,
/// 0 elsewhere.
DistanceMap combine_distance_maps(const DistanceMap& l1, const DistanceMap& gmag,
                                  const DistanceMap& cva, double l1_gate = kDefaultL1Gate);

/// Convenience form computing every component from raw inputs. The gmag and
/// cva terms do not depend on the bank frame, so batch callers compute those
/// once per test frame and use combine_distance_maps per bank frame.
DistanceMap combined_distance(const FrameVector& test, const FrameVector& bank_frame,
                              const FrameVector& mean_bg, const CrossProjectionTensor& tensor,
                              const DiscriminativeCommonVector& test_dcv,
                              const CommonVector& bg_common, double l1_gate = kDefaultL1Gate);

}  // namespace cvbgs
