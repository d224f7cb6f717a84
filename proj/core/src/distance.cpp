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

#include "cvbgs/distance.hpp"

#include <cmath>

namespace cvbgs {

DistanceMap dist_l1(const FrameVector& test, const FrameVector& bank_frame) {
    require_same_size(test, bank_frame, "dist_l1");
    DistanceMap out(test.height(), test.width());
    const double* a = test.data();
    const double* b = bank_frame.data();
    double* o = out.data();
    for (std::size_t i = 0; i < out.size(); ++i) o[i] = std::abs(a[i] - b[i]);
    return out;
}

DistanceMap dist_gmag(const FrameVector& test, const FrameVector& mean_bg,
                      const CrossProjectionTensor& tensor) {
    require_same_size(test, mean_bg, "dist_gmag");
    require_same_size(test, tensor.d11, "dist_gmag");

    const GradientField tf = apply_tensor(sobel_x(test), sobel_y(test), tensor);
    const GradientField bf = apply_tensor(sobel_x(mean_bg), sobel_y(mean_bg), tensor);

    DistanceMap out(test.height(), test.width());
    for (std::size_t i = 0; i < out.size(); ++i)
        out[i] = std::abs(tf.magnitude[i] - bf.magnitude[i]);
    return out;
}

DistanceMap dist_cva(const DiscriminativeCommonVector& test_dcv, const CommonVector& bg_common) {
    require_same_size(test_dcv.values, bg_common.values, "dist_cva");
    DistanceMap out(test_dcv.values.height(), test_dcv.values.width());
    for (std::size_t i = 0; i < out.size(); ++i)
        out[i] = std::abs(test_dcv.values[i] - bg_common.values[i]);
    return out;
}

DistanceMap combine_distance_maps(const DistanceMap& l1, const DistanceMap& gmag,
                                  const DistanceMap& cva, double l1_gate) {
    require_same_size(l1, gmag, "combine_distance_maps");
    require_same_size(l1, cva, "combine_distance_maps");
    DistanceMap out(l1.height(), l1.width());
    for (std::size_t i = 0; i < out.size(); ++i)
        out[i] = l1[i] > l1_gate ? l1[i] + gmag[i] + cva[i] : 0.0;
    return out;
}

DistanceMap combined_distance(const FrameVector& test, const FrameVector& bank_frame,
                              const FrameVector& mean_bg, const CrossProjectionTensor& tensor,
                              const DiscriminativeCommonVector& test_dcv,
                              const CommonVector& bg_common, double l1_gate) {
    return combine_distance_maps(dist_l1(test, bank_frame), dist_gmag(test, mean_bg, tensor),
                                 dist_cva(test_dcv, bg_common), l1_gate);
}

}  // namespace cvbgs
