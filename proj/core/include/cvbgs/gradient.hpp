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

#include "cvbgs/grid.hpp"

namespace cvbgs {

/// Directional gradient pair plus its magnitude map. Units are grey levels
/// per pixel step (3x3 Sobel scaled by 1/8); borders are replicated.
struct GradientField {
    Grid<double> gx;
    Grid<double> gy;
    Grid<double> magnitude;
};

/// Per-pixel symmetric 2x2 operator built from the mean-background gradient:
/// the normalized projector perpendicular to the background edge direction.
/// Applying it to the background gradient itself yields ~0, so background
/// edges are suppressed in every transformed field.
struct CrossProjectionTensor {
    Grid<double> d11;
    Grid<double> d12;
    Grid<double> d22;
};

Grid<double> sobel_x(const FrameVector& frame);
Grid<double> sobel_y(const FrameVector& frame);
Grid<double> sobel_magnitude(const FrameVector& frame);

/// D11 = gy^2/q, D22 = gx^2/q, D12 = -gx*gy/q with q = gx^2 + gy^2 + eps.
/// eps keeps flat regions finite (all three terms go to 0 there).
CrossProjectionTensor cross_projection_tensor(const Grid<double>& bg_gx,
                                              const Grid<double>& bg_gy, double eps = 1e-6);

/// Applies the tensor to a gradient pair and fills in the transformed magnitude.
GradientField apply_tensor(const Grid<double>& gx, const Grid<double>& gy,
                           const CrossProjectionTensor& tensor);

}  // namespace cvbgs
