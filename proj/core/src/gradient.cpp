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

#include "cvbgs/gradient.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace cvbgs {

namespace {

inline int clampi(int v, int lo, int hi) { return v < lo ? lo : (v > hi ? hi : v); }

enum class Direction { x, y };

// 3x3 Sobel with replicated borders, scaled by 1/8 so a unit-slope ramp
// yields a gradient of 1 grey level per pixel.
Grid<double> sobel(const FrameVector& frame, Direction dir) {
    const int h = frame.height(), w = frame.width();
    Grid<double> out(h, w);
    for (int y = 0; y < h; ++y) {
        const int ym = clampi(y - 1, 0, h - 1), yp = clampi(y + 1, 0, h - 1);
        for (int x = 0; x < w; ++x) {
            const int xm = clampi(x - 1, 0, w - 1), xp = clampi(x + 1, 0, w - 1);
            double g;
            if (dir == Direction::x) {
                g = (frame.at(ym, xp) + 2.0 * frame.at(y, xp) + frame.at(yp, xp)) -
                    (frame.at(ym, xm) + 2.0 * frame.at(y, xm) + frame.at(yp, xm));
            } else {
                g = (frame.at(yp, xm) + 2.0 * frame.at(yp, x) + frame.at(yp, xp)) -
                    (frame.at(ym, xm) + 2.0 * frame.at(ym, x) + frame.at(ym, xp));
            }
            out.at(y, x) = g * 0.125;
        }
    }
    return out;
}

}  // namespace

Grid<double> sobel_x(const FrameVector& frame) { return sobel(frame, Direction::x); }

Grid<double> sobel_y(const FrameVector& frame) { return sobel(frame, Direction::y); }

Grid<double> sobel_magnitude(const FrameVector& frame) {
    Grid<double> gx = sobel_x(frame);
    Grid<double> gy = sobel_y(frame);
    Grid<double> out(frame.height(), frame.width());
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = std::sqrt(gx[i] * gx[i] + gy[i] * gy[i]);
    return out;
}

CrossProjectionTensor cross_projection_tensor(const Grid<double>& bg_gx,
                                              const Grid<double>& bg_gy, double eps) {
    require_same_size(bg_gx, bg_gy, "cross_projection_tensor");
    if (eps <= 0.0) throw std::invalid_argument("cross_projection_tensor: eps must be > 0");

    CrossProjectionTensor t{Grid<double>(bg_gx.height(), bg_gx.width()),
                            Grid<double>(bg_gx.height(), bg_gx.width()),
                            Grid<double>(bg_gx.height(), bg_gx.width())};
    for (std::size_t i = 0; i < bg_gx.size(); ++i) {
        const double gx = bg_gx[i], gy = bg_gy[i];
        const double q = gx * gx + gy * gy + eps;
        t.d11[i] = gy * gy / q;
        t.d22[i] = gx * gx / q;
        t.d12[i] = -gx * gy / q;
    }
    return t;
}

GradientField apply_tensor(const Grid<double>& gx, const Grid<double>& gy,
                           const CrossProjectionTensor& tensor) {
    require_same_size(gx, gy, "apply_tensor");
    require_same_size(gx, tensor.d11, "apply_tensor");

    GradientField f{Grid<double>(gx.height(), gx.width()), Grid<double>(gx.height(), gx.width()),
                    Grid<double>(gx.height(), gx.width())};
    for (std::size_t i = 0; i < gx.size(); ++i) {
        const double tx = tensor.d11[i] * gx[i] + tensor.d12[i] * gy[i];
        const double ty = tensor.d12[i] * gx[i] + tensor.d22[i] * gy[i];
        f.gx[i] = tx;
        f.gy[i] = ty;
        f.magnitude[i] = std::sqrt(tx * tx + ty * ty);
    }
    return f;
}

}  // namespace cvbgs
