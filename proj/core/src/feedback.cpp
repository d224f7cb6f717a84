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

#include "cvbgs/feedback.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "cvbgs/gradient.hpp"

namespace cvbgs {

PixelStateMap PixelStateMap::initial(int height, int width, const FeedbackConfig& config) {
    return PixelStateMap{Grid<double>(height, width, config.r_lower),
                         Grid<double>(height, width, config.t_init),
                         Grid<double>(height, width, 0.0), Grid<double>(height, width, 0.0),
                         Grid<double>(height, width, 0.0)};
}

void update_dmin(PixelStateMap& state, std::span<const DistanceMap> dists,
                 const FeedbackConfig& config) {
    if (dists.empty()) throw std::invalid_argument("update_dmin: no distance maps");
    for (const auto& d : dists) require_same_size(d, state.d_min, "update_dmin");

    const std::size_t n = state.d_min.size();
    const double alpha = config.dmin_alpha;
    for (std::size_t i = 0; i < n; ++i) {
        double dt = dists[0][i];
        for (std::size_t k = 1; k < dists.size(); ++k) dt = std::min(dt, dists[k][i]);
        const double dm = (1.0 - alpha) * state.d_min[i] + alpha * dt;
        state.d_min[i] = dm;
        state.d_min_hat[i] = std::min(dm / config.dmin_norm, 1.0);
    }
}

void update_r(PixelStateMap& state, const FeedbackConfig& config) {
    const std::size_t n = state.r.size();
    const double up = 1.0 + config.r_inc_dec;
    const double down = 1.0 - config.r_inc_dec;
    for (std::size_t i = 0; i < n; ++i) {
        const double target = state.d_min[i] * config.r_scale;
        const double r = state.r[i] * (state.r[i] < target ? up : down);
        state.r[i] = std::max(r, config.r_lower);
    }
}

void update_v(PixelStateMap& state, const ForegroundMask& mask, const ForegroundMask& mask_prev) {
    require_same_size(mask, mask_prev, "update_v");
    if (state.v.height() != mask.height() || state.v.width() != mask.width())
        throw std::invalid_argument("update_v: dimension mismatch");

    for (std::size_t i = 0; i < state.v.size(); ++i) {
        const bool cur = mask[i] != 0, prev = mask_prev[i] != 0;
        bool blink = cur != prev;
        if (cur && prev) blink = false;  // intersection forced off
        state.v[i] = blink ? state.v[i] + 1.0 : std::max(state.v[i] - 0.1, 0.0);
    }
}

void update_t(PixelStateMap& state, const ForegroundMask& mask, const FeedbackConfig& config) {
    if (state.t.height() != mask.height() || state.t.width() != mask.width())
        throw std::invalid_argument("update_t: dimension mismatch");

    for (std::size_t i = 0; i < state.t.size(); ++i) {
        const double v = state.v[i];
        const double dh = state.d_min_hat[i];
        const double t = mask[i] ? state.t[i] + 1.0 / (v * dh + 1.0)
                                 : state.t[i] - (v + 0.1) / (dh + 1.0);
        state.t[i] = std::max(t, config.t_lower);
    }
}

int update_background(std::vector<FrameVector>& bank, const FrameVector& test,
                      const PixelStateMap& state, Pcg32& rng) {
    if (bank.empty()) throw std::invalid_argument("update_background: empty bank");
    require_same_size(bank.front(), test, "update_background");
    require_same_size(state.t, test, "update_background");

    const int index = static_cast<int>(rng.next_below(static_cast<std::uint32_t>(bank.size())));
    FrameVector& frame = bank[static_cast<std::size_t>(index)];
    for (std::size_t i = 0; i < frame.size(); ++i) {
        const double p = 1.0 / state.t[i];
        frame[i] = (1.0 - p) * frame[i] + p * test[i];
    }
    return index;
}

SceneChangeStats scene_change_stats(const FrameVector& frame, const FrameVector& prev) {
    require_same_size(frame, prev, "scene_change_stats");
    const std::size_t n = frame.size();

    SceneChangeStats stats;
    double sum = 0.0, sum_sq = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double d = std::abs(frame[i] - prev[i]);
        sum += d;
        sum_sq += d * d;
    }
    const double mean = sum / static_cast<double>(n);
    stats.mafd = mean;
    stats.adfv = (sum_sq / static_cast<double>(n) - mean * mean) / 255.0;

    Grid<double> cur_mag = sobel_magnitude(frame);
    Grid<double> prev_mag = sobel_magnitude(prev);
    const double cur_max = *std::max_element(cur_mag.begin(), cur_mag.end());
    const double prev_max = *std::max_element(prev_mag.begin(), prev_mag.end());
    const double cur_scale = cur_max > 0.0 ? 1.0 / cur_max : 0.0;
    const double prev_scale = prev_max > 0.0 ? 1.0 / prev_max : 0.0;
    double edge_sum = 0.0;
    for (std::size_t i = 0; i < n; ++i)
        edge_sum += std::abs(cur_mag[i] * cur_scale - prev_mag[i] * prev_scale);
    stats.maed = edge_sum / static_cast<double>(n);
    return stats;
}

bool detect_scene_change(const FrameVector& frame, const FrameVector& prev,
                         const FeedbackConfig& config) {
    const SceneChangeStats s = scene_change_stats(frame, prev);
    return s.mafd > config.mafd_threshold && s.maed > config.maed_threshold &&
           s.adfv > config.adfv_threshold;
}

}  // namespace cvbgs
