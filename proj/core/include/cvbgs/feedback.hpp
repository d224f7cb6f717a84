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
#include <vector>

#include "cvbgs/grid.hpp"
#include "cvbgs/rng.hpp"

namespace cvbgs {

/// Constants steering the per-pixel controllers.
struct FeedbackConfig {
    double r_lower = 35.0;    ///< floor (and initial value) of the decision threshold R(x)
    double r_inc_dec = 0.01;  ///< steering coefficient of the R(x) update
    double r_scale = 1.0;     ///< target scale; 0.1 for static scenes, 1-2 for dynamic ones
    double t_lower = 2.0;     ///< floor of the learning-rate accumulator T(x)
    double t_init = 16.0;     ///< initial T(x)
    double dmin_alpha = 0.05;  ///< exponential-average factor of d_min
    double dmin_norm = 255.0;  ///< maps d_min into [0,1] (clamped)

    // Scene-change trigger; all three statistics must exceed their threshold.
    double mafd_threshold = 30.0;
    double maed_threshold = 0.1;
    double adfv_threshold = 2.0;
};

/// Per-pixel controller state. Invariants after any update sequence:
/// r >= r_lower, t >= t_lower, v >= 0, d_min >= 0, d_min_hat in [0,1].
struct PixelStateMap {
    Grid<double> r;
    Grid<double> t;
    Grid<double> v;
    Grid<double> d_min;
    Grid<double> d_min_hat;

    static PixelStateMap initial(int height, int width, const FeedbackConfig& config);
};

/// Folds the per-pixel minimum of the distance maps into d_min with an
/// exponential average, then refreshes d_min_hat.
void update_dmin(PixelStateMap& state, std::span<const DistanceMap> dists,
                 const FeedbackConfig& config);

/// R grows by r_inc_dec while below d_min * r_scale and decays otherwise;
/// clamped to r_lower afterwards.
void update_r(PixelStateMap& state, const FeedbackConfig& config);

/// Blink accumulator: +1 where consecutive masks differ (XOR, with the
/// both-foreground intersection forced to 0), -0.1 toward 0 elsewhere.
void update_v(PixelStateMap& state, const ForegroundMask& mask, const ForegroundMask& mask_prev);

/// Learning-rate accumulator: foreground pixels gain 1/(v*d_min_hat + 1),
/// background pixels lose (v + 0.1)/(d_min_hat + 1); clamped to t_lower.
/// Call after update_v, which feeds the v term.
void update_t(PixelStateMap& state, const ForegroundMask& mask, const FeedbackConfig& config);

/// Blends the test frame into one uniformly chosen bank frame with per-pixel
/// weight 1/T(x); all other frames stay untouched. Returns the chosen index.
/// The caller owns invalidation of any CVA artifacts derived from the bank.
int update_background(std::vector<FrameVector>& bank, const FrameVector& test,
                      const PixelStateMap& state, Pcg32& rng);

struct SceneChangeStats {
    double mafd = 0.0;  ///< mean absolute frame difference, grey levels
    double maed = 0.0;  ///< mean absolute difference of max-normalized edge maps
    double adfv = 0.0;  ///< variance of the absolute frame difference, /255
};

SceneChangeStats scene_change_stats(const FrameVector& frame, const FrameVector& prev);

/// True iff all three statistics exceed their thresholds; the caller is
/// expected to rebuild the bank and reset the pixel state on a trigger.
bool detect_scene_change(const FrameVector& frame, const FrameVector& prev,
                         const FeedbackConfig& config);

}  // namespace cvbgs
