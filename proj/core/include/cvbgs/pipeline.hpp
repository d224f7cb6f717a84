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

#include <cstdint>
#include <span>
#include <vector>

#include "cvbgs/cva.hpp"
#include "cvbgs/distance.hpp"
#include "cvbgs/feedback.hpp"
#include "cvbgs/grid.hpp"
#include "cvbgs/rng.hpp"
#include "cvbgs/segmentation.hpp"

namespace cvbgs {

struct PipelineConfig {
    int bank_size = 35;        ///< N, frames kept in the background bank
    int min_count = -1;        ///< agreement count; -1 selects bank_size - 1
    int recompute_stride = 1;  ///< frames between CVA basis rebuilds
    double drop_tol = kDefaultDropTol;
    double tensor_eps = 1e-6;
    double l1_gate = kDefaultL1Gate;
    bool feedback_enabled = true;    ///< dynamic R/T/v/d_min controllers
    bool scene_reset_enabled = true; ///< reset the model on hard scene changes
    double gray_r = 0.299;           ///< luma weights applied on ingestion
    double gray_g = 0.587;
    double gray_b = 0.114;
    std::uint64_t rng_seed = 1;
    PostProcessConfig post;
    FeedbackConfig feedback;

    int effective_min_count() const { return min_count < 0 ? bank_size - 1 : min_count; }

    /// Throws ConfigError on out-of-range values.
    void validate() const;
};

struct StepResult {
    ForegroundMask mask;
    bool scene_reset = false;      ///< this frame triggered a model reset
    bool refilling = false;        ///< mask is the all-background placeholder
    int updated_bank_index = -1;   ///< bank frame blended this step, -1 if none
};

/// Owns the background bank, the CVA artifacts derived from it and the
/// controller state of one video stream. Steps are strictly sequential; use
/// one instance per stream.
class BackgroundModel {
public:
    explicit BackgroundModel(PipelineConfig config);

    /// Seeds the bank with exactly bank_size frames and builds basis, common
    /// vector and mean background. Controller maps start at their initial
    /// values and the previous mask is all background.
    void initialize(std::span<const FrameVector> frames);

    bool initialized() const { return initialized_; }

    /// Processes one frame: scene-change check, CVA refresh, distance fan-out,
    /// segmentation, post-processing, feedback updates, bank update.
    StepResult step(const FrameVector& frame);

    const PipelineConfig& config() const { return config_; }
    const std::vector<FrameVector>& bank() const { return bank_; }
    const OrthonormalBasis& basis() const { return basis_; }
    const CommonVector& background_common() const { return bg_common_; }
    const FrameVector& mean_background() const { return mean_bg_; }
    const PixelStateMap& pixel_state() const { return state_; }
    const ForegroundMask& previous_mask() const { return prev_mask_; }
    long frame_count() const { return frame_count_; }

private:
    void rebuild_cva();
    void reset_for_refill(const FrameVector& first_frame);
    ForegroundMask all_background() const;

    PipelineConfig config_;
    Pcg32 rng_;

    bool initialized_ = false;
    bool refilling_ = false;
    std::vector<FrameVector> refill_buffer_;

    std::vector<FrameVector> bank_;
    OrthonormalBasis basis_;
    CommonVector bg_common_;
    FrameVector mean_bg_;
    CrossProjectionTensor tensor_;
    PixelStateMap state_;
    ForegroundMask prev_mask_;
    FrameVector prev_frame_;

    bool cva_dirty_ = true;
    long steps_since_rebuild_ = 0;
    long frame_count_ = 0;

    DistanceMap min_dist_;           // per-pixel minimum over the bank, reused
    std::vector<int> hit_count_;     // per-pixel agreement count, reused
    std::vector<double> cva_arena_;  // contiguous difference rows for rebuilds
};

}  // namespace cvbgs
