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

#include "cvbgs/pipeline.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstring>
#include <stdexcept>
#include <utility>

#ifdef __linux__
#include <sys/mman.h>
#endif

#include "cvbgs/errors.hpp"
#include "cvbgs/gradient.hpp"
#include "mgs_detail.hpp"

namespace cvbgs {

namespace {

// The basis rebuild streams ~20 MB of difference rows k^2/2 times per frame;
// huge pages take page-walk and prefetch restarts out of that loop.
void advise_huge_pages(void* p, std::size_t bytes) {
#ifdef __linux__
    constexpr std::uintptr_t kPage = 4096;
    const auto addr = reinterpret_cast<std::uintptr_t>(p);
    const std::uintptr_t start = (addr + kPage - 1) & ~(kPage - 1);
    const std::uintptr_t end = (addr + bytes) & ~(kPage - 1);
    if (end > start) ::madvise(reinterpret_cast<void*>(start), end - start, MADV_HUGEPAGE);
#else
    (void)p;
    (void)bytes;
#endif
}

}  // namespace

void PipelineConfig::validate() const {
    if (bank_size < 2) throw ConfigError("bank_size must be >= 2");
    if (min_count < -1 || min_count >= bank_size)
        throw ConfigError("min_count must be -1 or in [0, bank_size)");
    if (recompute_stride < 1) throw ConfigError("recompute_stride must be >= 1");
    if (drop_tol <= 0.0) throw ConfigError("drop_tol must be > 0");
    if (tensor_eps <= 0.0) throw ConfigError("tensor_eps must be > 0");
    if (post.min_blob < 0) throw ConfigError("min_blob must be >= 0");
    if (feedback.r_scale <= 0.0) throw ConfigError("r_scale must be > 0");
    if (feedback.r_lower <= 0.0) throw ConfigError("r_lower must be > 0");
    if (feedback.r_inc_dec <= 0.0 || feedback.r_inc_dec >= 1.0)
        throw ConfigError("r_inc_dec must be in (0, 1)");
    if (feedback.t_lower < 1.0) throw ConfigError("t_lower must be >= 1");
    if (feedback.t_init < feedback.t_lower) throw ConfigError("t_init must be >= t_lower");
    if (feedback.dmin_alpha <= 0.0 || feedback.dmin_alpha > 1.0)
        throw ConfigError("dmin_alpha must be in (0, 1]");
    if (feedback.dmin_norm <= 0.0) throw ConfigError("dmin_norm must be > 0");
    if (gray_r < 0.0 || gray_g < 0.0 || gray_b < 0.0)
        throw ConfigError("grayscale weights must be >= 0");
}

BackgroundModel::BackgroundModel(PipelineConfig config) : config_(std::move(config)) {
    config_.validate();
    rng_.reseed(config_.rng_seed);
}

void BackgroundModel::initialize(std::span<const FrameVector> frames) {
    if (static_cast<int>(frames.size()) != config_.bank_size)
        throw std::invalid_argument("BackgroundModel::initialize: expected exactly bank_size frames");
    for (const auto& f : frames) require_same_size(frames.front(), f, "BackgroundModel::initialize");

    bank_.assign(frames.begin(), frames.end());
    const int h = bank_.front().height(), w = bank_.front().width();
    state_ = PixelStateMap::initial(h, w, config_.feedback);
    prev_mask_ = ForegroundMask(h, w, 0);
    prev_frame_ = bank_.back();
    min_dist_ = DistanceMap();
    hit_count_.clear();

    cva_dirty_ = true;
    steps_since_rebuild_ = 0;
    rebuild_cva();

    refilling_ = false;
    refill_buffer_.clear();
    initialized_ = true;
}

void BackgroundModel::rebuild_cva() {
    // The difference rows live in one contiguous arena, reused across
    // rebuilds, so the quadratic orthogonalization pass streams a single
    // mapping instead of dozens of scattered buffers.
    const FrameVector& ref = bank_.front();
    const std::size_t n = ref.size();
    const std::size_t max_rows = bank_.size() - 1;
    if (cva_arena_.size() != max_rows * n) {
        cva_arena_.assign(max_rows * n, 0.0);
        advise_huge_pages(cva_arena_.data(), cva_arena_.size() * sizeof(double));
    }

    std::vector<double*> rows(max_rows);
    for (std::size_t j = 0; j < max_rows; ++j) {
        double* row = cva_arena_.data() + j * n;
        rows[j] = row;
        const double* a = bank_[j + 1].data();
        const double* r = ref.data();
        for (std::size_t i = 0; i < n; ++i) row[i] = a[i] - r[i];
    }
    const std::size_t rank = detail::orthonormalize_rows(rows, n, config_.drop_tol);

    // Copy the accepted vectors out for the public artifacts, recycling the
    // previous basis buffers.
    basis_.source_count = static_cast<int>(bank_.size());
    basis_.vectors.resize(rank);
    for (std::size_t i = 0; i < rank; ++i) {
        FrameVector& z = basis_.vectors[i];
        if (!z.same_size(ref)) z = FrameVector(ref.height(), ref.width());
        std::memcpy(z.data(), rows[i], n * sizeof(double));
    }

    bg_common_ = common_vector(bank_, basis_, 0);
    mean_bg_ = average_vector(bank_);
    tensor_ = cross_projection_tensor(sobel_x(mean_bg_), sobel_y(mean_bg_), config_.tensor_eps);
    cva_dirty_ = false;
    steps_since_rebuild_ = 0;
}

ForegroundMask BackgroundModel::all_background() const {
    return ForegroundMask(prev_frame_.height(), prev_frame_.width(), 0);
}

void BackgroundModel::reset_for_refill(const FrameVector& first_frame) {
    refilling_ = true;
    refill_buffer_.clear();
    refill_buffer_.push_back(first_frame);
}

StepResult BackgroundModel::step(const FrameVector& frame) {
    if (!initialized_) throw std::logic_error("BackgroundModel::step before initialize");
    require_same_size(frame, prev_frame_, "BackgroundModel::step");

    StepResult result;
    ++frame_count_;

    // Hard scene change resets the whole model; masks stay all-background
    // until the bank has been refilled with bank_size fresh frames.
    if (config_.scene_reset_enabled && !refilling_ &&
        detect_scene_change(frame, prev_frame_, config_.feedback)) {
        reset_for_refill(frame);
        prev_frame_ = frame;
        result.mask = all_background();
        result.scene_reset = true;
        result.refilling = true;
        return result;
    }

    if (refilling_) {
        // A second cut during refill restarts the collection window.
        if (config_.scene_reset_enabled &&
            detect_scene_change(frame, prev_frame_, config_.feedback)) {
            reset_for_refill(frame);
            prev_frame_ = frame;
            result.mask = all_background();
            result.scene_reset = true;
            result.refilling = true;
            return result;
        }
        refill_buffer_.push_back(frame);
        prev_frame_ = frame;
        if (static_cast<int>(refill_buffer_.size()) == config_.bank_size) {
            const std::vector<FrameVector> frames = std::move(refill_buffer_);
            initialize(frames);
        }
        result.mask = all_background();
        result.refilling = true;
        return result;
    }

    ++steps_since_rebuild_;
    if (cva_dirty_ && steps_since_rebuild_ >= config_.recompute_stride) rebuild_cva();

    const DiscriminativeCommonVector dcv = discriminative_common_vector(frame, basis_);
    const DistanceMap gmag = dist_gmag(frame, mean_bg_, tensor_);
    const DistanceMap cva = dist_cva(dcv, bg_common_);

    // Distance fan-out, tiled over pixels. Only the l1 term varies with the
    // bank index, and downstream only needs the per-pixel agreement count
    // (decision rule) and minimum (d_min update), so the N combined maps are
    // folded on the fly instead of being materialized; the arithmetic per
    // pixel is exactly that of combine_distance_maps + decide_foreground.
    const int n = config_.bank_size;
    const double gate = config_.l1_gate;
    const std::size_t total = frame.size();
    if (!min_dist_.same_size(frame)) min_dist_ = DistanceMap(frame.height(), frame.width());
    hit_count_.assign(total, 0);

    constexpr std::size_t kTile = 4096;
    for (std::size_t p0 = 0; p0 < total; p0 += kTile) {
        const std::size_t len = std::min(kTile, total - p0);
        const double* t = frame.data() + p0;
        const double* g = gmag.data() + p0;
        const double* c = cva.data() + p0;
        const double* r = state_.r.data() + p0;
        double* mn = min_dist_.data() + p0;
        int* cnt = hit_count_.data() + p0;
        for (int i = 0; i < n; ++i) {
            const double* b = bank_[static_cast<std::size_t>(i)].data() + p0;
            for (std::size_t p = 0; p < len; ++p) {
                const double l1 = std::abs(t[p] - b[p]);
                const double d = l1 > gate ? l1 + g[p] + c[p] : 0.0;
                cnt[p] += d >= r[p] ? 1 : 0;
                mn[p] = i == 0 ? d : std::min(mn[p], d);
            }
        }
    }

    ForegroundMask raw(frame.height(), frame.width(), 0);
    const int min_count = config_.effective_min_count();
    for (std::size_t p = 0; p < total; ++p) raw[p] = hit_count_[p] > min_count ? 1 : 0;
    ForegroundMask mask = post_process(raw, config_.post);

    if (config_.feedback_enabled) {
        // min over the bank is already folded; a one-element span keeps the
        // update op on its public contract.
        update_dmin(state_, std::span<const DistanceMap>(&min_dist_, 1), config_.feedback);
        update_r(state_, config_.feedback);
        update_v(state_, mask, prev_mask_);  // v feeds the T update below
        update_t(state_, mask, config_.feedback);
    }

    result.updated_bank_index = update_background(bank_, frame, state_, rng_);
    cva_dirty_ = true;

    prev_mask_ = mask;
    prev_frame_ = frame;
    result.mask = std::move(mask);
    return result;
}

}  // namespace cvbgs
