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
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>

#include "cvbgs/grid.hpp"

namespace cvbgs {

/// Test scenes with exact ground truth, mirroring common change-detection
/// challenge types.
enum class SynthScenario {
    static_object,      ///< textured static scene, one moving high-contrast square
    dynamic_texture,    ///< slow traveling wave (amplitude 20) in a marked region
    illumination_ramp,  ///< global brightness ramp, no objects
    scene_cut,          ///< hard cut to an unrelated scene at a fixed frame
    intermittent_stop,  ///< object enters, parks for a long stretch, leaves
};

std::optional<SynthScenario> parse_scenario(std::string_view name);
std::string_view scenario_name(SynthScenario scenario);

struct SynthConfig {
    SynthScenario scenario = SynthScenario::static_object;
    int length = 100;  ///< number of frames
    int height = 240;
    int width = 320;
    std::uint64_t seed = 1;
};

struct SynthRect {
    int x = 0, y = 0, w = 0, h = 0;
    bool contains(int px, int py) const {
        return px >= x && px < x + w && py >= y && py < y + h;
    }
};

/// Deterministic scenario generator. frame(i) is a pure function of the seed
/// and index, so sequences can be produced out of order, twice, or lazily.
class SynthSequence {
public:
    explicit SynthSequence(const SynthConfig& config);

    const SynthConfig& config() const { return config_; }
    int length() const { return config_.length; }

    FrameVector frame(int index) const;  ///< 1-based, like the file numbering
    ForegroundMask ground_truth(int index) const;

    /// Oscillating rectangle of the dynamic_texture scenario.
    SynthRect dynamic_region() const;
    /// First frame of the new scene (scene_cut scenario).
    int cut_frame() const;
    /// Object footprint at a frame; empty when no object is present.
    std::optional<SynthRect> object_rect(int index) const;

private:
    double base_value(int x, int y, std::uint64_t scene_salt) const;
    double noise(int x, int y, int t) const;

    SynthConfig config_;
};

/// Writes input/in%06d.png, groundtruth/gt%06d.png, ROI.png and
/// temporalROI.txt ("1 <length>") under out_dir.
void write_synth_sequence(const SynthConfig& config, const std::filesystem::path& out_dir);

}  // namespace cvbgs
