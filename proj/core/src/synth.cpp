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

#include "cvbgs/synth.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <numbers>

#include "cvbgs/errors.hpp"
#include "cvbgs/image_io.hpp"
#include "cvbgs/rng.hpp"

namespace cvbgs {

namespace {

constexpr double kTau = 2.0 * std::numbers::pi;

// Scenario constants.
constexpr double kObjectContrast = 80.0;  // grey levels above the local base
constexpr double kNoiseAmplitude = 2.0;   // sensor noise, +-2 grey levels
constexpr double kWaveAmplitude = 20.0;   // dynamic-texture oscillation
constexpr int kObjectEntryFrame = 40;
constexpr double kRampRate = 0.35;  // grey levels per frame
constexpr double kRampCap = 50.0;

double hash_unit(std::uint64_t seed, std::uint64_t a, std::uint64_t b, std::uint64_t c) {
    const std::uint64_t h = splitmix64(seed ^ (a * 0x9e3779b97f4a7c15ULL) ^
                                       (b * 0xc2b2ae3d27d4eb4fULL) ^ (c * 0x165667b19e3779f9ULL));
    return static_cast<double>(h >> 11) * (1.0 / 9007199254740992.0);  // [0,1)
}

// Reflects v into [0, limit] (triangle wave; limit > 0).
int reflect(long v, int limit) {
    const long period = 2L * limit;
    long m = v % period;
    if (m < 0) m += period;
    return static_cast<int>(m <= limit ? m : period - m);
}

std::string frame_file(const char* prefix, int index) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%s%06d.png", prefix, index);
    return std::string(buf);
}

}  // namespace

std::optional<SynthScenario> parse_scenario(std::string_view name) {
    if (name == "static_object") return SynthScenario::static_object;
    if (name == "dynamic_texture") return SynthScenario::dynamic_texture;
    if (name == "illumination_ramp") return SynthScenario::illumination_ramp;
    if (name == "scene_cut") return SynthScenario::scene_cut;
    if (name == "intermittent_stop") return SynthScenario::intermittent_stop;
    return std::nullopt;
}

std::string_view scenario_name(SynthScenario scenario) {
    switch (scenario) {
        case SynthScenario::static_object: return "static_object";
        case SynthScenario::dynamic_texture: return "dynamic_texture";
        case SynthScenario::illumination_ramp: return "illumination_ramp";
        case SynthScenario::scene_cut: return "scene_cut";
        case SynthScenario::intermittent_stop: return "intermittent_stop";
    }
    return "unknown";
}

SynthSequence::SynthSequence(const SynthConfig& config) : config_(config) {
    if (config_.length < 1) throw std::invalid_argument("SynthSequence: length must be >= 1");
    if (config_.height < 16 || config_.width < 16)
        throw std::invalid_argument("SynthSequence: frames must be at least 16x16");
}

// Smooth sinusoidal texture; salt selects an unrelated parameter set so the
// scene_cut scenario can switch to a genuinely different scene.
double SynthSequence::base_value(int x, int y, std::uint64_t scene_salt) const {
    const double l1 = 24.0 + 24.0 * hash_unit(config_.seed, scene_salt, 0, 1);
    const double l2 = 24.0 + 24.0 * hash_unit(config_.seed, scene_salt, 0, 2);
    const double l3 = 40.0 + 40.0 * hash_unit(config_.seed, scene_salt, 0, 3);
    const double p1 = kTau * hash_unit(config_.seed, scene_salt, 0, 4);
    const double p2 = kTau * hash_unit(config_.seed, scene_salt, 0, 5);
    const double p3 = kTau * hash_unit(config_.seed, scene_salt, 0, 6);
    const double mean = scene_salt == 0 ? 90.0 : 140.0;
    return mean + 45.0 * std::sin(kTau * x / l1 + p1) * std::cos(kTau * y / l2 + p2) +
           25.0 * std::sin(kTau * (x + y) / l3 + p3);
}

double SynthSequence::noise(int x, int y, int t) const {
    const double u = hash_unit(config_.seed ^ 0x5deece66dULL, static_cast<std::uint64_t>(x) + 1,
                               static_cast<std::uint64_t>(y) + 1, static_cast<std::uint64_t>(t));
    return (u - 0.5) * 2.0 * kNoiseAmplitude;
}

SynthRect SynthSequence::dynamic_region() const {
    const int w = config_.width, h = config_.height;
    return SynthRect{w / 2, h / 4, std::max(8, (3 * w) / 8), std::max(8, h / 2)};
}

int SynthSequence::cut_frame() const {
    return config_.length >= 100 ? 50 : std::max(2, config_.length / 2);
}

std::optional<SynthRect> SynthSequence::object_rect(int index) const {
    const int w = config_.width, h = config_.height;
    const int side = std::max(12, std::min(w, h) / 10);

    if (config_.scenario == SynthScenario::static_object) {
        // Appears fully inside the frame and bounces; the entry frame is past
        // the usual bank-size so a default-initialized bank stays clean.
        if (index < kObjectEntryFrame) return std::nullopt;
        const long travel = index - kObjectEntryFrame;
        const int x = reflect(8 + 2L * travel, w - side);
        const int y = reflect((h - side) / 2 + travel, h - side);
        return SynthRect{x, y, side, side};
    }

    if (config_.scenario == SynthScenario::intermittent_stop) {
        if (index < kObjectEntryFrame) return std::nullopt;
        const int x_stop = (w - side) / 2;
        const int y = (h - side) / 2;
        // enter -> drive to the center -> park -> leave to the right
        const int t_arrive = kObjectEntryFrame + (x_stop + side + 2) / 3;
        const int t_depart = std::max(t_arrive + 30, (3 * config_.length) / 4);
        long xpos;
        if (index < t_depart)
            xpos = std::min(-static_cast<long>(side) + 3L * (index - kObjectEntryFrame),
                            static_cast<long>(x_stop));
        else
            xpos = x_stop + 3L * (index - t_depart);
        if (xpos + side <= 0 || xpos >= w) return std::nullopt;
        return SynthRect{static_cast<int>(xpos), y, side, side};
    }

    return std::nullopt;
}

FrameVector SynthSequence::frame(int index) const {
    const int w = config_.width, h = config_.height;
    const std::uint64_t scene_salt =
        (config_.scenario == SynthScenario::scene_cut && index >= cut_frame()) ? 1 : 0;

    const std::optional<SynthRect> object = object_rect(index);
    const SynthRect region = dynamic_region();

    double offset = 0.0;
    if (config_.scenario == SynthScenario::illumination_ramp)
        offset = std::min(kRampRate * index, kRampCap);

    FrameVector out(h, w);
    for (int y = 0; y < h; ++y) {
        for (int x = 0; x < w; ++x) {
            double v = base_value(x, y, scene_salt) + offset;

            if (config_.scenario == SynthScenario::dynamic_texture && region.contains(x, y)) {
                // Broadband flicker: per-pixel period and phase, so the field
                // has far more temporal modes than a bank can span.
                const double period =
                    60.0 + 60.0 * hash_unit(config_.seed, static_cast<std::uint64_t>(x) + 7,
                                            static_cast<std::uint64_t>(y) + 7, 11);
                const double phase =
                    kTau * hash_unit(config_.seed, static_cast<std::uint64_t>(x) + 13,
                                     static_cast<std::uint64_t>(y) + 13, 17);
                v += kWaveAmplitude * std::sin(kTau * index / period + phase);
            }

            if (object && object->contains(x, y)) v += kObjectContrast;

            v += noise(x, y, index);
            // Frames round-trip through 8-bit files; quantize here so the
            // in-memory sequence is identical to a written-and-reread one.
            out.at(y, x) = std::clamp(std::round(v), 0.0, 255.0);
        }
    }
    return out;
}

ForegroundMask SynthSequence::ground_truth(int index) const {
    ForegroundMask gt(config_.height, config_.width, 0);
    const std::optional<SynthRect> object = object_rect(index);
    if (!object) return gt;
    const int x0 = std::max(0, object->x), x1 = std::min(config_.width, object->x + object->w);
    const int y0 = std::max(0, object->y), y1 = std::min(config_.height, object->y + object->h);
    for (int y = y0; y < y1; ++y)
        for (int x = x0; x < x1; ++x) gt.at(y, x) = 1;
    return gt;
}

void write_synth_sequence(const SynthConfig& config, const std::filesystem::path& out_dir) {
    const SynthSequence seq(config);
    namespace fs = std::filesystem;
    fs::create_directories(out_dir / "input");
    fs::create_directories(out_dir / "groundtruth");

    for (int i = 1; i <= config.length; ++i) {
        const FrameVector frame = seq.frame(i);
        Grid<std::uint8_t> u8(frame.height(), frame.width());
        for (std::size_t k = 0; k < frame.size(); ++k)
            u8[k] = static_cast<std::uint8_t>(frame[k]);
        write_u8_png(out_dir / "input" / frame_file("in", i), u8);

        const ForegroundMask gt = seq.ground_truth(i);
        write_mask_png(out_dir / "groundtruth" / frame_file("gt", i), gt);
    }

    Grid<std::uint8_t> roi(config.height, config.width, 255);
    write_u8_png(out_dir / "ROI.png", roi);

    std::ofstream troi(out_dir / "temporalROI.txt");
    if (!troi) throw IoError("cannot write temporalROI.txt under " + out_dir.string());
    troi << 1 << ' ' << config.length << '\n';
}

}  // namespace cvbgs
