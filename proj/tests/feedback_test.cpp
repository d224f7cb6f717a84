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

#include <doctest.h>

#include <cmath>
#include <vector>

#include "cvbgs/synth.hpp"
#include "testutil.hpp"

using namespace cvbgs;

namespace {

PixelStateMap one_pixel_state(const FeedbackConfig& config) {
    return PixelStateMap::initial(1, 1, config);
}

}  // namespace

TEST_CASE("update_dmin follows the exponential average") {
    const FeedbackConfig config;

    SUBCASE("fixed point") {
        PixelStateMap s = one_pixel_state(config);
        s.d_min[0] = 10.0;
        const std::vector<DistanceMap> dists{DistanceMap(1, 1, 10.0)};
        update_dmin(s, dists, config);
        CHECK(s.d_min[0] == doctest::Approx(10.0));
    }
    SUBCASE("one step from zero") {
        PixelStateMap s = one_pixel_state(config);
        const std::vector<DistanceMap> dists{DistanceMap(1, 1, 100.0)};
        update_dmin(s, dists, config);  // alpha = 0.05
        CHECK(s.d_min[0] == doctest::Approx(5.0));
        CHECK(s.d_min_hat[0] == doctest::Approx(5.0 / 255.0));
    }
    SUBCASE("takes the minimum over the bank maps") {
        PixelStateMap s = one_pixel_state(config);
        const std::vector<DistanceMap> dists{DistanceMap(1, 1, 80.0), DistanceMap(1, 1, 20.0),
                                             DistanceMap(1, 1, 50.0)};
        update_dmin(s, dists, config);
        CHECK(s.d_min[0] == doctest::Approx(0.05 * 20.0));
    }
    SUBCASE("converges to a constant stream within 1% after the geometric bound") {
        PixelStateMap s = one_pixel_state(config);
        const std::vector<DistanceMap> dists{DistanceMap(1, 1, 60.0)};
        const int steps =
            static_cast<int>(std::ceil(std::log(0.01) / std::log(1.0 - config.dmin_alpha)));
        for (int i = 0; i < steps; ++i) update_dmin(s, dists, config);
        CHECK(std::abs(s.d_min[0] - 60.0) <= 0.01 * 60.0);
    }
    SUBCASE("d_min_hat saturates at 1") {
        PixelStateMap s = one_pixel_state(config);
        s.d_min[0] = 400.0;
        const std::vector<DistanceMap> dists{DistanceMap(1, 1, 500.0)};
        update_dmin(s, dists, config);
        CHECK(s.d_min_hat[0] == 1.0);
    }
}

TEST_CASE("update_r steers toward the scaled d_min and clamps at the floor") {
    FeedbackConfig config;
    config.r_scale = 1.0;

    PixelStateMap s = one_pixel_state(config);
    s.d_min[0] = 100.0;  // target 100 > R=35 -> grow
    update_r(s, config);
    CHECK(s.r[0] == doctest::Approx(35.35));

    s.r[0] = 50.0;
    s.d_min[0] = 40.0;  // target 40 < R=50 -> shrink
    update_r(s, config);
    CHECK(s.r[0] == doctest::Approx(49.5));

    s.r[0] = 35.0;
    s.d_min[0] = 10.0;  // 34.65 undershoots the floor -> clamped
    update_r(s, config);
    CHECK(s.r[0] == doctest::Approx(35.0));
}

TEST_CASE("update_v accumulates blink transitions and decays elsewhere") {
    const FeedbackConfig config;
    PixelStateMap s = one_pixel_state(config);

    update_v(s, ForegroundMask(1, 1, 1), ForegroundMask(1, 1, 0));  // XOR = 1
    CHECK(s.v[0] == doctest::Approx(1.0));

    s.v[0] = 3.0;
    update_v(s, ForegroundMask(1, 1, 1), ForegroundMask(1, 1, 1));  // intersection -> 0
    CHECK(s.v[0] == doctest::Approx(2.9));

    s.v[0] = 0.05;
    update_v(s, ForegroundMask(1, 1, 0), ForegroundMask(1, 1, 0));
    CHECK(s.v[0] == 0.0);  // floor at 0
}

TEST_CASE("update_t applies the two-branch learning-rate rule") {
    const FeedbackConfig config;

    PixelStateMap s = one_pixel_state(config);
    s.t[0] = 10.0;
    s.v[0] = 0.0;
    s.d_min_hat[0] = 0.5;
    update_t(s, ForegroundMask(1, 1, 1), config);
    CHECK(s.t[0] == doctest::Approx(11.0));  // 1/(0*0.5+1) = 1

    s.t[0] = 10.0;
    s.v[0] = 0.0;
    s.d_min_hat[0] = 0.0;
    update_t(s, ForegroundMask(1, 1, 0), config);
    CHECK(s.t[0] == doctest::Approx(9.9));  // -(0+0.1)/1

    s.t[0] = 10.0;
    s.v[0] = 9.0;
    s.d_min_hat[0] = 1.0;
    update_t(s, ForegroundMask(1, 1, 1), config);
    CHECK(s.t[0] == doctest::Approx(10.1));  // blinking slows the gain

    s.t[0] = 2.05;
    s.v[0] = 5.0;
    s.d_min_hat[0] = 0.0;
    update_t(s, ForegroundMask(1, 1, 0), config);
    CHECK(s.t[0] == doctest::Approx(config.t_lower));  // clamped
}

TEST_CASE("persistent labels move T at the exact textbook rates") {
    const FeedbackConfig config;
    PixelStateMap s = one_pixel_state(config);  // v = 0, d_min_hat = 0, t = 16

    for (int i = 1; i <= 4; ++i) {
        update_t(s, ForegroundMask(1, 1, 1), config);
        CHECK(s.t[0] == doctest::Approx(16.0 + i));  // +1 per foreground frame
    }
    PixelStateMap b = one_pixel_state(config);
    for (int i = 1; i <= 5; ++i) {
        update_t(b, ForegroundMask(1, 1, 0), config);
        CHECK(b.t[0] == doctest::Approx(16.0 - 0.1 * i));  // -0.1 per background frame
    }
}

TEST_CASE("alternating masks grow v by one per flip") {
    const FeedbackConfig config;
    PixelStateMap s = one_pixel_state(config);
    ForegroundMask prev(1, 1, 0);
    for (int i = 1; i <= 6; ++i) {
        ForegroundMask cur(1, 1, static_cast<std::uint8_t>(i % 2));
        update_v(s, cur, prev);
        prev = cur;
    }
    CHECK(s.v[0] == doctest::Approx(6.0));
}

TEST_CASE("update_background blends one random frame convexly") {
    const FeedbackConfig config;
    Pcg32 rng(99);

    SUBCASE("midpoint at T = 2") {
        std::vector<FrameVector> bank{FrameVector(1, 1, 100.0)};
        PixelStateMap s = one_pixel_state(config);
        s.t[0] = 2.0;
        update_background(bank, FrameVector(1, 1, 200.0), s, rng);
        CHECK(bank[0][0] == doctest::Approx(150.0));
    }
    SUBCASE("huge T freezes the pixel") {
        std::vector<FrameVector> bank{FrameVector(1, 1, 100.0)};
        PixelStateMap s = one_pixel_state(config);
        s.t[0] = 1e15;
        update_background(bank, FrameVector(1, 1, 200.0), s, rng);
        CHECK(bank[0][0] == doctest::Approx(100.0).epsilon(1e-9));
    }
    SUBCASE("repeated updates converge monotonically inside the hull") {
        std::vector<FrameVector> bank{FrameVector(2, 2, 40.0)};
        const FrameVector target(2, 2, 90.0);
        PixelStateMap s = PixelStateMap::initial(2, 2, config);
        double prev = 40.0;
        for (int i = 0; i < 50; ++i) {
            update_background(bank, target, s, rng);
            for (double v : bank[0]) {
                CHECK(v >= prev);
                CHECK(v <= 90.0);
            }
            prev = bank[0][0];
        }
        CHECK(bank[0][0] > 85.0);
    }
    SUBCASE("only the chosen frame changes") {
        std::vector<FrameVector> bank{FrameVector(1, 1, 10.0), FrameVector(1, 1, 20.0),
                                      FrameVector(1, 1, 30.0)};
        PixelStateMap s = one_pixel_state(config);
        const int chosen = update_background(bank, FrameVector(1, 1, 250.0), s, rng);
        const double originals[3] = {10.0, 20.0, 30.0};
        for (int i = 0; i < 3; ++i) {
            if (i == chosen) CHECK(bank[i][0] != originals[i]);
            else CHECK(bank[i][0] == originals[i]);
        }
    }
}

TEST_CASE("state invariants hold through random update storms") {
    const FeedbackConfig config;
    Pcg32 rng(123);
    PixelStateMap s = PixelStateMap::initial(6, 6, config);
    ForegroundMask prev(6, 6, 0);

    for (int step = 0; step < 300; ++step) {
        std::vector<DistanceMap> dists;
        for (int i = 0; i < 3; ++i) dists.push_back(testutil::random_frame(rng, 6, 6, 0.0, 400.0));
        const ForegroundMask mask = testutil::random_mask(rng, 6, 6);
        update_dmin(s, dists, config);
        update_r(s, config);
        update_v(s, mask, prev);
        update_t(s, mask, config);
        prev = mask;

        for (std::size_t i = 0; i < s.r.size(); ++i) {
            CHECK(s.r[i] >= config.r_lower);
            CHECK(s.t[i] >= config.t_lower);
            CHECK(s.v[i] >= 0.0);
            CHECK(s.d_min[i] >= 0.0);
            CHECK(s.d_min_hat[i] >= 0.0);
            CHECK(s.d_min_hat[i] <= 1.0);
        }
    }
}

TEST_CASE("scene-change statistics behave as specified") {
    SynthConfig synth_config;
    synth_config.scenario = SynthScenario::scene_cut;
    synth_config.length = 120;
    synth_config.height = 80;
    synth_config.width = 100;
    synth_config.seed = 5;
    const SynthSequence seq(synth_config);
    const FeedbackConfig config;

    SUBCASE("identical frames never trigger") {
        const FrameVector f = seq.frame(10);
        const SceneChangeStats stats = scene_change_stats(f, f);
        CHECK(stats.mafd == 0.0);
        CHECK(detect_scene_change(f, f, config) == false);
    }
    SUBCASE("a hard cut exceeds every threshold") {
        const FrameVector before = seq.frame(seq.cut_frame() - 1);
        const FrameVector after = seq.frame(seq.cut_frame());
        const SceneChangeStats stats = scene_change_stats(after, before);
        CHECK(stats.mafd > config.mafd_threshold);
        CHECK(stats.maed > config.maed_threshold);
        CHECK(stats.adfv > config.adfv_threshold);
        CHECK(detect_scene_change(after, before, config));
    }
    SUBCASE("a mild global shift stays below the intensity threshold") {
        const FrameVector f = seq.frame(10);
        FrameVector shifted = f;
        for (auto& v : shifted) v += 5.0;
        const SceneChangeStats stats = scene_change_stats(shifted, f);
        CHECK(stats.mafd == doctest::Approx(5.0));
        CHECK(stats.adfv == doctest::Approx(0.0));
        CHECK(detect_scene_change(shifted, f, config) == false);
    }
    SUBCASE("statistics are symmetric and deterministic") {
        const FrameVector a = seq.frame(seq.cut_frame() - 1);
        const FrameVector b = seq.frame(seq.cut_frame());
        const SceneChangeStats ab = scene_change_stats(a, b);
        const SceneChangeStats ba = scene_change_stats(b, a);
        CHECK(ab.mafd == doctest::Approx(ba.mafd));
        CHECK(ab.maed == doctest::Approx(ba.maed));
        CHECK(ab.adfv == doctest::Approx(ba.adfv));
        const SceneChangeStats again = scene_change_stats(a, b);
        CHECK(ab.mafd == again.mafd);
        CHECK(ab.maed == again.maed);
        CHECK(ab.adfv == again.adfv);
    }
}

TEST_CASE("statistics oracle: direct recomputation from the definitions") {
    Pcg32 rng(77);
    const FrameVector a = testutil::random_frame(rng, 12, 14);
    const FrameVector b = testutil::random_frame(rng, 12, 14);
    const SceneChangeStats stats = scene_change_stats(a, b);

    const std::size_t n = a.size();
    double sum = 0.0;
    for (std::size_t i = 0; i < n; ++i) sum += std::abs(a[i] - b[i]);
    const double mafd = sum / static_cast<double>(n);
    CHECK(stats.mafd == doctest::Approx(mafd).epsilon(1e-12));

    double var = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double d = std::abs(a[i] - b[i]) - mafd;
        var += d * d;
    }
    CHECK(stats.adfv == doctest::Approx(var / static_cast<double>(n) / 255.0).epsilon(1e-9));
}
