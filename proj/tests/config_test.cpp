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

#include "cvbgs/config.hpp"

#include <doctest.h>

#include <fstream>

#include "cvbgs/errors.hpp"
#include "testutil.hpp"

using namespace cvbgs;

TEST_CASE("defaults carry the documented constants") {
    const PipelineConfig config;
    CHECK(config.bank_size == 35);
    CHECK(config.effective_min_count() == 34);
    CHECK(config.recompute_stride == 1);
    CHECK(config.feedback.r_lower == 35.0);
    CHECK(config.feedback.r_inc_dec == 0.01);
    CHECK(config.feedback.t_lower == 2.0);
    CHECK(config.feedback.mafd_threshold == 30.0);
    CHECK(config.feedback.maed_threshold == 0.1);
    CHECK(config.feedback.adfv_threshold == 2.0);
    CHECK(config.post.min_blob == 15);
    CHECK_NOTHROW(config.validate());
}

TEST_CASE("load_config_file parses key=value lines with comments") {
    const auto dir = testutil::scratch_dir("config_ok");
    const auto path = dir / "pipeline.cfg";
    {
        std::ofstream out(path);
        out << "# pipeline settings\n"
            << "bank_size = 20\n"
            << "r_scale=2.0   # dynamic scene\n"
            << "\n"
            << "post_median = false\n"
            << "rng_seed = 99\n"
            << "min_count = 19\n";
    }
    const PipelineConfig config = load_config_file(path);
    CHECK(config.bank_size == 20);
    CHECK(config.feedback.r_scale == 2.0);
    CHECK(config.post.median_filter == false);
    CHECK(config.rng_seed == 99);
    CHECK(config.effective_min_count() == 19);
}

TEST_CASE("unknown keys are rejected by name") {
    PipelineConfig config;
    CHECK_THROWS_WITH_AS(apply_config_entry(config, "bank_sized", "10"),
                         doctest::Contains("bank_sized"), ConfigError);

    const auto dir = testutil::scratch_dir("config_unknown");
    const auto path = dir / "bad.cfg";
    std::ofstream(path) << "no_such_key = 1\n";
    CHECK_THROWS_WITH_AS(load_config_file(path), doctest::Contains("no_such_key"), ConfigError);
}

TEST_CASE("malformed values name the key") {
    PipelineConfig config;
    CHECK_THROWS_WITH_AS(apply_config_entry(config, "bank_size", "many"),
                         doctest::Contains("bank_size"), ConfigError);
    CHECK_THROWS_WITH_AS(apply_config_entry(config, "r_scale", "fast"),
                         doctest::Contains("r_scale"), ConfigError);
    CHECK_THROWS_WITH_AS(apply_config_entry(config, "post_open", "maybe"),
                         doctest::Contains("post_open"), ConfigError);
}

TEST_CASE("validate rejects out-of-range settings") {
    PipelineConfig config;
    config.bank_size = 1;
    CHECK_THROWS_AS(config.validate(), ConfigError);

    config = PipelineConfig{};
    config.recompute_stride = 0;
    CHECK_THROWS_AS(config.validate(), ConfigError);

    config = PipelineConfig{};
    config.feedback.r_scale = -1.0;
    CHECK_THROWS_AS(config.validate(), ConfigError);

    config = PipelineConfig{};
    config.min_count = 40;  // >= bank_size
    CHECK_THROWS_AS(config.validate(), ConfigError);
}

TEST_CASE("missing config files raise an I/O error") {
    CHECK_THROWS_AS(load_config_file("/nonexistent/path/pipeline.cfg"), IoError);
}
