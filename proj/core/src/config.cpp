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

#include <algorithm>
#include <cctype>
#include <charconv>
#include <fstream>
#include <string_view>

#include "cvbgs/errors.hpp"

namespace cvbgs {

namespace {

std::string trim(std::string_view s) {
    const auto is_space = [](unsigned char c) { return std::isspace(c) != 0; };
    while (!s.empty() && is_space(s.front())) s.remove_prefix(1);
    while (!s.empty() && is_space(s.back())) s.remove_suffix(1);
    return std::string(s);
}

double parse_double(const std::string& key, const std::string& value) {
    try {
        std::size_t pos = 0;
        const double d = std::stod(value, &pos);
        if (pos != value.size()) throw std::invalid_argument(value);
        return d;
    } catch (const std::exception&) {
        throw ConfigError("config key '" + key + "': expected a number, got '" + value + "'");
    }
}

long long parse_int(const std::string& key, const std::string& value) {
    long long v = 0;
    const auto* begin = value.data();
    const auto* end = value.data() + value.size();
    const auto [ptr, ec] = std::from_chars(begin, end, v);
    if (ec != std::errc{} || ptr != end)
        throw ConfigError("config key '" + key + "': expected an integer, got '" + value + "'");
    return v;
}

bool parse_bool(const std::string& key, const std::string& value) {
    std::string v = value;
    std::transform(v.begin(), v.end(), v.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    if (v == "true" || v == "1" || v == "on" || v == "yes") return true;
    if (v == "false" || v == "0" || v == "off" || v == "no") return false;
    throw ConfigError("config key '" + key + "': expected a boolean, got '" + value + "'");
}

}  // namespace

void apply_config_entry(PipelineConfig& config, const std::string& key, const std::string& value) {
    if (key == "bank_size") config.bank_size = static_cast<int>(parse_int(key, value));
    else if (key == "min_count") config.min_count = static_cast<int>(parse_int(key, value));
    else if (key == "recompute_stride") config.recompute_stride = static_cast<int>(parse_int(key, value));
    else if (key == "rng_seed") config.rng_seed = static_cast<std::uint64_t>(parse_int(key, value));
    else if (key == "drop_tol") config.drop_tol = parse_double(key, value);
    else if (key == "tensor_eps") config.tensor_eps = parse_double(key, value);
    else if (key == "l1_gate") config.l1_gate = parse_double(key, value);
    else if (key == "feedback_enabled") config.feedback_enabled = parse_bool(key, value);
    else if (key == "scene_reset_enabled") config.scene_reset_enabled = parse_bool(key, value);
    else if (key == "gray_r") config.gray_r = parse_double(key, value);
    else if (key == "gray_g") config.gray_g = parse_double(key, value);
    else if (key == "gray_b") config.gray_b = parse_double(key, value);
    else if (key == "post_median") config.post.median_filter = parse_bool(key, value);
    else if (key == "post_open") config.post.opening = parse_bool(key, value);
    else if (key == "post_area_filter") config.post.area_filter = parse_bool(key, value);
    else if (key == "min_blob") config.post.min_blob = static_cast<int>(parse_int(key, value));
    else if (key == "r_lower") config.feedback.r_lower = parse_double(key, value);
    else if (key == "r_inc_dec") config.feedback.r_inc_dec = parse_double(key, value);
    else if (key == "r_scale") config.feedback.r_scale = parse_double(key, value);
    else if (key == "t_lower") config.feedback.t_lower = parse_double(key, value);
    else if (key == "t_init") config.feedback.t_init = parse_double(key, value);
    else if (key == "dmin_alpha") config.feedback.dmin_alpha = parse_double(key, value);
    else if (key == "dmin_norm") config.feedback.dmin_norm = parse_double(key, value);
    else if (key == "mafd_threshold") config.feedback.mafd_threshold = parse_double(key, value);
    else if (key == "maed_threshold") config.feedback.maed_threshold = parse_double(key, value);
    else if (key == "adfv_threshold") config.feedback.adfv_threshold = parse_double(key, value);
    else throw ConfigError("unknown config key '" + key + "'");
}

PipelineConfig load_config_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open config file: " + path.string());

    PipelineConfig config;
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const std::size_t hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        const std::string stripped = trim(line);
        if (stripped.empty()) continue;
        const std::size_t eq = stripped.find('=');
        if (eq == std::string::npos)
            throw ConfigError(path.string() + ":" + std::to_string(line_no) +
                              ": expected key=value, got '" + stripped + "'");
        const std::string key = trim(std::string_view(stripped).substr(0, eq));
        const std::string value = trim(std::string_view(stripped).substr(eq + 1));
        if (key.empty())
            throw ConfigError(path.string() + ":" + std::to_string(line_no) + ": empty key");
        apply_config_entry(config, key, value);
    }
    config.validate();
    return config;
}

}  // namespace cvbgs
