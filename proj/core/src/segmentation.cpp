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

#include "cvbgs/segmentation.hpp"

#include <algorithm>
#include <stdexcept>
#include <vector>

namespace cvbgs {

namespace {

// Inclusive-rectangle sum over a summed-area table with one padding row/col.
class BinarySat {
public:
    explicit BinarySat(const ForegroundMask& mask)
        : h_(mask.height()), w_(mask.width()), sat_((h_ + 1) * (w_ + 1), 0) {
        for (int y = 0; y < h_; ++y)
            for (int x = 0; x < w_; ++x)
                sat_[idx(y + 1, x + 1)] = sat_[idx(y, x + 1)] + sat_[idx(y + 1, x)] -
                                          sat_[idx(y, x)] + (mask.at(y, x) ? 1 : 0);
    }

    int count(int y0, int x0, int y1, int x1) const {  // inclusive corners
        return sat_[idx(y1 + 1, x1 + 1)] - sat_[idx(y0, x1 + 1)] - sat_[idx(y1 + 1, x0)] +
               sat_[idx(y0, x0)];
    }

private:
    std::size_t idx(int y, int x) const { return static_cast<std::size_t>(y) * (w_ + 1) + x; }
    int h_, w_;
    std::vector<int> sat_;
};

}  // namespace

ForegroundMask decide_foreground(std::span<const DistanceMap> dists,
                                 const Grid<double>& threshold_map, int min_count) {
    if (dists.empty()) throw std::invalid_argument("decide_foreground: no distance maps");
    for (const auto& d : dists) require_same_size(d, threshold_map, "decide_foreground");
    if (min_count < 0) throw std::invalid_argument("decide_foreground: min_count must be >= 0");

    ForegroundMask mask(threshold_map.height(), threshold_map.width(), 0);
    const std::size_t n = mask.size();
    std::vector<int> hits(n, 0);
    for (const DistanceMap& d : dists) {
        const double* dp = d.data();
        const double* rp = threshold_map.data();
        for (std::size_t i = 0; i < n; ++i) hits[i] += dp[i] >= rp[i] ? 1 : 0;
    }
    for (std::size_t i = 0; i < n; ++i) mask[i] = hits[i] > min_count ? 1 : 0;
    return mask;
}

ForegroundMask median_filter_9x9(const ForegroundMask& mask) {
    const int h = mask.height(), w = mask.width(), r = 4;
    BinarySat sat(mask);
    ForegroundMask out(h, w, 0);
    for (int y = 0; y < h; ++y) {
        const int y0 = std::max(0, y - r), y1 = std::min(h - 1, y + r);
        for (int x = 0; x < w; ++x) {
            const int x0 = std::max(0, x - r), x1 = std::min(w - 1, x + r);
            const int area = (y1 - y0 + 1) * (x1 - x0 + 1);
            const int ones = sat.count(y0, x0, y1, x1);
            out.at(y, x) = 2 * ones > area ? 1 : 0;  // ties go to background
        }
    }
    return out;
}

ForegroundMask binary_open_3x3(const ForegroundMask& mask) {
    const int h = mask.height(), w = mask.width();
    BinarySat sat(mask);
    ForegroundMask eroded(h, w, 0);
    for (int y = 0; y < h; ++y) {
        const int y0 = std::max(0, y - 1), y1 = std::min(h - 1, y + 1);
        for (int x = 0; x < w; ++x) {
            const int x0 = std::max(0, x - 1), x1 = std::min(w - 1, x + 1);
            const int area = (y1 - y0 + 1) * (x1 - x0 + 1);
            eroded.at(y, x) = sat.count(y0, x0, y1, x1) == area ? 1 : 0;
        }
    }
    BinarySat esat(eroded);
    ForegroundMask out(h, w, 0);
    for (int y = 0; y < h; ++y) {
        const int y0 = std::max(0, y - 1), y1 = std::min(h - 1, y + 1);
        for (int x = 0; x < w; ++x) {
            const int x0 = std::max(0, x - 1), x1 = std::min(w - 1, x + 1);
            out.at(y, x) = esat.count(y0, x0, y1, x1) > 0 ? 1 : 0;
        }
    }
    return out;
}

ForegroundMask remove_small_components(const ForegroundMask& mask, int min_area) {
    const int h = mask.height(), w = mask.width();
    ForegroundMask out = mask;
    std::vector<std::uint8_t> seen(mask.size(), 0);
    std::vector<std::size_t> stack, component;

    for (std::size_t start = 0; start < mask.size(); ++start) {
        if (!mask[start] || seen[start]) continue;
        component.clear();
        stack.assign(1, start);
        seen[start] = 1;
        while (!stack.empty()) {
            const std::size_t i = stack.back();
            stack.pop_back();
            component.push_back(i);
            const int y = static_cast<int>(i) / w, x = static_cast<int>(i) % w;
            const int ny[4] = {y - 1, y + 1, y, y};
            const int nx[4] = {x, x, x - 1, x + 1};
            for (int k = 0; k < 4; ++k) {
                if (ny[k] < 0 || ny[k] >= h || nx[k] < 0 || nx[k] >= w) continue;
                const std::size_t j = static_cast<std::size_t>(ny[k]) * w + nx[k];
                if (mask[j] && !seen[j]) {
                    seen[j] = 1;
                    stack.push_back(j);
                }
            }
        }
        if (static_cast<int>(component.size()) < min_area)
            for (std::size_t i : component) out[i] = 0;
    }
    return out;
}

ForegroundMask post_process(const ForegroundMask& mask, const PostProcessConfig& config) {
    ForegroundMask out = mask;
    if (config.median_filter) out = median_filter_9x9(out);
    if (config.opening) out = binary_open_3x3(out);
    if (config.area_filter) out = remove_small_components(out, config.min_blob);
    return out;
}

}  // namespace cvbgs
