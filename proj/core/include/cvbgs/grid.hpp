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

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace cvbgs {

/// Dense row-major 2-D buffer. Frames, distance maps and masks all share this
/// storage type; the aliases below name the element meaning.
template <typename T>
class Grid {
public:
    Grid() = default;

    Grid(int height, int width, T value = T{})
        : height_(height), width_(width), data_(checked_size(height, width), value) {}

    Grid(int height, int width, std::vector<T> data)
        : height_(height), width_(width), data_(std::move(data)) {
        if (data_.size() != checked_size(height, width))
            throw std::invalid_argument("Grid: data length does not match height*width");
    }

    int height() const { return height_; }
    int width() const { return width_; }
    std::size_t size() const { return data_.size(); }
    bool empty() const { return data_.empty(); }

    T* data() { return data_.data(); }
    const T* data() const { return data_.data(); }

    T& operator[](std::size_t i) { return data_[i]; }
    const T& operator[](std::size_t i) const { return data_[i]; }

    T& at(int y, int x) { return data_[static_cast<std::size_t>(y) * width_ + x]; }
    const T& at(int y, int x) const { return data_[static_cast<std::size_t>(y) * width_ + x]; }

    bool same_size(const Grid& other) const {
        return height_ == other.height_ && width_ == other.width_;
    }

    auto begin() { return data_.begin(); }
    auto end() { return data_.end(); }
    auto begin() const { return data_.begin(); }
    auto end() const { return data_.end(); }

private:
    static std::size_t checked_size(int height, int width) {
        if (height < 1 || width < 1)
            throw std::invalid_argument("Grid: height and width must be >= 1");
        return static_cast<std::size_t>(height) * static_cast<std::size_t>(width);
    }

    int height_ = 0;
    int width_ = 0;
    std::vector<T> data_;
};

/// One grayscale frame flattened to height*width doubles (grey levels;
/// 0-255 after ingestion, derived maps may leave that range).
using FrameVector = Grid<double>;

/// Per-pixel nonnegative distances in grey-level units.
using DistanceMap = Grid<double>;

/// Per-pixel labels, 0 = background, 1 = foreground.
using ForegroundMask = Grid<std::uint8_t>;

template <typename T>
void require_same_size(const Grid<T>& a, const Grid<T>& b, const char* what) {
    if (!a.same_size(b))
        throw std::invalid_argument(std::string(what) + ": dimension mismatch");
}

inline bool all_finite(const FrameVector& f) {
    for (double v : f)
        if (!std::isfinite(v)) return false;
    return true;
}

}  // namespace cvbgs
