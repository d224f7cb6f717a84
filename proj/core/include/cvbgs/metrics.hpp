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

#include "cvbgs/grid.hpp"

namespace cvbgs {

struct ConfusionCounts {
    std::uint64_t tp = 0;
    std::uint64_t tn = 0;
    std::uint64_t fp = 0;
    std::uint64_t fn = 0;

    std::uint64_t total() const { return tp + tn + fp + fn; }

    ConfusionCounts& operator+=(const ConfusionCounts& o) {
        tp += o.tp;
        tn += o.tn;
        fp += o.fp;
        fn += o.fn;
        return *this;
    }
};

double precision(const ConfusionCounts& c);
double recall(const ConfusionCounts& c);

/// Harmonic mean of precision and recall; 0 for every degenerate case.
double f_score(const ConfusionCounts& c);

/// Matthews correlation coefficient in [-1, 1] (square-root denominator);
/// 0 whenever one of the four marginals is empty.
double mcc(const ConfusionCounts& c);

// Ground-truth label conventions (CDnet 2014).
inline constexpr std::uint8_t kGtShadow = 50;      ///< counts as background
inline constexpr std::uint8_t kGtOutsideRoi = 85;  ///< skipped
inline constexpr std::uint8_t kGtUnknown = 170;    ///< skipped
inline constexpr std::uint8_t kGtForeground = 255;

/// Accumulates pixel counts. Skips pixels where roi is 0 (pass nullptr for an
/// all-valid ROI) and the out-of-scope/unknown ground-truth labels; shadow
/// counts as background.
void accumulate_confusion(const ForegroundMask& mask, const Grid<std::uint8_t>& gt,
                          const Grid<std::uint8_t>* roi, ConfusionCounts& counts);

}  // namespace cvbgs
