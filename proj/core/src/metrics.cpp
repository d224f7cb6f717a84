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

#include "cvbgs/metrics.hpp"

#include <cmath>

namespace cvbgs {

double precision(const ConfusionCounts& c) {
    const std::uint64_t denom = c.tp + c.fp;
    return denom == 0 ? 0.0 : static_cast<double>(c.tp) / static_cast<double>(denom);
}

double recall(const ConfusionCounts& c) {
    const std::uint64_t denom = c.tp + c.fn;
    return denom == 0 ? 0.0 : static_cast<double>(c.tp) / static_cast<double>(denom);
}

double f_score(const ConfusionCounts& c) {
    const double p = precision(c);
    const double r = recall(c);
    if (p + r == 0.0) return 0.0;
    return 2.0 * p * r / (p + r);
}

double mcc(const ConfusionCounts& c) {
    const auto tp = static_cast<double>(c.tp), tn = static_cast<double>(c.tn);
    const auto fp = static_cast<double>(c.fp), fn = static_cast<double>(c.fn);
    const double f1 = tp + fp, f2 = tp + fn, f3 = tn + fp, f4 = tn + fn;
    if (f1 == 0.0 || f2 == 0.0 || f3 == 0.0 || f4 == 0.0) return 0.0;
    // Square roots are taken factor by factor so the denominator cannot
    // overflow for large pixel counts.
    return (tp * tn - fp * fn) /
           (std::sqrt(f1) * std::sqrt(f2) * std::sqrt(f3) * std::sqrt(f4));
}

void accumulate_confusion(const ForegroundMask& mask, const Grid<std::uint8_t>& gt,
                          const Grid<std::uint8_t>* roi, ConfusionCounts& counts) {
    require_same_size(mask, gt, "accumulate_confusion");
    if (roi != nullptr) require_same_size(mask, *roi, "accumulate_confusion");

    for (std::size_t i = 0; i < mask.size(); ++i) {
        if (roi != nullptr && (*roi)[i] == 0) continue;
        const std::uint8_t label = gt[i];
        if (label == kGtOutsideRoi || label == kGtUnknown) continue;
        const bool truth = label >= 128;  // 255 foreground; 0 and shadow negative
        const bool predicted = mask[i] != 0;
        if (truth && predicted) ++counts.tp;
        else if (truth && !predicted) ++counts.fn;
        else if (!truth && predicted) ++counts.fp;
        else ++counts.tn;
    }
}

}  // namespace cvbgs
