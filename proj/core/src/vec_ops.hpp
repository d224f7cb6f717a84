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

namespace cvbgs::detail {

// Independent accumulators break the FP dependency chain; the summation
// order is fixed, so results stay run-to-run reproducible.
inline double dot(const double* a, const double* b, std::size_t n) {
    double s0 = 0.0, s1 = 0.0, s2 = 0.0, s3 = 0.0;
    double s4 = 0.0, s5 = 0.0, s6 = 0.0, s7 = 0.0;
    std::size_t i = 0;
    for (; i + 8 <= n; i += 8) {
        s0 += a[i] * b[i];
        s1 += a[i + 1] * b[i + 1];
        s2 += a[i + 2] * b[i + 2];
        s3 += a[i + 3] * b[i + 3];
        s4 += a[i + 4] * b[i + 4];
        s5 += a[i + 5] * b[i + 5];
        s6 += a[i + 6] * b[i + 6];
        s7 += a[i + 7] * b[i + 7];
    }
    double s = ((s0 + s1) + (s2 + s3)) + ((s4 + s5) + (s6 + s7));
    for (; i < n; ++i) s += a[i] * b[i];
    return s;
}

inline double norm(const double* a, std::size_t n) { return std::sqrt(dot(a, a, n)); }

/// y -= c * x
inline void axpy_sub(double* y, double c, const double* x, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) y[i] -= c * x[i];
}

inline void scale(double* y, double c, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) y[i] *= c;
}

// Fused Gram-Schmidt kernels: one pass over the candidate instead of two.
// Elementwise they compute exactly what the separate axpy + dot would.

/// <a, b> and ||a||^2 in a single pass.
inline void dot_and_norm2(const double* a, const double* b, std::size_t n, double& out_dot,
                          double& out_norm2) {
    double d0 = 0.0, d1 = 0.0, d2 = 0.0, d3 = 0.0;
    double q0 = 0.0, q1 = 0.0, q2 = 0.0, q3 = 0.0;
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        d0 += a[i] * b[i];
        d1 += a[i + 1] * b[i + 1];
        d2 += a[i + 2] * b[i + 2];
        d3 += a[i + 3] * b[i + 3];
        q0 += a[i] * a[i];
        q1 += a[i + 1] * a[i + 1];
        q2 += a[i + 2] * a[i + 2];
        q3 += a[i + 3] * a[i + 3];
    }
    double d = (d0 + d1) + (d2 + d3);
    double q = (q0 + q1) + (q2 + q3);
    for (; i < n; ++i) {
        d += a[i] * b[i];
        q += a[i] * a[i];
    }
    out_dot = d;
    out_norm2 = q;
}

/// y -= c * x_prev, returning <y_updated, x_next>.
inline double axpy_dot(double* y, double c, const double* x_prev, const double* x_next,
                       std::size_t n) {
    double s0 = 0.0, s1 = 0.0, s2 = 0.0, s3 = 0.0;
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        const double y0 = y[i] - c * x_prev[i];
        const double y1 = y[i + 1] - c * x_prev[i + 1];
        const double y2 = y[i + 2] - c * x_prev[i + 2];
        const double y3 = y[i + 3] - c * x_prev[i + 3];
        y[i] = y0;
        y[i + 1] = y1;
        y[i + 2] = y2;
        y[i + 3] = y3;
        s0 += y0 * x_next[i];
        s1 += y1 * x_next[i + 1];
        s2 += y2 * x_next[i + 2];
        s3 += y3 * x_next[i + 3];
    }
    double s = (s0 + s1) + (s2 + s3);
    for (; i < n; ++i) {
        y[i] -= c * x_prev[i];
        s += y[i] * x_next[i];
    }
    return s;
}

/// y -= c * x, returning ||y_updated||^2.
inline double axpy_norm2(double* y, double c, const double* x, std::size_t n) {
    double s0 = 0.0, s1 = 0.0, s2 = 0.0, s3 = 0.0;
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        const double y0 = y[i] - c * x[i];
        const double y1 = y[i + 1] - c * x[i + 1];
        const double y2 = y[i + 2] - c * x[i + 2];
        const double y3 = y[i + 3] - c * x[i + 3];
        y[i] = y0;
        y[i + 1] = y1;
        y[i + 2] = y2;
        y[i + 3] = y3;
        s0 += y0 * y0;
        s1 += y1 * y1;
        s2 += y2 * y2;
        s3 += y3 * y3;
    }
    double s = (s0 + s1) + (s2 + s3);
    for (; i < n; ++i) {
        y[i] -= c * x[i];
        s += y[i] * y[i];
    }
    return s;
}

}  // namespace cvbgs::detail
