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

#include <span>
#include <vector>

#include "cvbgs/grid.hpp"

namespace cvbgs {

/// Relative norm threshold below which a Gram-Schmidt candidate is treated as
/// rank-deficient and dropped.
inline constexpr double kDefaultDropTol = 1e-10;

/// Orthonormal vectors spanning the difference subspace of a frame bank.
struct OrthonormalBasis {
    std::vector<FrameVector> vectors;  ///< unit vectors z_1..z_m, m <= source_count - 1
    int source_count = 0;              ///< number of bank frames the basis was built from

    bool empty() const { return vectors.empty(); }
    std::size_t size() const { return vectors.size(); }
};

/// The component shared by every frame of a bank: a bank frame minus its
/// projection onto the difference subspace. Grey-level scaled, but values may
/// leave [0,255] when the bank frames are strongly correlated.
struct CommonVector {
    FrameVector values;
};

/// A test frame with its difference-subspace component removed.
struct DiscriminativeCommonVector {
    FrameVector values;
};

/// Differences d_j = bank[j] - bank[ref_index] for every j != ref_index, in
/// bank order. Requires at least two frames of identical dimensions.
std::vector<FrameVector> difference_vectors(std::span<const FrameVector> bank,
                                            int ref_index = 0);

/// Modified Gram-Schmidt over the difference vectors, in order. A candidate
/// whose remaining norm is <= drop_tol * max(1, original norm) is dropped as
/// rank-deficient; an all-dropped input yields an empty (degenerate) basis,
/// which downstream ops treat as "common vector equals the reference frame".
OrthonormalBasis gram_schmidt(std::span<const FrameVector> diffs,
                              double drop_tol = kDefaultDropTol);

/// Same computation, but consumes the input and orthonormalizes in place so
/// per-frame rebuilds avoid copying the whole difference set.
OrthonormalBasis gram_schmidt(std::vector<FrameVector>&& diffs,
                              double drop_tol = kDefaultDropTol);

/// Sum of <a, z_i> z_i over the basis; an empty basis yields the zero vector.
FrameVector project_onto_basis(const FrameVector& a, const OrthonormalBasis& basis);

/// bank[ref_index] minus its projection onto the basis. The result is
/// independent of ref_index (any bank frame works as the reference).
CommonVector common_vector(std::span<const FrameVector> bank, const OrthonormalBasis& basis,
                           int ref_index = 0);

/// Same quantity computed from the bank average instead of a reference frame;
/// agrees with common_vector() to roundoff.
CommonVector common_vector_via_average(std::span<const FrameVector> bank,
                                       const OrthonormalBasis& basis);

/// test minus its projection onto the bank's basis.
DiscriminativeCommonVector discriminative_common_vector(const FrameVector& test,
                                                        const OrthonormalBasis& basis);

/// Elementwise arithmetic mean of the bank.
FrameVector average_vector(std::span<const FrameVector> bank);

}  // namespace cvbgs
