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

#include "cvbgs/cva.hpp"

#include <algorithm>
#include <stdexcept>

#include "mgs_detail.hpp"
#include "vec_ops.hpp"

namespace cvbgs {

namespace {

void require_uniform(std::span<const FrameVector> frames, const char* what) {
    if (frames.empty()) throw std::invalid_argument(std::string(what) + ": empty input");
    for (const auto& f : frames) require_same_size(frames.front(), f, what);
}

}  // namespace

std::vector<FrameVector> difference_vectors(std::span<const FrameVector> bank, int ref_index) {
    if (bank.size() < 2)
        throw std::invalid_argument("difference_vectors: need at least 2 bank frames");
    if (ref_index < 0 || static_cast<std::size_t>(ref_index) >= bank.size())
        throw std::invalid_argument("difference_vectors: ref_index out of range");
    require_uniform(bank, "difference_vectors");

    const FrameVector& ref = bank[static_cast<std::size_t>(ref_index)];
    std::vector<FrameVector> diffs;
    diffs.reserve(bank.size() - 1);
    for (std::size_t j = 0; j < bank.size(); ++j) {
        if (j == static_cast<std::size_t>(ref_index)) continue;
        FrameVector d(ref.height(), ref.width());
        const double* a = bank[j].data();
        const double* r = ref.data();
        double* out = d.data();
        for (std::size_t i = 0; i < d.size(); ++i) out[i] = a[i] - r[i];
        diffs.push_back(std::move(d));
    }
    return diffs;
}

OrthonormalBasis gram_schmidt(std::span<const FrameVector> diffs, double drop_tol) {
    std::vector<FrameVector> work(diffs.begin(), diffs.end());
    return gram_schmidt(std::move(work), drop_tol);
}

namespace detail {

// Column-oriented modified Gram-Schmidt: accepted unit vectors are packed at
// the front of the row array, each candidate is orthogonalized against them
// one vector at a time using its updated value. The axpy of one projection is
// fused with the dot of the next, so the candidate streams once per basis
// vector instead of twice.
std::size_t orthonormalize_rows(std::vector<double*>& rows, std::size_t length, double drop_tol) {
    const std::size_t n = length;
    std::size_t accepted = 0;
    for (std::size_t j = 0; j < rows.size(); ++j) {
        double* cand = rows[j];

        double orig_norm, nrm;
        if (accepted == 0) {
            orig_norm = detail::norm(cand, n);
            nrm = orig_norm;
        } else {
            double c, orig_sq;
            detail::dot_and_norm2(cand, rows[0], n, c, orig_sq);
            orig_norm = std::sqrt(orig_sq);
            for (std::size_t i = 1; i < accepted; ++i)
                c = detail::axpy_dot(cand, c, rows[i - 1], rows[i], n);
            nrm = std::sqrt(detail::axpy_norm2(cand, c, rows[accepted - 1], n));
        }
        const double drop_at = drop_tol * std::max(1.0, orig_norm);

        // Heavy cancellation leaves O(eps * orig/new) of non-orthogonality;
        // one extra pass restores it (twice is enough).
        if (nrm > drop_at && nrm < 0.1 * orig_norm && accepted > 0) {
            for (std::size_t i = 0; i < accepted; ++i) {
                const double c = detail::dot(cand, rows[i], n);
                detail::axpy_sub(cand, c, rows[i], n);
            }
            nrm = detail::norm(cand, n);
        }

        if (nrm <= drop_at) continue;  // rank-deficient candidate
        detail::scale(cand, 1.0 / nrm, n);
        if (j != accepted) std::swap(rows[j], rows[accepted]);
        ++accepted;
    }
    return accepted;
}

}  // namespace detail

OrthonormalBasis gram_schmidt(std::vector<FrameVector>&& diffs, double drop_tol) {
    if (drop_tol <= 0.0) throw std::invalid_argument("gram_schmidt: drop_tol must be > 0");
    require_uniform(diffs, "gram_schmidt");

    const std::size_t n = diffs.front().size();
    OrthonormalBasis basis;
    basis.source_count = static_cast<int>(diffs.size()) + 1;

    std::vector<double*> rows;
    rows.reserve(diffs.size());
    for (FrameVector& d : diffs) rows.push_back(d.data());
    const std::size_t accepted = detail::orthonormalize_rows(rows, n, drop_tol);

    // Collect the owning buffers in the accepted order (pointer identity).
    basis.vectors.reserve(accepted);
    for (std::size_t i = 0; i < accepted; ++i)
        for (FrameVector& d : diffs)
            if (d.data() == rows[i]) {
                basis.vectors.push_back(std::move(d));
                break;
            }
    return basis;
}

FrameVector project_onto_basis(const FrameVector& a, const OrthonormalBasis& basis) {
    FrameVector out(a.height(), a.width(), 0.0);
    for (const FrameVector& z : basis.vectors) {
        require_same_size(a, z, "project_onto_basis");
        const double c = detail::dot(a.data(), z.data(), a.size());
        // out += c * z
        double* o = out.data();
        const double* zp = z.data();
        for (std::size_t i = 0; i < out.size(); ++i) o[i] += c * zp[i];
    }
    return out;
}

CommonVector common_vector(std::span<const FrameVector> bank, const OrthonormalBasis& basis,
                           int ref_index) {
    if (bank.empty()) throw std::invalid_argument("common_vector: empty bank");
    if (ref_index < 0 || static_cast<std::size_t>(ref_index) >= bank.size())
        throw std::invalid_argument("common_vector: ref_index out of range");

    const FrameVector& ref = bank[static_cast<std::size_t>(ref_index)];
    FrameVector proj = project_onto_basis(ref, basis);
    FrameVector out(ref.height(), ref.width());
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = ref[i] - proj[i];
    return CommonVector{std::move(out)};
}

CommonVector common_vector_via_average(std::span<const FrameVector> bank,
                                       const OrthonormalBasis& basis) {
    FrameVector ave = average_vector(bank);
    FrameVector proj = project_onto_basis(ave, basis);
    for (std::size_t i = 0; i < ave.size(); ++i) ave[i] -= proj[i];
    return CommonVector{std::move(ave)};
}

DiscriminativeCommonVector discriminative_common_vector(const FrameVector& test,
                                                        const OrthonormalBasis& basis) {
    FrameVector proj = project_onto_basis(test, basis);
    FrameVector out(test.height(), test.width());
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = test[i] - proj[i];
    return DiscriminativeCommonVector{std::move(out)};
}

FrameVector average_vector(std::span<const FrameVector> bank) {
    require_uniform(bank, "average_vector");
    FrameVector out(bank.front().height(), bank.front().width(), 0.0);
    for (const FrameVector& f : bank) {
        const double* src = f.data();
        double* o = out.data();
        for (std::size_t i = 0; i < out.size(); ++i) o[i] += src[i];
    }
    detail::scale(out.data(), 1.0 / static_cast<double>(bank.size()), out.size());
    return out;
}

}  // namespace cvbgs
