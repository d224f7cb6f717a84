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

#include <cstddef>
#include <vector>

namespace cvbgs::detail {

/// In-place modified Gram-Schmidt over equal-length rows. Reorders the
/// pointer array so the accepted, normalized vectors occupy the front and
/// returns their count. Row storage is owned by the caller.
std::size_t orthonormalize_rows(std::vector<double*>& rows, std::size_t length, double drop_tol);

}  // namespace cvbgs::detail
