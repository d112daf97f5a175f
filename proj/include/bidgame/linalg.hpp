/*
 * Copyright 2026 The bidgame Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */
#pragma once

#include <cstddef>
#include <optional>
#include <utility>
#include <vector>

#include "bidgame/rational.hpp"

namespace bidgame {

using Matrix = std::vector<std::vector<Rational>>;

/// Solves A x = b exactly by Gauss-Jordan elimination; nullopt if A is singular.
/// Zero entries are skipped, which matters for the sparse systems policy
/// evaluation produces.
inline std::optional<std::vector<Rational>> solve_linear(Matrix a, std::vector<Rational> b)
{
    const std::size_t n = a.size();
    std::vector<std::size_t> nz;
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t piv = col;
        while (piv < n && a[piv][col] == 0) ++piv;
        if (piv == n) return std::nullopt;
        std::swap(a[piv], a[col]);
        std::swap(b[piv], b[col]);
        Rational inv = 1 / a[col][col];
        nz.clear();
        for (std::size_t j = col; j < n; ++j)
            if (a[col][j] != 0) {
                a[col][j] *= inv;
                nz.push_back(j);
            }
        b[col] *= inv;
        for (std::size_t row = 0; row < n; ++row) {
            if (row == col || a[row][col] == 0) continue;
            Rational f = a[row][col];
            for (auto j : nz) a[row][j] -= f * a[col][j];
            b[row] -= f * b[col];
        }
    }
    return b;
}

} // namespace bidgame
