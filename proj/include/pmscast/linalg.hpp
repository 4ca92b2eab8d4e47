// SPDX-License-Identifier: Apache-2.0
//
// pmscast: link-level simulator for multicast systems with a programmable
// metasurface transmitter
// Copyright (C) 2026 The pmscast Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#ifndef PMSCAST_LINALG_HPP
#define PMSCAST_LINALG_HPP

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

namespace pmscast
{

using cplx = std::complex<double>;
using CVector = std::vector<cplx>;

// Selects whether a receive model adds thermal noise.
enum class NoiseMode
{
    enabled,
    disabled
};

// Dense column-major complex matrix. Columns are contiguous so that per-user
// channel vectors can be handed out as spans.
class ComplexMatrix
{
public:
    ComplexMatrix() = default;
    ComplexMatrix(std::size_t rows, std::size_t cols)
        : rows_(rows), cols_(cols), data_(rows * cols) {}

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    cplx &operator()(std::size_t r, std::size_t c) { return data_[c * rows_ + r]; }
    const cplx &operator()(std::size_t r, std::size_t c) const { return data_[c * rows_ + r]; }

    std::span<cplx> col(std::size_t c) { return {data_.data() + c * rows_, rows_}; }
    std::span<const cplx> col(std::size_t c) const { return {data_.data() + c * rows_, rows_}; }

    std::span<const cplx> data() const { return data_; }

    bool operator==(const ComplexMatrix &) const = default;

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<cplx> data_;
};

// Unconjugated bilinear product a^T b.
inline cplx dot_t(std::span<const cplx> a, std::span<const cplx> b)
{
    cplx s{};
    for (std::size_t i = 0; i < a.size(); ++i)
        s += a[i] * b[i];
    return s;
}

// Hermitian inner product a^H b.
inline cplx dot_h(std::span<const cplx> a, std::span<const cplx> b)
{
    cplx s{};
    for (std::size_t i = 0; i < a.size(); ++i)
        s += std::conj(a[i]) * b[i];
    return s;
}

inline double squared_norm(std::span<const cplx> a)
{
    double s = 0.0;
    for (const auto &x : a)
        s += std::norm(x);
    return s;
}

} // namespace pmscast

#endif
