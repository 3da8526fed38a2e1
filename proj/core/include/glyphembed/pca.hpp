// Copyright 2026 The glyphembed Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "glyphembed/raster.hpp"

namespace glyphembed {

// Eigenpairs of a symmetric matrix. `vectors` is n x n row-major with
// eigenvector i stored in row i (not column). Unsorted.
struct SymmetricEigen {
  std::size_t n = 0;
  std::vector<double> values;
  std::vector<double> vectors;
};

// Cyclic Jacobi rotations. `matrix` is n x n row-major and must be symmetric.
SymmetricEigen jacobi_eigen(std::span<const double> matrix, std::size_t n);

enum class PcaSolver {
  kAuto,        // covariance when features <= 512 or features <= rows, else Gram
  kCovariance,  // eigendecompose the features x features covariance
  kGram,        // eigendecompose the rows x rows Gram matrix and map back
};

struct PcaModel {
  std::size_t features = 0;          // m * n
  std::vector<double> mean;          // length `features`
  std::vector<double> components;    // max_dimension() x features, orthonormal rows
  std::vector<double> eigenvalues;   // non-increasing, >= 0

  std::size_t max_dimension() const noexcept { return eigenvalues.size(); }
  std::span<const double> component(std::size_t i) const {
    return std::span<const double>(components).subspan(i * features, features);
  }
};

// Population covariance (divisor N). Components are sign-canonicalized so
// their largest-magnitude entry is positive; eigenvalues below 1e-12 of the
// largest are clamped to 0.
PcaModel fit_pca(std::span<const double> data, std::size_t rows, std::size_t cols,
                 PcaSolver solver = PcaSolver::kAuto);
PcaModel fit_pca(const RasterMatrix& matrix, PcaSolver solver = PcaSolver::kAuto);

// Fraction of total variance captured by the first d components, 1 <= d <= d_max.
double explained_variance_ratio(const PcaModel& model, std::size_t d);
// Entry d-1 is the ratio for d; the last entry is exactly 1.
std::vector<double> cumulative_variance_ratios(const PcaModel& model);
// Smallest d whose ratio reaches `threshold` in (0, 1].
std::size_t choose_dimension(const PcaModel& model, double threshold);

std::vector<double> project(const PcaModel& model, std::span<const double> x, std::size_t d);

// Number of eigenvalues kept as nonzero.
std::size_t pca_rank(const PcaModel& model);

// "d\tratio" header then one row per d in 1..d_max.
std::string format_variance_report(const PcaModel& model);

}  // namespace glyphembed
