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

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <vector>

#include "glyphembed/error.hpp"
#include "glyphembed/pca.hpp"
#include "glyphembed/rng.hpp"
#include "test_fonts.hpp"

namespace glyphembed {
namespace {

std::vector<double> random_matrix(std::size_t rows, std::size_t cols, std::uint64_t seed) {
  Rng rng(seed);
  std::vector<double> m(rows * cols);
  for (double& v : m) v = rng.uniform(-1, 1);
  return m;
}

// Covariance computed directly from the definition, independent of the solver.
std::vector<double> covariance(const std::vector<double>& data, std::size_t rows, std::size_t cols) {
  std::vector<double> mean(cols, 0.0), cov(cols * cols, 0.0);
  for (std::size_t r = 0; r < rows; ++r)
    for (std::size_t k = 0; k < cols; ++k) mean[k] += data[r * cols + k] / static_cast<double>(rows);
  for (std::size_t r = 0; r < rows; ++r)
    for (std::size_t i = 0; i < cols; ++i)
      for (std::size_t j = 0; j < cols; ++j)
        cov[i * cols + j] += (data[r * cols + i] - mean[i]) * (data[r * cols + j] - mean[j]) /
                             static_cast<double>(rows);
  return cov;
}

// Rank by Gaussian elimination with full pivoting on the centered matrix.
std::size_t gaussian_rank(std::vector<double> a, std::size_t rows, std::size_t cols, double tol) {
  std::vector<double> mean(cols, 0.0);
  for (std::size_t r = 0; r < rows; ++r)
    for (std::size_t k = 0; k < cols; ++k) mean[k] += a[r * cols + k] / static_cast<double>(rows);
  for (std::size_t r = 0; r < rows; ++r)
    for (std::size_t k = 0; k < cols; ++k) a[r * cols + k] -= mean[k];
  std::vector<bool> row_used(rows, false), col_used(cols, false);
  std::size_t rank = 0;
  for (;;) {
    std::size_t pr = 0, pc = 0;
    double best = 0;
    for (std::size_t r = 0; r < rows; ++r) {
      if (row_used[r]) continue;
      for (std::size_t c = 0; c < cols; ++c) {
        if (!col_used[c] && std::abs(a[r * cols + c]) > best) {
          best = std::abs(a[r * cols + c]);
          pr = r;
          pc = c;
        }
      }
    }
    if (best <= tol) return rank;
    row_used[pr] = col_used[pc] = true;
    ++rank;
    for (std::size_t r = 0; r < rows; ++r) {
      if (row_used[r]) continue;
      const double f = a[r * cols + pc] / a[pr * cols + pc];
      for (std::size_t c = 0; c < cols; ++c) a[r * cols + c] -= f * a[pr * cols + c];
    }
  }
}

void expect_orthonormal(const PcaModel& m, double tol) {
  for (std::size_t i = 0; i < m.max_dimension(); ++i) {
    for (std::size_t j = i; j < m.max_dimension(); ++j) {
      double d = 0;
      for (std::size_t k = 0; k < m.features; ++k) d += m.component(i)[k] * m.component(j)[k];
      EXPECT_NEAR(d, i == j ? 1.0 : 0.0, tol) << i << "," << j;
    }
  }
}

void expect_residuals(const PcaModel& m, const std::vector<double>& cov) {
  const double bound = 1e-8 * std::max(1.0, m.eigenvalues[0]);
  for (std::size_t i = 0; i < m.max_dimension(); ++i) {
    double norm2 = 0;
    for (std::size_t r = 0; r < m.features; ++r) {
      double cv = 0;
      for (std::size_t k = 0; k < m.features; ++k) cv += cov[r * m.features + k] * m.component(i)[k];
      const double diff = cv - m.eigenvalues[i] * m.component(i)[r];
      norm2 += diff * diff;
    }
    EXPECT_LE(std::sqrt(norm2), bound) << "component " << i;
  }
}

TEST(Pca, TwoPointsOnAxis) {
  const std::vector<double> data = {0, 0, 2, 0};
  const PcaModel m = fit_pca(data, 2, 2);
  EXPECT_EQ(m.max_dimension(), 2u);
  EXPECT_NEAR(m.mean[0], 1.0, 1e-12);
  EXPECT_NEAR(m.mean[1], 0.0, 1e-12);
  EXPECT_NEAR(m.eigenvalues[0], 1.0, 1e-12);
  EXPECT_NEAR(m.eigenvalues[1], 0.0, 1e-12);
  EXPECT_NEAR(m.component(0)[0], 1.0, 1e-12);
  EXPECT_NEAR(m.component(0)[1], 0.0, 1e-12);
  const std::vector<double> x = {2, 0};
  EXPECT_NEAR(project(m, x, 1)[0], 1.0, 1e-12);
}

TEST(Pca, TwoPointsOnDiagonal) {
  const std::vector<double> data = {1, 0, 0, 1};
  const PcaModel m = fit_pca(data, 2, 2);
  EXPECT_NEAR(m.mean[0], 0.5, 1e-12);
  EXPECT_NEAR(m.mean[1], 0.5, 1e-12);
  EXPECT_NEAR(m.eigenvalues[0], 0.5, 1e-12);
  EXPECT_NEAR(m.eigenvalues[1], 0.0, 1e-12);
  const double s = 1 / std::sqrt(2.0);
  EXPECT_NEAR(std::abs(m.component(0)[0] * s - m.component(0)[1] * s), 1.0, 1e-12);
}

// Deviations +-(1.5, 2) give covariance [[2.25, 3], [3, 4]]: eigenvalues 6.25 and 0.
TEST(Pca, ThreeFourFive) {
  const std::vector<double> data = {0, 0, 3, 4};
  const PcaModel m = fit_pca(data, 2, 2);
  EXPECT_NEAR(m.eigenvalues[0], 6.25, 1e-12);
  EXPECT_EQ(m.eigenvalues[1], 0.0);
  EXPECT_NEAR(m.component(0)[0], 0.6, 1e-12);
  EXPECT_NEAR(m.component(0)[1], 0.8, 1e-12);
  EXPECT_NEAR(project(m, std::vector<double>{0, 0}, 1)[0], -2.5, 1e-12);
  EXPECT_NEAR(project(m, std::vector<double>{3, 4}, 1)[0], 2.5, 1e-12);
}

TEST(Pca, EqualEigenvaluesBreakTiesLexicographically) {
  const std::vector<double> data = {1, 0, -1, 0, 0, 1, 0, -1};
  const PcaModel m = fit_pca(data, 4, 2);
  EXPECT_EQ(m.eigenvalues[0], 0.5);
  EXPECT_EQ(m.eigenvalues[1], 0.5);
  EXPECT_EQ(m.component(0)[0], 0.0);
  EXPECT_EQ(m.component(0)[1], 1.0);
  EXPECT_EQ(m.component(1)[0], 1.0);
}

TEST(Pca, IdenticalRowsHaveZeroVariance) {
  const std::vector<double> data = {3, 1, 4, 3, 1, 4, 3, 1, 4};
  const PcaModel m = fit_pca(data, 3, 3);
  for (double v : m.eigenvalues) EXPECT_EQ(v, 0.0);
  EXPECT_THROW(explained_variance_ratio(m, 1), DegenerateInput);
  EXPECT_THROW(choose_dimension(m, 0.95), DegenerateInput);
  EXPECT_EQ(pca_rank(m), 0u);
}

TEST(Pca, Errors) {
  EXPECT_THROW(fit_pca(std::vector<double>{1, 2}, 1, 2), DegenerateInput);
  const PcaModel m = fit_pca(std::vector<double>{0, 0, 2, 0}, 2, 2);
  EXPECT_THROW(project(m, std::vector<double>{1, 2, 3}, 1), DimensionMismatch);
  EXPECT_THROW(project(m, std::vector<double>{1, 2}, 3), InvalidArgument);
  EXPECT_THROW(choose_dimension(m, 0.0), InvalidArgument);
}

PcaModel synthetic_model(std::vector<double> eigenvalues) {
  PcaModel m;
  m.features = eigenvalues.size();
  m.mean.assign(m.features, 0.0);
  m.components.assign(m.features * m.features, 0.0);
  for (std::size_t i = 0; i < m.features; ++i) m.components[i * m.features + i] = 1;
  m.eigenvalues = std::move(eigenvalues);
  return m;
}

TEST(Pca, ExplainedVarianceArithmetic) {
  EXPECT_EQ(explained_variance_ratio(synthetic_model({3, 1}), 1), 0.75);
  EXPECT_EQ(explained_variance_ratio(synthetic_model({3, 1}), 2), 1.0);
  const PcaModel m = synthetic_model({3, 1, 0});
  EXPECT_EQ(explained_variance_ratio(m, 2), 1.0);
  EXPECT_EQ(choose_dimension(m, 0.75), 1u);
  EXPECT_EQ(choose_dimension(m, 0.76), 2u);
  EXPECT_EQ(choose_dimension(m, 1.0), 2u);
  EXPECT_EQ(format_variance_report(m), "d\tratio\n1\t0.75\n2\t1\n3\t1\n");
}

TEST(Pca, ProjectMeanIsZero) {
  const auto data = random_matrix(12, 5, 3);
  const PcaModel m = fit_pca(data, 12, 5);
  for (double v : project(m, m.mean, 5)) EXPECT_NEAR(v, 0.0, 1e-12);
}

TEST(Pca, RandomDataInvariants) {
  for (auto [rows, cols] : {std::pair<std::size_t, std::size_t>{40, 30}, {10, 25}, {60, 8}}) {
    const auto data = random_matrix(rows, cols, rows * 100 + cols);
    const PcaModel m = fit_pca(data, rows, cols);
    EXPECT_EQ(m.max_dimension(), std::min(rows, cols));
    expect_orthonormal(m, 1e-10);
    expect_residuals(m, covariance(data, rows, cols));
    for (std::size_t i = 1; i < m.max_dimension(); ++i) EXPECT_LE(m.eigenvalues[i], m.eigenvalues[i - 1]);
    const auto ratios = cumulative_variance_ratios(m);
    for (std::size_t i = 1; i < ratios.size(); ++i) EXPECT_GE(ratios[i], ratios[i - 1]);
    EXPECT_EQ(ratios.back(), 1.0);
    EXPECT_EQ(pca_rank(m), gaussian_rank(data, rows, cols, 1e-9));
  }
}

TEST(Pca, SolversAgree) {
  const std::size_t rows = 12, cols = 40;
  const auto data = random_matrix(rows, cols, 77);
  const PcaModel cov = fit_pca(data, rows, cols, PcaSolver::kCovariance);
  const PcaModel gram = fit_pca(data, rows, cols, PcaSolver::kGram);
  ASSERT_EQ(cov.max_dimension(), gram.max_dimension());
  expect_orthonormal(gram, 1e-10);
  expect_residuals(gram, covariance(data, rows, cols));
  for (std::size_t i = 0; i + 1 < rows; ++i) {  // the last one spans the null space
    EXPECT_NEAR(cov.eigenvalues[i], gram.eigenvalues[i], 1e-10);
    for (std::size_t k = 0; k < cols; ++k) EXPECT_NEAR(cov.component(i)[k], gram.component(i)[k], 1e-8);
  }
}

TEST(Pca, FullRankProjectionPreservesDistances) {
  const std::size_t rows = 20, cols = 6;
  const auto data = random_matrix(rows, cols, 5);
  const PcaModel m = fit_pca(data, rows, cols);
  std::vector<std::vector<double>> proj;
  for (std::size_t r = 0; r < rows; ++r) {
    proj.push_back(project(m, std::span<const double>(data).subspan(r * cols, cols), cols));
  }
  for (std::size_t a = 0; a < rows; ++a) {
    for (std::size_t b = a + 1; b < rows; ++b) {
      double d0 = 0, d1 = 0;
      for (std::size_t k = 0; k < cols; ++k) {
        d0 += std::pow(data[a * cols + k] - data[b * cols + k], 2);
        d1 += std::pow(proj[a][k] - proj[b][k], 2);
      }
      EXPECT_NEAR(std::sqrt(d0), std::sqrt(d1), 1e-6 * (std::sqrt(d0) + 1));
    }
  }
}

TEST(Pca, RasterMatrixProperties) {
  const CharSet cs = CharSet::printable_ascii();
  const RasterMatrix raster = build_raster_matrix(cs, make_font_spec(testing::serif(), "serif", cs));
  const PcaModel m = fit_pca(raster);
  EXPECT_EQ(m.max_dimension(), 95u);
  expect_orthonormal(m, 1e-10);
  expect_residuals(m, covariance(raster.data, raster.rows(), raster.cols));
  const std::size_t rank = pca_rank(m);
  EXPECT_EQ(rank, gaussian_rank(raster.data, raster.rows(), raster.cols, 1e-9));
  EXPECT_EQ(fit_pca(raster).components, m.components);

  // Keeping every nonzero component reconstructs each glyph.
  for (std::size_t r = 0; r < raster.rows(); ++r) {
    const auto x = raster.row(r);
    const auto y = project(m, x, rank);
    double err = 0;
    for (std::size_t k = 0; k < raster.cols; ++k) {
      double rec = m.mean[k];
      for (std::size_t i = 0; i < rank; ++i) rec += m.component(i)[k] * y[i];
      err += (x[k] - rec) * (x[k] - rec);
    }
    EXPECT_LE(std::sqrt(err), 1e-8);
  }
}

TEST(Jacobi, RandomSymmetricResiduals) {
  for (std::size_t n : {std::size_t{2}, std::size_t{17}, std::size_t{96}}) {
    auto a = random_matrix(n, n, n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < i; ++j) a[i * n + j] = a[j * n + i];
    const SymmetricEigen e = jacobi_eigen(a, n);
    double top = 0;
    for (double v : e.values) top = std::max(top, std::abs(v));
    for (std::size_t i = 0; i < n; ++i) {
      double norm2 = 0;
      for (std::size_t r = 0; r < n; ++r) {
        double av = 0;
        for (std::size_t k = 0; k < n; ++k) av += a[r * n + k] * e.vectors[i * n + k];
        norm2 += std::pow(av - e.values[i] * e.vectors[i * n + r], 2);
      }
      EXPECT_LE(std::sqrt(norm2), 1e-8 * std::max(1.0, top));
    }
  }
}

TEST(Jacobi, TwoByTwoByHand) {
  const std::vector<double> a = {2, 1, 1, 2};
  const SymmetricEigen e = jacobi_eigen(a, 2);
  std::vector<double> values = e.values;
  std::sort(values.begin(), values.end());
  EXPECT_NEAR(values[0], 1.0, 1e-12);
  EXPECT_NEAR(values[1], 3.0, 1e-12);
}

}  // namespace
}  // namespace glyphembed
