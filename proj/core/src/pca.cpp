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

#include "glyphembed/pca.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "glyphembed/error.hpp"
#include "glyphembed/text_format.hpp"

namespace glyphembed {

namespace {

constexpr int kMaxSweeps = 60;
constexpr double kClampRelative = 1e-12;
constexpr std::size_t kCovarianceLimit = 512;

double dot(std::span<const double> a, std::span<const double> b) {
  double s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

void canonicalize_sign(std::span<double> v) {
  std::size_t arg = 0;
  for (std::size_t i = 1; i < v.size(); ++i) {
    if (std::abs(v[i]) > std::abs(v[arg])) arg = i;
  }
  if (v[arg] < 0) {
    for (double& x : v) x = -x;
  }
}

// Orthonormalizes `v` against the first `count` rows of `basis` (two passes of
// modified Gram-Schmidt). Returns false when v lies in their span.
bool orthonormalize(std::span<double> v, const std::vector<double>& basis, std::size_t count,
                    std::size_t dim) {
  const double before = std::sqrt(dot(v, v));
  for (int pass = 0; pass < 2; ++pass) {
    for (std::size_t j = 0; j < count; ++j) {
      std::span<const double> b(basis.data() + j * dim, dim);
      const double proj = dot(v, b);
      for (std::size_t k = 0; k < dim; ++k) v[k] -= proj * b[k];
    }
  }
  const double norm = std::sqrt(dot(v, v));
  if (!(norm > 1e-6 * std::max(before, 1e-300))) return false;
  for (double& x : v) x /= norm;
  return true;
}

struct EigenPair {
  double value;
  std::vector<double> vector;
};

// Descending eigenvalue; exact ties by ascending lexicographic vector.
void sort_pairs(std::vector<EigenPair>& pairs) {
  std::sort(pairs.begin(), pairs.end(), [](const EigenPair& a, const EigenPair& b) {
    if (a.value != b.value) return a.value > b.value;
    return a.vector < b.vector;
  });
}

void clamp_values(std::vector<EigenPair>& pairs) {
  double top = 0;
  for (const auto& p : pairs) top = std::max(top, p.value);
  for (auto& p : pairs) {
    if (p.value < kClampRelative * top || p.value < 0) p.value = 0;
  }
}

std::vector<EigenPair> covariance_pairs(const std::vector<double>& centered, std::size_t rows,
                                        std::size_t cols) {
  std::vector<double> cov(cols * cols, 0.0);
  for (std::size_t r = 0; r < rows; ++r) {
    const double* x = centered.data() + r * cols;
    for (std::size_t i = 0; i < cols; ++i) {
      if (x[i] == 0) continue;
      double* out = cov.data() + i * cols;
      for (std::size_t j = i; j < cols; ++j) out[j] += x[i] * x[j];
    }
  }
  const double inv_n = 1.0 / static_cast<double>(rows);
  for (std::size_t i = 0; i < cols; ++i) {
    for (std::size_t j = i; j < cols; ++j) {
      cov[i * cols + j] *= inv_n;
      cov[j * cols + i] = cov[i * cols + j];
    }
  }
  SymmetricEigen eig = jacobi_eigen(cov, cols);
  std::vector<EigenPair> pairs;
  pairs.reserve(cols);
  for (std::size_t i = 0; i < cols; ++i) {
    pairs.push_back({eig.values[i], std::vector<double>(eig.vectors.begin() + i * cols,
                                                        eig.vectors.begin() + (i + 1) * cols)});
  }
  return pairs;
}

std::vector<EigenPair> gram_pairs(const std::vector<double>& centered, std::size_t rows,
                                  std::size_t cols) {
  const double inv_n = 1.0 / static_cast<double>(rows);
  std::vector<double> gram(rows * rows, 0.0);
  for (std::size_t a = 0; a < rows; ++a) {
    std::span<const double> xa(centered.data() + a * cols, cols);
    for (std::size_t b = a; b < rows; ++b) {
      std::span<const double> xb(centered.data() + b * cols, cols);
      gram[a * rows + b] = gram[b * rows + a] = dot(xa, xb) * inv_n;
    }
  }
  SymmetricEigen eig = jacobi_eigen(gram, rows);
  double top = 0;
  for (double v : eig.values) top = std::max(top, v);

  // Map u -> Xc^T u / sqrt(N mu) for nonzero mu, largest first so that the
  // re-orthonormalization sweeps the small, least accurate vectors.
  std::vector<std::size_t> order(rows);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return eig.values[a] > eig.values[b]; });

  std::vector<EigenPair> pairs;
  std::vector<double> basis;
  for (std::size_t idx : order) {
    const double mu = eig.values[idx];
    if (!(mu > kClampRelative * top) || top <= 0) break;
    std::vector<double> v(cols, 0.0);
    for (std::size_t r = 0; r < rows; ++r) {
      const double u = eig.vectors[idx * rows + r];
      for (std::size_t k = 0; k < cols; ++k) v[k] += centered[r * cols + k] * u;
    }
    if (!orthonormalize(v, basis, pairs.size(), cols)) continue;
    basis.insert(basis.end(), v.begin(), v.end());
    pairs.push_back({mu, std::move(v)});
  }
  // Complete with null-space directions drawn from the standard basis.
  const std::size_t wanted = std::min(rows, cols);
  for (std::size_t e = 0; e < cols && pairs.size() < wanted; ++e) {
    std::vector<double> v(cols, 0.0);
    v[e] = 1.0;
    if (!orthonormalize(v, basis, pairs.size(), cols)) continue;
    basis.insert(basis.end(), v.begin(), v.end());
    pairs.push_back({0.0, std::move(v)});
  }
  return pairs;
}

}  // namespace

SymmetricEigen jacobi_eigen(std::span<const double> matrix, std::size_t n) {
  if (matrix.size() != n * n) throw DimensionMismatch(n * n, matrix.size());
  std::vector<double> a(matrix.begin(), matrix.end());
  std::vector<double> v(n * n, 0.0);  // column k is eigenvector k during iteration
  for (std::size_t i = 0; i < n; ++i) v[i * n + i] = 1.0;

  double frob = 0;
  for (double x : a) frob += x * x;
  frob = std::sqrt(frob);
  const double negligible = 1e-17 * frob;

  for (int sweep = 0; sweep < kMaxSweeps; ++sweep) {
    bool rotated = false;
    for (std::size_t p = 0; p + 1 < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        const double apq = a[p * n + q];
        const double app = a[p * n + p];
        const double aqq = a[q * n + q];
        if (std::abs(apq) <= negligible ||
            (std::abs(app) + 100 * std::abs(apq) == std::abs(app) &&
             std::abs(aqq) + 100 * std::abs(apq) == std::abs(aqq))) {
          a[p * n + q] = a[q * n + p] = 0.0;
          continue;
        }
        rotated = true;
        const double theta = (aqq - app) / (2 * apq);
        const double t = (theta >= 0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1));
        const double c = 1 / std::sqrt(t * t + 1);
        const double s = t * c;
        // A <- A J, then A <- J^T A, with J the (p, q) rotation.
        for (std::size_t k = 0; k < n; ++k) {
          const double akp = a[k * n + p];
          const double akq = a[k * n + q];
          a[k * n + p] = c * akp - s * akq;
          a[k * n + q] = s * akp + c * akq;
        }
        for (std::size_t k = 0; k < n; ++k) {
          const double apk = a[p * n + k];
          const double aqk = a[q * n + k];
          a[p * n + k] = c * apk - s * aqk;
          a[q * n + k] = s * apk + c * aqk;
        }
        a[p * n + q] = a[q * n + p] = 0.0;
        for (std::size_t k = 0; k < n; ++k) {
          const double vkp = v[k * n + p];
          const double vkq = v[k * n + q];
          v[k * n + p] = c * vkp - s * vkq;
          v[k * n + q] = s * vkp + c * vkq;
        }
      }
    }
    if (!rotated) break;
  }

  SymmetricEigen out;
  out.n = n;
  out.values.resize(n);
  out.vectors.resize(n * n);
  for (std::size_t i = 0; i < n; ++i) {
    out.values[i] = a[i * n + i];
    for (std::size_t k = 0; k < n; ++k) out.vectors[i * n + k] = v[k * n + i];
  }
  return out;
}

PcaModel fit_pca(std::span<const double> data, std::size_t rows, std::size_t cols,
                 PcaSolver solver) {
  if (rows < 2) throw DegenerateInput("PCA needs at least 2 rows, got " + std::to_string(rows));
  if (cols == 0) throw DegenerateInput("PCA needs at least one feature");
  if (data.size() != rows * cols) throw DimensionMismatch(rows * cols, data.size());

  PcaModel model;
  model.features = cols;
  model.mean.assign(cols, 0.0);
  for (std::size_t r = 0; r < rows; ++r) {
    for (std::size_t k = 0; k < cols; ++k) model.mean[k] += data[r * cols + k];
  }
  for (double& m : model.mean) m /= static_cast<double>(rows);

  std::vector<double> centered(data.begin(), data.end());
  for (std::size_t r = 0; r < rows; ++r) {
    for (std::size_t k = 0; k < cols; ++k) centered[r * cols + k] -= model.mean[k];
  }

  if (solver == PcaSolver::kAuto) {
    solver = (cols <= kCovarianceLimit || cols <= rows) ? PcaSolver::kCovariance : PcaSolver::kGram;
  }
  std::vector<EigenPair> pairs = solver == PcaSolver::kCovariance
                                     ? covariance_pairs(centered, rows, cols)
                                     : gram_pairs(centered, rows, cols);
  clamp_values(pairs);
  for (auto& p : pairs) canonicalize_sign(p.vector);
  sort_pairs(pairs);

  const std::size_t d_max = std::min(rows, cols);
  pairs.resize(std::min(pairs.size(), d_max));
  model.eigenvalues.reserve(d_max);
  model.components.reserve(d_max * cols);
  for (auto& p : pairs) {
    model.eigenvalues.push_back(p.value);
    model.components.insert(model.components.end(), p.vector.begin(), p.vector.end());
  }
  return model;
}

PcaModel fit_pca(const RasterMatrix& matrix, PcaSolver solver) {
  return fit_pca(matrix.data, matrix.rows(), matrix.cols, solver);
}

std::vector<double> cumulative_variance_ratios(const PcaModel& model) {
  std::vector<double> prefix(model.eigenvalues.size());
  double sum = 0;
  for (std::size_t i = 0; i < prefix.size(); ++i) {
    sum += model.eigenvalues[i];
    prefix[i] = sum;
  }
  if (!(sum > 0)) throw DegenerateInput("all PCA eigenvalues are zero");
  // Numerators and denominator share one summation order, so the last ratio is exactly 1.
  for (double& p : prefix) p /= sum;
  return prefix;
}

double explained_variance_ratio(const PcaModel& model, std::size_t d) {
  if (d < 1 || d > model.max_dimension()) {
    throw InvalidArgument("dimension " + std::to_string(d) + " outside 1.." +
                          std::to_string(model.max_dimension()));
  }
  return cumulative_variance_ratios(model)[d - 1];
}

std::size_t choose_dimension(const PcaModel& model, double threshold) {
  if (!(threshold > 0 && threshold <= 1)) {
    throw InvalidArgument("variance threshold must be in (0, 1]");
  }
  const std::vector<double> ratios = cumulative_variance_ratios(model);
  for (std::size_t d = 1; d <= ratios.size(); ++d) {
    if (ratios[d - 1] >= threshold) return d;
  }
  return ratios.size();
}

std::vector<double> project(const PcaModel& model, std::span<const double> x, std::size_t d) {
  if (x.size() != model.features) throw DimensionMismatch(model.features, x.size());
  if (d < 1 || d > model.max_dimension()) {
    throw InvalidArgument("projection dimension " + std::to_string(d) + " outside 1.." +
                          std::to_string(model.max_dimension()));
  }
  std::vector<double> centered(x.begin(), x.end());
  for (std::size_t k = 0; k < centered.size(); ++k) centered[k] -= model.mean[k];
  std::vector<double> out(d);
  for (std::size_t i = 0; i < d; ++i) out[i] = dot(model.component(i), centered);
  return out;
}

std::size_t pca_rank(const PcaModel& model) {
  return static_cast<std::size_t>(
      std::count_if(model.eigenvalues.begin(), model.eigenvalues.end(), [](double v) { return v > 0; }));
}

std::string format_variance_report(const PcaModel& model) {
  const std::vector<double> ratios = cumulative_variance_ratios(model);
  std::string out = "d\tratio\n";
  for (std::size_t d = 1; d <= ratios.size(); ++d) {
    out += std::to_string(d);
    out += '\t';
    out += format_real(ratios[d - 1]);
    out += '\n';
  }
  return out;
}

}  // namespace glyphembed
