// Copyright 2026 The Scholiview Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef SCHOLIVIEW_PROJECTION_H_
#define SCHOLIVIEW_PROJECTION_H_

#include <array>
#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "scholiview/embedding.h"
#include "scholiview/error.h"
#include "scholiview/ingest.h"

namespace scholiview {

// Row-major dense matrix.
class DenseMatrix {
 public:
  DenseMatrix() = default;
  DenseMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  double &operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  double operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  std::span<double> row(std::size_t r) { return {data_.data() + r * cols_, cols_}; }
  std::span<const double> row(std::size_t r) const { return {data_.data() + r * cols_, cols_}; }

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<double> data_;
};

class DimensionError : public Error {
 public:
  explicit DimensionError(const std::string &what) : Error("dimension error: " + what) {}
};

class EmptyInput : public Error {
 public:
  explicit EmptyInput(const std::string &what) : Error("empty input: " + what) {}
};

using Point2D = std::array<double, 2>;

struct Projection2D {
  WordVector mean;
  // Orthonormal, ordered by decreasing variance. The largest-magnitude entry
  // of each is positive.
  std::array<WordVector, 2> components;
  // Sample variance along each component.
  std::array<double, 2> variances{};
  std::vector<Point2D> coordinates;
};

// Principal components of the row data. Rank-deficient directions (including
// everything when n == 1 or all rows coincide) get a deterministic
// orthonormal completion and zero coordinates. Throws DimensionError if
// there are fewer than two columns or no rows.
Projection2D pca_2d(const DenseMatrix &data);

// Symmetric eigendecomposition by cyclic Jacobi rotations. Eigenvalues are
// returned in descending order with eigenvectors as the matching columns.
struct SymmetricEigen {
  std::vector<double> values;
  DenseMatrix vectors;
};
SymmetricEigen jacobi_eigen(DenseMatrix a);

struct Bubble {
  std::string label;
  double x = 0.0;
  double y = 0.0;
  double radius = 0.0;
  std::int64_t frequency = 1;
  EntitySource source = EntitySource::kAsr;

  bool operator==(const Bubble &) const = default;
};

inline constexpr double kDefaultMaxRadius = 1.0;

// Radius r_max * sqrt(f / f_max), so circle area tracks frequency.
// Coordinates are mapped into the unit square with one uniform scale and
// centred, keeping the aspect ratio.
std::vector<Bubble> bubble_layout(std::span<const KeyEntity> entities,
                                  std::span<const Point2D> coords,
                                  double r_max = kDefaultMaxRadius);

}  // namespace scholiview

#endif  // SCHOLIVIEW_PROJECTION_H_
