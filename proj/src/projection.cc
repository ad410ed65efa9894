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

#include "scholiview/projection.h"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace scholiview {

SymmetricEigen jacobi_eigen(DenseMatrix a) {
  const std::size_t m = a.rows();
  if (a.cols() != m) throw std::invalid_argument("jacobi_eigen: matrix is not square");
  DenseMatrix v(m, m);
  for (std::size_t i = 0; i < m; ++i) v(i, i) = 1.0;

  double total = 0.0;
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < m; ++j) total += a(i, j) * a(i, j);
  }
  constexpr int kMaxSweeps = 100;
  for (int sweep = 0; sweep < kMaxSweeps && total > 0.0; ++sweep) {
    double off = 0.0;
    for (std::size_t p = 0; p < m; ++p) {
      for (std::size_t q = p + 1; q < m; ++q) off += a(p, q) * a(p, q);
    }
    if (off <= 1e-30 * total) break;

    for (std::size_t p = 0; p + 1 < m; ++p) {
      for (std::size_t q = p + 1; q < m; ++q) {
        double apq = a(p, q);
        if (apq == 0.0) continue;
        double theta = (a(q, q) - a(p, p)) / (2.0 * apq);
        double t = (theta >= 0.0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        double c = 1.0 / std::sqrt(t * t + 1.0);
        double s = t * c;

        a(p, p) -= t * apq;
        a(q, q) += t * apq;
        a(p, q) = 0.0;
        a(q, p) = 0.0;
        for (std::size_t k = 0; k < m; ++k) {
          if (k == p || k == q) continue;
          double akp = a(k, p);
          double akq = a(k, q);
          a(k, p) = a(p, k) = c * akp - s * akq;
          a(k, q) = a(q, k) = s * akp + c * akq;
        }
        for (std::size_t k = 0; k < m; ++k) {
          double vkp = v(k, p);
          double vkq = v(k, q);
          v(k, p) = c * vkp - s * vkq;
          v(k, q) = s * vkp + c * vkq;
        }
      }
    }
  }

  std::vector<std::size_t> order(m);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t i, std::size_t j) { return a(i, i) > a(j, j); });
  SymmetricEigen out{std::vector<double>(m), DenseMatrix(m, m)};
  for (std::size_t k = 0; k < m; ++k) {
    out.values[k] = a(order[k], order[k]);
    for (std::size_t i = 0; i < m; ++i) out.vectors(i, k) = v(i, order[k]);
  }
  return out;
}

namespace {

double dot(std::span<const double> a, std::span<const double> b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

void normalize(std::vector<double> &v) {
  double n = std::sqrt(dot(v, v));
  for (double &x : v) x /= n;
}

void remove_projection(std::vector<double> &v, const std::vector<double> &unit) {
  double d = dot(v, unit);
  for (std::size_t i = 0; i < v.size(); ++i) v[i] -= d * unit[i];
}

// Flip so the largest-magnitude entry (first on ties) is positive.
void canonical_sign(std::vector<double> &v) {
  std::size_t best = 0;
  for (std::size_t i = 1; i < v.size(); ++i) {
    if (std::abs(v[i]) > std::abs(v[best])) best = i;
  }
  if (v[best] < 0.0) {
    for (double &x : v) x = -x;
  }
}

// First standard basis vector with a substantial part orthogonal to `taken`.
std::vector<double> completion(std::size_t dim, const std::vector<std::vector<double>> &taken) {
  for (std::size_t b = 0; b < dim; ++b) {
    std::vector<double> v(dim, 0.0);
    v[b] = 1.0;
    for (const auto &t : taken) remove_projection(v, t);
    if (dot(v, v) > 0.25) {
      normalize(v);
      return v;
    }
  }
  throw std::logic_error("no orthogonal completion found");
}

}  // namespace

Projection2D pca_2d(const DenseMatrix &data) {
  const std::size_t n = data.rows();
  const std::size_t dim = data.cols();
  if (dim < 2) throw DimensionError("PCA needs at least 2 columns, got " + std::to_string(dim));
  if (n == 0) throw DimensionError("PCA needs at least one row");

  Projection2D out;
  out.mean.values.assign(dim, 0.0);
  double scale = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t d = 0; d < dim; ++d) {
      out.mean.values[d] += data(i, d);
      scale += data(i, d) * data(i, d);
    }
  }
  for (double &m : out.mean.values) m /= static_cast<double>(n);

  DenseMatrix centered(n, dim);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t d = 0; d < dim; ++d) centered(i, d) = data(i, d) - out.mean.values[d];
  }

  // Eigenvalues of the scatter matrix below this are rounding noise.
  const double noise = 1e-20 * scale;

  std::vector<std::vector<double>> comps;
  std::array<bool, 2> degenerate{true, true};
  std::array<double, 2> scatter{0.0, 0.0};

  if (n <= dim) {
    // The n x n Gram matrix shares its non-zero spectrum with the scatter
    // matrix; map its eigenvectors back through the data.
    DenseMatrix gram(n, n);
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = i; j < n; ++j) {
        gram(i, j) = gram(j, i) = dot(centered.row(i), centered.row(j));
      }
    }
    SymmetricEigen eig = jacobi_eigen(std::move(gram));
    for (std::size_t k = 0; k < 2 && k < n; ++k) {
      if (!(eig.values[k] > noise) || eig.values[k] <= 0.0) break;
      std::vector<double> c(dim, 0.0);
      for (std::size_t i = 0; i < n; ++i) {
        double u = eig.vectors(i, k);
        for (std::size_t d = 0; d < dim; ++d) c[d] += u * centered(i, d);
      }
      for (const auto &prev : comps) remove_projection(c, prev);
      normalize(c);
      comps.push_back(std::move(c));
      degenerate[k] = false;
      scatter[k] = eig.values[k];
    }
  } else {
    DenseMatrix cov(dim, dim);
    for (std::size_t a = 0; a < dim; ++a) {
      for (std::size_t b = a; b < dim; ++b) {
        double s = 0.0;
        for (std::size_t i = 0; i < n; ++i) s += centered(i, a) * centered(i, b);
        cov(a, b) = cov(b, a) = s;
      }
    }
    SymmetricEigen eig = jacobi_eigen(std::move(cov));
    for (std::size_t k = 0; k < 2; ++k) {
      if (!(eig.values[k] > noise) || eig.values[k] <= 0.0) break;
      std::vector<double> c(dim);
      for (std::size_t d = 0; d < dim; ++d) c[d] = eig.vectors(d, k);
      for (const auto &prev : comps) remove_projection(c, prev);
      normalize(c);
      comps.push_back(std::move(c));
      degenerate[k] = false;
      scatter[k] = eig.values[k];
    }
  }
  while (comps.size() < 2) comps.push_back(completion(dim, comps));

  for (std::size_t k = 0; k < 2; ++k) {
    canonical_sign(comps[k]);
    out.variances[k] = (n > 1 && !degenerate[k]) ? scatter[k] / static_cast<double>(n - 1) : 0.0;
  }
  out.coordinates.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t k = 0; k < 2; ++k) {
      out.coordinates[i][k] = degenerate[k] ? 0.0 : dot(centered.row(i), comps[k]);
    }
  }
  out.components[0].values = std::move(comps[0]);
  out.components[1].values = std::move(comps[1]);
  return out;
}

std::vector<Bubble> bubble_layout(std::span<const KeyEntity> entities,
                                  std::span<const Point2D> coords, double r_max) {
  if (entities.empty()) throw EmptyInput("bubble layout needs at least one entity");
  if (coords.size() != entities.size()) {
    throw std::invalid_argument("bubble_layout: " + std::to_string(coords.size()) +
                                " coordinates for " + std::to_string(entities.size()) +
                                " entities");
  }
  if (!(r_max > 0.0)) throw std::invalid_argument("bubble_layout: r_max must be positive");

  std::int64_t f_max = 0;
  for (const auto &e : entities) f_max = std::max(f_max, e.frequency);

  Point2D lo = coords[0];
  Point2D hi = coords[0];
  for (const auto &p : coords) {
    for (int k = 0; k < 2; ++k) {
      lo[k] = std::min(lo[k], p[k]);
      hi[k] = std::max(hi[k], p[k]);
    }
  }
  double span = std::max(hi[0] - lo[0], hi[1] - lo[1]);
  double s = span > 0.0 ? 1.0 / span : 0.0;
  Point2D mid{(lo[0] + hi[0]) / 2.0, (lo[1] + hi[1]) / 2.0};

  std::vector<Bubble> bubbles;
  bubbles.reserve(entities.size());
  for (std::size_t i = 0; i < entities.size(); ++i) {
    const KeyEntity &e = entities[i];
    Bubble b;
    b.label = e.label;
    b.frequency = e.frequency;
    b.source = e.source;
    b.radius = r_max * std::sqrt(static_cast<double>(e.frequency) / static_cast<double>(f_max));
    b.x = 0.5 + (coords[i][0] - mid[0]) * s;
    b.y = 0.5 + (coords[i][1] - mid[1]) * s;
    bubbles.push_back(std::move(b));
  }
  return bubbles;
}

}  // namespace scholiview
