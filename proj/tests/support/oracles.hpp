// Copyright 2026 The ia3 Authors
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

// Reference computations used by the tests. They deliberately avoid the
// library's SVD code paths so that agreement is meaningful.

#pragma once

#include <Eigen/Dense>

#include <complex>
#include <cstdint>
#include <random>

namespace ia3::oracle {

using CMat = Eigen::MatrixXcd;

/// Rank by full-pivoting LU with a threshold relative to the largest pivot.
inline Eigen::Index lu_rank(const CMat& a, double rel = 1e-9) {
  Eigen::FullPivLU<CMat> lu(a);
  lu.setThreshold(rel);
  return lu.rank();
}

/// Dense complex Gaussian matrix from a generator unrelated to the library's.
inline CMat gaussian(Eigen::Index rows, Eigen::Index cols, std::uint32_t seed) {
  std::minstd_rand gen(seed + 1);
  std::normal_distribution<double> nd;
  CMat a(rows, cols);
  for (Eigen::Index j = 0; j < cols; ++j)
    for (Eigen::Index i = 0; i < rows; ++i) a(i, j) = {nd(gen), nd(gen)};
  return a;
}

/// Random matrix of exact rank r (for r <= min(rows, cols)).
inline CMat rank_r(Eigen::Index rows, Eigen::Index cols, Eigen::Index r, std::uint32_t seed) {
  return gaussian(rows, r, seed) * gaussian(r, cols, seed + 7919);
}

/// Dimension of span(A) + span(B) - computed via LU on the concatenation.
inline Eigen::Index joint_rank(const CMat& a, const CMat& b, double rel = 1e-9) {
  CMat ab(a.rows(), a.cols() + b.cols());
  ab << a, b;
  return lu_rank(ab, rel);
}

/// Orthogonal projector onto col(b) through the normal equations.
inline CMat projector(const CMat& b) {
  const CMat gram = b.adjoint() * b;
  return b * gram.ldlt().solve(b.adjoint());
}

}  // namespace ia3::oracle
