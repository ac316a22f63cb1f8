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

#pragma once

// Tolerance-aware dense linear algebra shared by every other module: rank,
// orthonormal nullspace bases, Moore-Penrose pseudo-inverses and subspace
// distances. All routines are deterministic SVD-based factorizations.

#include <Eigen/Dense>

#include <complex>
#include <cstdint>
#include <optional>

namespace ia3 {

using cplx = std::complex<double>;
using Mat = Eigen::MatrixXcd;
using Vec = Eigen::VectorXcd;

struct Tolerance {
  /// Relative singular-value cutoff. Unset means
  /// max(rows, cols) * epsilon * 64 of the matrix being factorized.
  std::optional<double> rel_rank;
  /// Bound on relative residuals (interference leakage, constraint misfit).
  double leakage = 1e-8;

  double rank_threshold(Eigen::Index rows, Eigen::Index cols) const;

  /// Throws invalid_input unless both values lie in (0, 1).
  void validate() const;
};

/// Throws invalid_input for empty matrices or non-finite entries.
void require_finite(const Mat& a, const char* what);

Eigen::VectorXd singular_values(const Mat& a);

std::size_t rank(const Mat& a, const Tolerance& tol = {});

/// Rank measured against an external magnitude: singular values at or below
/// threshold * max(scale, sigma_max(a)) count as zero. Lets a numerically
/// vanishing matrix report rank 0 instead of being judged against itself.
std::size_t rank(const Mat& a, double scale, const Tolerance& tol);

/// Orthonormal basis of the right nullspace. Columns follow the SVD order of
/// the trailing right singular vectors, so the result is reproducible.
Mat nullspace_basis(const Mat& a, const Tolerance& tol = {});

/// Orthonormal basis of the orthogonal complement of col(a) inside C^rows.
/// A matrix with zero columns yields the identity.
Mat left_complement_basis(const Mat& a, const Tolerance& tol = {});

/// Same, with the cutoff taken against max(scale, sigma_max(a)).
Mat left_complement_basis(const Mat& a, double scale, const Tolerance& tol);

/// Orthonormal basis of col(a), using the numerical rank.
Mat range_basis(const Mat& a, const Tolerance& tol = {});

Mat pseudo_inverse(const Mat& a, const Tolerance& tol = {});

bool is_orthonormal(const Mat& b, double tol);

/// Largest principal angle (radians) between the column spans of two
/// orthonormal bases. Spans of different dimension are pi/2 apart.
double max_principal_angle(const Mat& b1, const Mat& b2, const Tolerance& tol = {});

/// i.i.d. zero-mean unit-variance circularly-symmetric Gaussian entries.
Mat complex_gaussian(Eigen::Index rows, Eigen::Index cols, std::uint64_t seed);

/// Picks `count` orthonormal columns inside span(basis). When count equals
/// the basis width the basis is returned untouched; otherwise a seeded
/// Gaussian combination is orthonormalized so the selection stays generic
/// with respect to any block structure in the basis.
Mat select_subspace(const Mat& basis, Eigen::Index count, std::uint64_t seed);

/// Mixes a base seed with a salt (splitmix64 finalizer).
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t salt);

}  // namespace ia3
