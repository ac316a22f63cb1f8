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

#include "ia3/matkit.hpp"

#include "ia3/error.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>
#include <string>

namespace ia3 {

namespace {

using Svd = Eigen::BDCSVD<Mat>;

Svd full_svd(const Mat& a) { return Svd(a, Eigen::ComputeFullU | Eigen::ComputeFullV); }

Svd thin_svd(const Mat& a) { return Svd(a, Eigen::ComputeThinU | Eigen::ComputeThinV); }

std::size_t count_above(const Eigen::VectorXd& s, double rel, double scale = 0.0) {
  if (s.size() == 0) return 0;
  const double ref = std::max(scale, s(0));
  if (ref == 0.0) return 0;
  const double cutoff = rel * ref;
  std::size_t r = 0;
  for (Eigen::Index k = 0; k < s.size(); ++k)
    if (s(k) > cutoff) ++r;
  return r;
}

double spectral_norm(const Mat& a) {
  if (a.size() == 0) return 0.0;
  return Svd(a).singularValues()(0);
}

}  // namespace

double Tolerance::rank_threshold(Eigen::Index rows, Eigen::Index cols) const {
  if (rel_rank) return *rel_rank;
  return static_cast<double>(std::max(rows, cols)) * std::numeric_limits<double>::epsilon() * 64.0;
}

void Tolerance::validate() const {
  if (rel_rank && !(*rel_rank > 0.0 && *rel_rank < 1.0))
    fail(ErrorKind::invalid_input, "rank tolerance must lie in (0, 1)");
  if (!(leakage > 0.0 && leakage < 1.0))
    fail(ErrorKind::invalid_input, "leakage tolerance must lie in (0, 1)");
}

void require_finite(const Mat& a, const char* what) {
  if (a.size() == 0) fail(ErrorKind::invalid_input, std::string(what) + ": empty matrix");
  if (!a.allFinite()) fail(ErrorKind::invalid_input, std::string(what) + ": non-finite entry");
}

Eigen::VectorXd singular_values(const Mat& a) {
  require_finite(a, "singular_values");
  return Svd(a).singularValues();
}

std::size_t rank(const Mat& a, const Tolerance& tol) {
  require_finite(a, "rank");
  return count_above(Svd(a).singularValues(), tol.rank_threshold(a.rows(), a.cols()));
}

std::size_t rank(const Mat& a, double scale, const Tolerance& tol) {
  require_finite(a, "rank");
  return count_above(Svd(a).singularValues(), tol.rank_threshold(a.rows(), a.cols()), scale);
}

Mat nullspace_basis(const Mat& a, const Tolerance& tol) {
  require_finite(a, "nullspace_basis");
  const Svd svd = full_svd(a);
  const auto r = static_cast<Eigen::Index>(
      count_above(svd.singularValues(), tol.rank_threshold(a.rows(), a.cols())));
  return svd.matrixV().rightCols(a.cols() - r);
}

Mat left_complement_basis(const Mat& a, double scale, const Tolerance& tol) {
  if (a.cols() == 0) return Mat::Identity(a.rows(), a.rows());
  require_finite(a, "left_complement_basis");
  const Svd svd = full_svd(a);
  const auto r = static_cast<Eigen::Index>(
      count_above(svd.singularValues(), tol.rank_threshold(a.rows(), a.cols()), scale));
  return svd.matrixU().rightCols(a.rows() - r);
}

Mat left_complement_basis(const Mat& a, const Tolerance& tol) { return left_complement_basis(a, 0.0, tol); }

Mat range_basis(const Mat& a, const Tolerance& tol) {
  if (a.cols() == 0) return Mat(a.rows(), 0);
  require_finite(a, "range_basis");
  const Svd svd = thin_svd(a);
  const auto r = static_cast<Eigen::Index>(
      count_above(svd.singularValues(), tol.rank_threshold(a.rows(), a.cols())));
  return svd.matrixU().leftCols(r);
}

Mat pseudo_inverse(const Mat& a, const Tolerance& tol) {
  require_finite(a, "pseudo_inverse");
  const Svd svd = thin_svd(a);
  const Eigen::VectorXd& s = svd.singularValues();
  const double cutoff = s.size() ? tol.rank_threshold(a.rows(), a.cols()) * s(0) : 0.0;
  Eigen::VectorXd inv = Eigen::VectorXd::Zero(s.size());
  for (Eigen::Index k = 0; k < s.size(); ++k)
    if (s(k) > cutoff && s(k) > 0.0) inv(k) = 1.0 / s(k);
  return svd.matrixV() * inv.cast<cplx>().asDiagonal() * svd.matrixU().adjoint();
}

bool is_orthonormal(const Mat& b, double tol) {
  if (b.cols() == 0) return true;
  if (!b.allFinite()) return false;
  const Mat gram = b.adjoint() * b - Mat::Identity(b.cols(), b.cols());
  return gram.cwiseAbs().maxCoeff() <= tol;
}

double max_principal_angle(const Mat& b1, const Mat& b2, const Tolerance& tol) {
  if (b1.rows() != b2.rows())
    fail(ErrorKind::invalid_input, "max_principal_angle: row counts differ");
  if (!is_orthonormal(b1, tol.leakage) || !is_orthonormal(b2, tol.leakage))
    fail(ErrorKind::invalid_input, "max_principal_angle: bases must be orthonormal");
  if (b1.cols() != b2.cols()) return std::numbers::pi / 2.0;
  if (b1.cols() == 0) return 0.0;
  // sin of the largest angle is the spectral norm of the residual after
  // projecting one basis onto the other; asin stays accurate near zero.
  const double g1 = spectral_norm(b2 - b1 * (b1.adjoint() * b2));
  const double g2 = spectral_norm(b1 - b2 * (b2.adjoint() * b1));
  return std::asin(std::min(1.0, std::max(g1, g2)));
}

Mat complex_gaussian(Eigen::Index rows, Eigen::Index cols, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  const double scale = 1.0 / std::sqrt(2.0);
  Mat out(rows, cols);
  for (Eigen::Index r = 0; r < rows; ++r)
    for (Eigen::Index c = 0; c < cols; ++c) {
      const double re = normal(rng);
      const double im = normal(rng);
      out(r, c) = cplx(re * scale, im * scale);
    }
  return out;
}

Mat select_subspace(const Mat& basis, Eigen::Index count, std::uint64_t seed) {
  if (count < 0 || count > basis.cols())
    fail(ErrorKind::infeasible, "requested " + std::to_string(count) + " directions from a " +
                                    std::to_string(basis.cols()) + "-dimensional subspace");
  if (count == basis.cols()) return basis;
  if (count == 0) return Mat(basis.rows(), 0);
  const Mat mixed = basis * complex_gaussian(basis.cols(), count, seed);
  Eigen::HouseholderQR<Mat> qr(mixed);
  return qr.householderQ() * Mat::Identity(basis.rows(), count);
}

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t salt) {
  std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (salt + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

}  // namespace ia3
