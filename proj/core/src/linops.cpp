// Copyright 2026 The l1stab authors
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0

#include "l1stab/linops.hpp"

#include <Eigen/SVD>
#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <vector>

namespace l1stab {
namespace linops {

Matrix least_squares_row_inverse(const Matrix& A, double rank_tol) {
  const auto m = A.rows();
  Eigen::JacobiSVD<Matrix> svd(A, Eigen::ComputeThinU | Eigen::ComputeThinV);
  const Vector& s = svd.singularValues();
  if (s.size() < m || s(m - 1) < rank_tol * s(0)) {
    throw RankDeficient("least_squares_row_inverse: matrix is not full row rank");
  }
  // A = U S V^T  =>  (A A^T)^{-1} A = U S^{-1} V^T.
  return svd.matrixU() * s.head(m).cwiseInverse().asDiagonal() *
         svd.matrixV().leftCols(m).transpose();
}

namespace {

double cube_vertex_max(const Matrix& M, bool l2, int cap) {
  const int n = static_cast<int>(M.cols());
  if (n > cap) {
    throw TooLarge("induced_norm: " + std::to_string(n) +
                   " columns exceeds the enumeration cap of " +
                   std::to_string(cap));
  }
  if (n == 0) return 0.0;
  // Gray-code walk over half the cube; x and -x give the same norm, so the
  // first coordinate is pinned to +1.
  Vector x = Vector::Ones(n);
  Vector y = M.rowwise().sum();
  double best = l2 ? y.norm() : y.lpNorm<1>();
  const std::uint64_t steps = (n > 1) ? (std::uint64_t{1} << (n - 1)) : 1;
  for (std::uint64_t i = 1; i < steps; ++i) {
    const int bit = static_cast<int>(std::countr_zero(i));
    const int j = bit + 1;  // coordinate 0 stays fixed
    x(j) = -x(j);
    y += 2.0 * x(j) * M.col(j);
    const double v = l2 ? y.norm() : y.lpNorm<1>();
    best = std::max(best, v);
  }
  return best;
}

}  // namespace

double induced_norm(const Matrix& M, InducedNorm target, int cap) {
  switch (target) {
    case InducedNorm::InfToInf:
      return M.rows() == 0 ? 0.0 : M.cwiseAbs().rowwise().sum().maxCoeff();
    case InducedNorm::InfToOne:
      return cube_vertex_max(M, /*l2=*/false, cap);
    case InducedNorm::InfToTwo:
      return cube_vertex_max(M, /*l2=*/true, cap);
  }
  return 0.0;
}

double best_k_term_error(const Vector& x, int k) {
  const int n = static_cast<int>(x.size());
  if (k < 0 || k > n) {
    throw DimMismatch("best_k_term_error: k out of range");
  }
  if (k >= n) return 0.0;
  std::vector<double> a(n);
  for (int i = 0; i < n; ++i) a[i] = std::abs(x(i));
  std::nth_element(a.begin(), a.begin() + (n - k - 1), a.end());
  // a[0..n-k-1] now holds the n-k smallest magnitudes.
  double sum = 0.0;
  for (int i = 0; i < n - k; ++i) sum += a[i];
  return sum;
}

DesignMatrix DesignMatrix::build(const Matrix& A, double rank_tol) {
  DesignMatrix d;
  d.A = A;
  d.G = least_squares_row_inverse(A, rank_tol);
  d.c = induced_norm(d.G, InducedNorm::InfToInf);
  d.c1 = induced_norm(d.G, InducedNorm::InfToOne);
  d.c2 = induced_norm(d.G, InducedNorm::InfToTwo);
  return d;
}

}  // namespace linops
}  // namespace l1stab
