// Copyright 2026 The l1stab authors
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0

#ifndef L1STAB_LINOPS_HPP
#define L1STAB_LINOPS_HPP

#include <Eigen/Dense>
#include <stdexcept>
#include <string>

namespace l1stab {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

struct RankDeficient : std::runtime_error {
  explicit RankDeficient(const std::string& what) : std::runtime_error(what) {}
};

struct TooLarge : std::runtime_error {
  explicit TooLarge(const std::string& what) : std::runtime_error(what) {}
};

struct DimMismatch : std::runtime_error {
  explicit DimMismatch(const std::string& what) : std::runtime_error(what) {}
};

namespace linops {

// Relative singular-value cutoff for all rank decisions.
inline constexpr double kRankTol = 1e-10;

// Hard cap on the column count for the vertex-enumeration norms.
inline constexpr int kBruteForceCap = 24;

// G = (A A^T)^{-1} A for a full-row-rank A, computed through the SVD
// (never by forming A A^T).  Throws RankDeficient when the smallest
// singular value falls under rank_tol times the largest.
Matrix least_squares_row_inverse(const Matrix& A, double rank_tol = kRankTol);

enum class InducedNorm { InfToInf, InfToOne, InfToTwo };

// ||M||_{inf->inf} is the maximum absolute row sum.  The inf->1 and
// inf->2 norms are exact maxima of ||Mx|| over the sign cube {-1,+1}^n,
// enumerated over 2^(n-1) vertices (x and -x give the same value).
// Throws TooLarge when cols(M) > cap for the enumeration norms.
double induced_norm(const Matrix& M, InducedNorm target,
                    int cap = kBruteForceCap);

// sigma_k(x)_1: the l1 mass of x outside its k largest-magnitude entries.
double best_k_term_error(const Vector& x, int k);

// A design matrix together with its row inverse G = (AA^T)^{-1}A and the
// three induced-norm constants of G used throughout the error bounds:
//   c  = ||G||_{inf->inf},  c1 = ||G||_{inf->1},  c2 = ||G||_{inf->2}.
struct DesignMatrix {
  Matrix A;
  Matrix G;
  double c = 0.0;
  double c1 = 0.0;
  double c2 = 0.0;

  int rows() const { return static_cast<int>(A.rows()); }
  int cols() const { return static_cast<int>(A.cols()); }

  static DesignMatrix build(const Matrix& A, double rank_tol = kRankTol);
};

}  // namespace linops
}  // namespace l1stab

#endif  // L1STAB_LINOPS_HPP
