// Copyright 2026 The l1stab authors
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0

#ifndef L1STAB_LP_HPP
#define L1STAB_LP_HPP

#include <limits>
#include <vector>

#include "l1stab/linops.hpp"

namespace l1stab {
namespace lp {

inline constexpr double kInf = std::numeric_limits<double>::infinity();
inline constexpr double kFeasTol = 1e-9;
inline constexpr double kGapTol = 1e-8;
inline constexpr double kCsTol = 1e-7;

struct NumericalFailure : std::runtime_error {
  explicit NumericalFailure(const std::string& what)
      : std::runtime_error(what) {}
};

// minimize c^T z  subject to  G z <= h,  E z = f,  lower <= z <= upper.
// G or E may have zero rows; empty bound vectors mean all variables free.
struct LpProblem {
  Vector c;
  Matrix G;
  Vector h;
  Matrix E;
  Vector f;
  Vector lower;  // empty or size n, -inf allowed
  Vector upper;  // empty or size n, +inf allowed

  int num_vars() const { return static_cast<int>(c.size()); }
};

enum class LpStatus { Optimal, Infeasible, Unbounded };

struct LpSolution {
  LpStatus status = LpStatus::Infeasible;
  Vector primal;
  Vector dual_ineq;  // multipliers for G z <= h, >= 0
  Vector dual_eq;    // multipliers for E z = f
  double value = 0.0;
  // Farkas certificate (lambda, mu), lambda >= 0, for Infeasible problems
  // with free variables: G^T lambda + E^T mu = 0 and h^T lambda + f^T mu < 0.
  Vector farkas_ineq;
  Vector farkas_eq;
  // Optimal basis (internal column indices), usable as a warm start.
  std::vector<int> basis;
};

// Two-phase bounded-variable primal simplex with Bland's rule.  Fully
// deterministic: identical inputs give identical outputs.
LpSolution solve(const LpProblem& p, const std::vector<int>* warm_basis = nullptr);

// Feasible sets {G z <= h, E z = f}; all variables free.
struct Polyhedron {
  Matrix G;
  Vector h;
  Matrix E;
  Vector f;
  int dim = 0;

  static Polyhedron inequalities(const Matrix& G, const Vector& h);
  static Polyhedron equalities(const Matrix& E, const Vector& f);
  int num_ineq() const { return static_cast<int>(G.rows()); }
  int num_eq() const { return static_cast<int>(E.rows()); }
};

struct FeasibilityResult {
  bool feasible = false;
  Vector witness;      // point with max violation <= kFeasTol
  Vector farkas_ineq;  // on infeasibility: lambda >= 0
  Vector farkas_eq;    // and mu with G^T lambda + E^T mu = 0, h^T lambda + f^T mu < 0
};

FeasibilityResult check_feasibility(const Polyhedron& system);

// Residual helpers shared by the certifiers and the KKT membership tests.
double max_violation(const Polyhedron& f, const Vector& z);

}  // namespace lp
}  // namespace l1stab

#endif  // L1STAB_LP_HPP
