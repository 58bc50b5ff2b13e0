// Copyright 2026 The l1stab authors
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0

#ifndef L1STAB_SOLVERS_HPP
#define L1STAB_SOLVERS_HPP

#include <optional>
#include <vector>

#include "l1stab/geometry.hpp"
#include "l1stab/lp.hpp"

namespace l1stab {
namespace solvers {

enum class Kind { Eq, Inf, One, Two };

inline const std::vector<int> kDefaultJSchedule = {16, 32, 64, 128, 256};
inline constexpr double kScheduleTol = 1e-6;  // relative value change

struct ScheduleExhausted : std::runtime_error {
  explicit ScheduleExhausted(const std::string& what)
      : std::runtime_error(what) {}
};

// Multiplier tuple; which fields are populated depends on the kind:
//   Eq : t, u, v, w
//   Inf: t, u, v, w, w2       (w2 is w' of the one-sided rows)
//   One: t, r, v1..v5          (v5 scalar)
//   Two: t, v1, v2, v3
struct DualTuple {
  Vector t;
  Vector u, v, w, w2;
  Vector r;
  Vector v1, v2, v3, v4;
  double v5 = 0.0;
};

struct RelaxationInfo {
  geom::SpherePolytope polytope;          // finest level used
  std::vector<std::pair<int, double>> ladder;  // (J, relaxation value)
  double lower = 0.0;   // relaxation optimal value (<= gamma*)
  double upper = 0.0;   // l1 norm of the restored feasible point
  Vector restored;
  bool schedule_exhausted = false;
};

struct RecoverySolution {
  Kind kind = Kind::Eq;
  Vector x;
  double value = 0.0;
  DualTuple dual;
  double kkt_residual_linf = 0.0;
  std::optional<RelaxationInfo> relaxation;  // kind == Two only
};

RecoverySolution bp_solve(const linops::DesignMatrix& A, const Vector& y);
RecoverySolution linf_solve(const linops::DesignMatrix& A, const Vector& y,
                            double eps);
RecoverySolution l1con_solve(const linops::DesignMatrix& A, const Vector& y,
                             double eps);
RecoverySolution l2con_solve(
    const linops::DesignMatrix& A, const Vector& y, double eps,
    const std::vector<int>& J_schedule = kDefaultJSchedule,
    double tol = kScheduleTol);

// The residual stack the error bounds consume: positive parts of violated
// inequalities, equality residuals, negative parts of sign constraints, in
// the frozen row order of the matching KKT system.
Vector kkt_residual(Kind kind, const Vector& x, const DualTuple& dual,
                    const Matrix& A, const Vector& y, double eps,
                    const geom::SpherePolytope* P = nullptr);

// Exact l2 distance (in x only) from x to the optimal solution set.
double solution_set_distance(const Vector& x, Kind kind,
                             const linops::DesignMatrix& A, const Vector& y,
                             double eps,
                             const std::vector<int>& J_schedule = kDefaultJSchedule);

// Optimal-solution-set polyhedron in the lifted (x, t[, extras]) space; the
// first n coordinates are x.  Exposed for the distance tests.
lp::Polyhedron solution_set(Kind kind, const linops::DesignMatrix& A,
                            const Vector& y, double eps,
                            const std::vector<int>& J_schedule = kDefaultJSchedule);

}  // namespace solvers
}  // namespace l1stab

#endif  // L1STAB_SOLVERS_HPP
