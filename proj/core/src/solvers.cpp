// Copyright 2026 The l1stab authors
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0

#include "l1stab/solvers.hpp"

#include <algorithm>
#include <cmath>

namespace l1stab {
namespace solvers {

namespace {

Vector positive(const Vector& v) { return v.cwiseMax(0.0); }
Vector negative(const Vector& v) { return (-v).cwiseMax(0.0); }

void append(std::vector<double>& out, const Vector& v) {
  for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back(v(i));
}

Vector collect(const std::vector<double>& vals) {
  Vector v(static_cast<Eigen::Index>(vals.size()));
  for (size_t i = 0; i < vals.size(); ++i) v(static_cast<Eigen::Index>(i)) = vals[i];
  return v;
}

void require_eps(double eps, const char* who) {
  if (!(eps > 0.0)) {
    throw DimMismatch(std::string(who) + ": eps must be positive (use bp_solve for the equality problem)");
  }
}

// Shared epigraph scaffolding: variables (x, t, extra...) with rows
// x - t <= 0 and -x - t <= 0 first (or wherever the caller places them).
void put_epigraph_rows(Matrix& G, int row0, int n, int x0, int t0) {
  for (int i = 0; i < n; ++i) {
    G(row0 + i, x0 + i) = 1.0;
    G(row0 + i, t0 + i) = -1.0;
    G(row0 + n + i, x0 + i) = -1.0;
    G(row0 + n + i, t0 + i) = -1.0;
  }
}

}  // namespace

RecoverySolution bp_solve(const linops::DesignMatrix& A, const Vector& y) {
  const int m = static_cast<int>(A.A.rows());
  const int n = static_cast<int>(A.A.cols());
  lp::LpProblem p;
  p.c = Vector::Zero(2 * n);
  p.c.tail(n).setOnes();
  p.G = Matrix::Zero(2 * n, 2 * n);
  put_epigraph_rows(p.G, 0, n, 0, n);
  p.h = Vector::Zero(2 * n);
  p.E = Matrix::Zero(m, 2 * n);
  p.E.leftCols(n) = A.A;
  p.f = y;
  p.lower = Vector::Constant(2 * n, -lp::kInf);
  p.lower.tail(n).setZero();
  p.upper = Vector::Constant(2 * n, lp::kInf);
  const auto sol = lp::solve(p);
  if (sol.status != lp::LpStatus::Optimal) {
    throw lp::NumericalFailure("bp_solve: LP not optimal");
  }
  RecoverySolution out;
  out.kind = Kind::Eq;
  out.x = sol.primal.head(n);
  out.value = sol.value;
  out.dual.t = sol.primal.tail(n);
  out.dual.u = sol.dual_ineq.head(n);
  out.dual.v = sol.dual_ineq.tail(n);
  out.dual.w = -sol.dual_eq;
  out.kkt_residual_linf =
      kkt_residual(Kind::Eq, out.x, out.dual, A.A, y, 0.0)
          .lpNorm<Eigen::Infinity>();
  return out;
}

RecoverySolution linf_solve(const linops::DesignMatrix& A, const Vector& y,
                            double eps) {
  require_eps(eps, "linf_solve");
  const int m = static_cast<int>(A.A.rows());
  const int n = static_cast<int>(A.A.cols());
  lp::LpProblem p;
  p.c = Vector::Zero(2 * n);
  p.c.tail(n).setOnes();
  p.G = Matrix::Zero(2 * n + 2 * m, 2 * n);
  p.h = Vector::Zero(2 * n + 2 * m);
  put_epigraph_rows(p.G, 0, n, 0, n);
  p.G.block(2 * n, 0, m, n) = A.A;
  p.h.segment(2 * n, m) = y + Vector::Constant(m, eps);
  p.G.block(2 * n + m, 0, m, n) = -A.A;
  p.h.segment(2 * n + m, m) = Vector::Constant(m, eps) - y;
  p.E.resize(0, 2 * n);
  p.f.resize(0);
  p.lower = Vector::Constant(2 * n, -lp::kInf);
  p.lower.tail(n).setZero();
  p.upper = Vector::Constant(2 * n, lp::kInf);
  const auto sol = lp::solve(p);
  if (sol.status != lp::LpStatus::Optimal) {
    throw lp::NumericalFailure("linf_solve: LP not optimal");
  }
  RecoverySolution out;
  out.kind = Kind::Inf;
  out.x = sol.primal.head(n);
  out.value = sol.value;
  out.dual.t = sol.primal.tail(n);
  out.dual.u = sol.dual_ineq.head(n);
  out.dual.v = sol.dual_ineq.segment(n, n);
  out.dual.w2 = sol.dual_ineq.segment(2 * n, m);   // rows  Ax <= y + eps e
  out.dual.w = sol.dual_ineq.segment(2 * n + m, m);  // rows -Ax <= eps e - y
  out.kkt_residual_linf =
      kkt_residual(Kind::Inf, out.x, out.dual, A.A, y, eps)
          .lpNorm<Eigen::Infinity>();
  return out;
}

RecoverySolution l1con_solve(const linops::DesignMatrix& A, const Vector& y,
                             double eps) {
  require_eps(eps, "l1con_solve");
  const int m = static_cast<int>(A.A.rows());
  const int n = static_cast<int>(A.A.cols());
  const int nv = 2 * n + m;  // (x, t, r)
  lp::LpProblem p;
  p.c = Vector::Zero(nv);
  p.c.segment(n, n).setOnes();
  const int mi = 2 * n + 2 * m + 1;
  p.G = Matrix::Zero(mi, nv);
  p.h = Vector::Zero(mi);
  put_epigraph_rows(p.G, 0, n, 0, n);
  int r0 = 2 * n;
  p.G.block(r0, 0, m, n) = A.A;  //  Ax - r <= y
  p.G.block(r0, 2 * n, m, m) = -Matrix::Identity(m, m);
  p.h.segment(r0, m) = y;
  r0 += m;
  p.G.block(r0, 0, m, n) = -A.A;  // -Ax - r <= -y
  p.G.block(r0, 2 * n, m, m) = -Matrix::Identity(m, m);
  p.h.segment(r0, m) = -y;
  r0 += m;
  p.G.row(r0).segment(2 * n, m).setOnes();  // e^T r <= eps
  p.h(r0) = eps;
  p.E.resize(0, nv);
  p.f.resize(0);
  p.lower = Vector::Constant(nv, -lp::kInf);
  p.lower.segment(n, n).setZero();
  p.lower.tail(m).setZero();
  p.upper = Vector::Constant(nv, lp::kInf);
  const auto sol = lp::solve(p);
  if (sol.status != lp::LpStatus::Optimal) {
    throw lp::NumericalFailure("l1con_solve: LP not optimal");
  }
  RecoverySolution out;
  out.kind = Kind::One;
  out.x = sol.primal.head(n);
  out.value = sol.value;
  out.dual.t = sol.primal.segment(n, n);
  out.dual.r = sol.primal.tail(m);
  out.dual.v1 = sol.dual_ineq.head(n);
  out.dual.v2 = sol.dual_ineq.segment(n, n);
  out.dual.v3 = sol.dual_ineq.segment(2 * n, m);
  out.dual.v4 = sol.dual_ineq.segment(2 * n + m, m);
  out.dual.v5 = sol.dual_ineq(2 * n + 2 * m);
  out.kkt_residual_linf =
      kkt_residual(Kind::One, out.x, out.dual, A.A, y, eps)
          .lpNorm<Eigen::Infinity>();
  return out;
}

namespace {

// The polytope-relaxation LP at a fixed polytope; rows ordered polytope
// first, then the epigraph rows.
lp::LpSolution solve_relaxation(const Matrix& A, const Vector& y, double eps,
                                const geom::SpherePolytope& P,
                                const std::vector<int>* warm) {
  const int m = static_cast<int>(A.rows());
  const int n = static_cast<int>(A.cols());
  const Matrix MT = P.normals.transpose();  // N x m
  const int N = static_cast<int>(MT.rows());
  lp::LpProblem p;
  p.c = Vector::Zero(2 * n);
  p.c.tail(n).setOnes();
  p.G = Matrix::Zero(N + 2 * n, 2 * n);
  p.h = Vector::Zero(N + 2 * n);
  p.G.block(0, 0, N, n) = MT * A;
  p.h.head(N) = Vector::Constant(N, eps) + MT * y;
  put_epigraph_rows(p.G, N, n, 0, n);
  p.E.resize(0, 2 * n);
  p.f.resize(0);
  p.lower = Vector::Constant(2 * n, -lp::kInf);
  p.lower.tail(n).setZero();
  p.upper = Vector::Constant(2 * n, lp::kInf);
  return lp::solve(p, warm);
}

geom::SpherePolytope nested_polytope(int m, const std::vector<int>& schedule,
                                     size_t levels) {
  std::vector<geom::SpherePolytope> parts;
  for (size_t i = 0; i < levels && i < schedule.size(); ++i) {
    parts.push_back(
        geom::augment_with_axes(geom::dudley_polytope(m, schedule[i], 1)));
  }
  return geom::nest(parts);
}

}  // namespace

RecoverySolution l2con_solve(const linops::DesignMatrix& A, const Vector& y,
                             double eps, const std::vector<int>& J_schedule,
                             double tol) {
  require_eps(eps, "l2con_solve");
  const int m = static_cast<int>(A.A.rows());
  const int n = static_cast<int>(A.A.cols());
  if (m < 2) throw DimMismatch("l2con_solve: need m >= 2");
  if (J_schedule.empty()) throw DimMismatch("l2con_solve: empty schedule");

  RelaxationInfo info;
  lp::LpSolution sol;
  geom::SpherePolytope P;
  double prev = std::numeric_limits<double>::quiet_NaN();
  bool converged = false;
  for (size_t lev = 1; lev <= J_schedule.size(); ++lev) {
    P = nested_polytope(m, J_schedule, lev);
    sol = solve_relaxation(A.A, y, eps, P, nullptr);
    if (sol.status != lp::LpStatus::Optimal) {
      throw lp::NumericalFailure("l2con_solve: relaxation LP not optimal");
    }
    info.ladder.emplace_back(J_schedule[lev - 1], sol.value);
    if (lev > 1 && std::abs(sol.value - prev) < tol * (1.0 + std::abs(sol.value))) {
      converged = true;
      break;
    }
    prev = sol.value;
  }
  info.schedule_exhausted = !converged;
  info.polytope = P;
  info.lower = sol.value;

  RecoverySolution out;
  out.kind = Kind::Two;
  out.x = sol.primal.head(n);
  out.value = sol.value;
  out.dual.t = sol.primal.tail(n);
  const int N = P.num_normals();
  out.dual.v3 = sol.dual_ineq.head(N);
  out.dual.v1 = sol.dual_ineq.segment(N, n);
  out.dual.v2 = sol.dual_ineq.segment(N + n, n);
  out.kkt_residual_linf =
      kkt_residual(Kind::Two, out.x, out.dual, A.A, y, eps, &P)
          .lpNorm<Eigen::Infinity>();

  // Feasibility restoration: move radially toward the least-squares point
  // until the true l2 constraint holds.
  const Vector x_ls = A.G.transpose() * y;  // A x_ls = y
  const double res = (A.A * out.x - y).norm();
  const double theta = res <= eps ? 0.0 : 1.0 - eps / res;
  info.restored = (1.0 - theta) * out.x + theta * x_ls;
  info.upper = info.restored.lpNorm<1>();
  out.relaxation = info;
  return out;
}

Vector kkt_residual(Kind kind, const Vector& x, const DualTuple& d,
                    const Matrix& A, const Vector& y, double eps,
                    const geom::SpherePolytope* P) {
  const int n = static_cast<int>(A.cols());
  if (x.size() != n || d.t.size() != n) {
    throw DimMismatch("kkt_residual: tuple sizes");
  }
  std::vector<double> r;
  switch (kind) {
    case Kind::Eq: {
      append(r, positive(x - d.t));
      append(r, positive(-x - d.t));
      append(r, positive(d.u + d.v - Vector::Ones(n)));
      append(r, (A * x - y).cwiseAbs());
      append(r, (A.transpose() * d.w - d.u + d.v).cwiseAbs());
      r.push_back(std::abs(d.t.sum() - y.dot(d.w)));
      append(r, negative(d.u));
      append(r, negative(d.v));
      append(r, negative(d.t));
      break;
    }
    case Kind::Inf: {
      append(r, positive(x - d.t));
      append(r, positive(-x - d.t));
      append(r, positive(A * x - y - Vector::Constant(y.size(), eps)));
      append(r, negative(A * x - y + Vector::Constant(y.size(), eps)));
      append(r, (A.transpose() * (d.w - d.w2) - d.u + d.v).cwiseAbs());
      append(r, positive(d.u + d.v - Vector::Ones(n)));
      r.push_back(std::abs(d.t.sum() -
                           (y - Vector::Constant(y.size(), eps)).dot(d.w) +
                           (y + Vector::Constant(y.size(), eps)).dot(d.w2)));
      append(r, negative(d.u));
      append(r, negative(d.v));
      append(r, negative(d.t));
      append(r, negative(d.w));
      append(r, negative(d.w2));
      break;
    }
    case Kind::One: {
      append(r, positive(x - d.t));
      append(r, positive(-x - d.t));
      append(r, positive(A * x - y - d.r));
      append(r, negative(A * x - y + d.r));
      r.push_back(std::max(0.0, d.r.sum() - eps));
      append(r, (A.transpose() * (d.v3 - d.v4) + d.v1 - d.v2).cwiseAbs());
      append(r, positive(d.v1 + d.v2 - Vector::Ones(n)));
      append(r, positive(d.v3 + d.v4 - Vector::Constant(y.size(), d.v5)));
      r.push_back(std::abs(d.t.sum() + y.dot(d.v3 - d.v4) + d.v5 * eps));
      append(r, negative(d.t));
      append(r, negative(d.r));
      append(r, negative(d.v1));
      append(r, negative(d.v2));
      append(r, negative(d.v3));
      append(r, negative(d.v4));
      r.push_back(std::max(0.0, -d.v5));
      break;
    }
    case Kind::Two: {
      if (!P) throw DimMismatch("kkt_residual: polytope required for kind two");
      const Matrix MT = P->normals.transpose();
      const int N = static_cast<int>(MT.rows());
      append(r, positive(MT * (A * x - y) - Vector::Constant(N, eps)));
      append(r, positive(x - d.t));
      append(r, positive(-x - d.t));
      append(r, (A.transpose() * (P->normals * d.v3) + d.v1 - d.v2).cwiseAbs());
      append(r, positive(d.v1 + d.v2 - Vector::Ones(n)));
      r.push_back(std::abs(d.t.sum() +
                           (Vector::Constant(N, eps) + MT * y).dot(d.v3)));
      append(r, negative(d.t));
      append(r, negative(d.v1));
      append(r, negative(d.v2));
      append(r, negative(d.v3));
      break;
    }
  }
  return collect(r);
}

lp::Polyhedron solution_set(Kind kind, const linops::DesignMatrix& A,
                            const Vector& y, double eps,
                            const std::vector<int>& J_schedule) {
  const int m = static_cast<int>(A.A.rows());
  const int n = static_cast<int>(A.A.cols());
  lp::Polyhedron F;
  switch (kind) {
    case Kind::Eq: {
      const double val = bp_solve(A, y).value;
      F.dim = 2 * n;
      F.G = Matrix::Zero(2 * n, 2 * n);
      put_epigraph_rows(F.G, 0, n, 0, n);
      F.h = Vector::Zero(2 * n);
      F.E = Matrix::Zero(m + 1, 2 * n);
      F.E.block(0, 0, m, n) = A.A;
      F.E.row(m).tail(n).setOnes();
      F.f.resize(m + 1);
      F.f.head(m) = y;
      F.f(m) = val;
      break;
    }
    case Kind::Inf: {
      const double val = linf_solve(A, y, eps).value;
      F.dim = 2 * n;
      F.G = Matrix::Zero(2 * n + 2 * m, 2 * n);
      F.h = Vector::Zero(2 * n + 2 * m);
      put_epigraph_rows(F.G, 0, n, 0, n);
      F.G.block(2 * n, 0, m, n) = A.A;
      F.h.segment(2 * n, m) = y + Vector::Constant(m, eps);
      F.G.block(2 * n + m, 0, m, n) = -A.A;
      F.h.segment(2 * n + m, m) = Vector::Constant(m, eps) - y;
      F.E = Matrix::Zero(1, 2 * n);
      F.E.row(0).tail(n).setOnes();
      F.f = Vector::Constant(1, val);
      break;
    }
    case Kind::One: {
      const double val = l1con_solve(A, y, eps).value;
      const int nv = 2 * n + m;
      F.dim = nv;
      F.G = Matrix::Zero(2 * n + 2 * m + 1, nv);
      F.h = Vector::Zero(2 * n + 2 * m + 1);
      put_epigraph_rows(F.G, 0, n, 0, n);
      int r0 = 2 * n;
      F.G.block(r0, 0, m, n) = A.A;
      F.G.block(r0, 2 * n, m, m) = -Matrix::Identity(m, m);
      F.h.segment(r0, m) = y;
      r0 += m;
      F.G.block(r0, 0, m, n) = -A.A;
      F.G.block(r0, 2 * n, m, m) = -Matrix::Identity(m, m);
      F.h.segment(r0, m) = -y;
      r0 += m;
      F.G.row(r0).segment(2 * n, m).setOnes();
      F.h(r0) = eps;
      F.E = Matrix::Zero(1, nv);
      F.E.row(0).segment(n, n).setOnes();
      F.f = Vector::Constant(1, val);
      break;
    }
    case Kind::Two: {
      const auto sol = l2con_solve(A, y, eps, J_schedule);
      const geom::SpherePolytope& P = sol.relaxation->polytope;
      const Matrix MT = P.normals.transpose();
      const int N = static_cast<int>(MT.rows());
      F.dim = 2 * n;
      F.G = Matrix::Zero(N + 2 * n, 2 * n);
      F.h = Vector::Zero(N + 2 * n);
      F.G.block(0, 0, N, n) = MT * A.A;
      F.h.head(N) = Vector::Constant(N, eps) + MT * y;
      put_epigraph_rows(F.G, N, n, 0, n);
      F.E = Matrix::Zero(1, 2 * n);
      F.E.row(0).tail(n).setOnes();
      F.f = Vector::Constant(1, sol.value);
      break;
    }
  }
  return F;
}

double solution_set_distance(const Vector& x, Kind kind,
                             const linops::DesignMatrix& A, const Vector& y,
                             double eps, const std::vector<int>& J_schedule) {
  const int n = static_cast<int>(A.A.cols());
  const lp::Polyhedron F = solution_set(kind, A, y, eps, J_schedule);
  Vector lifted = Vector::Zero(F.dim);
  lifted.head(n) = x;
  lifted.segment(n, n) = x.cwiseAbs();
  if (F.dim > 2 * n) lifted.tail(F.dim - 2 * n) = (A.A * x - y).cwiseAbs();
  Vector weights = Vector::Zero(F.dim);
  weights.head(n).setOnes();
  return geom::project_weighted(lifted, F, weights).dist;
}

}  // namespace solvers
}  // namespace l1stab
