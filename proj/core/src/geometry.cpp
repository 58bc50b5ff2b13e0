// Copyright 2026 The l1stab authors
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0

#include "l1stab/geometry.hpp"

#include <Eigen/QR>
#include <algorithm>
#include <cmath>
#include <limits>

#include "l1stab/ensemble.hpp"

namespace l1stab {
namespace geom {

namespace {

constexpr double kDykstraTol = 1e-8;
constexpr int kDykstraIters = 5000;

double halton(std::uint64_t i, int base) {
  double f = 1.0, r = 0.0;
  while (i > 0) {
    f /= base;
    r += f * (i % base);
    i /= base;
  }
  return r;
}

constexpr int kPrimes[] = {2,  3,  5,  7,  11, 13, 17, 19, 23, 29,
                           31, 37, 41, 43, 47, 53, 59, 61, 67, 71};

}  // namespace

Matrix sample_directions(int dim, int count, std::uint64_t seed) {
  if (dim > 20) throw BadDim("sample_directions: dim > 20");
  Matrix out(dim, count);
  const std::uint64_t offset = 1 + seed % 100003;
  const int pairs = (dim + 1) / 2;
  for (int c = 0; c < count; ++c) {
    Vector z(dim);
    for (int p = 0; p < pairs; ++p) {
      double u1 = halton(offset + c, kPrimes[2 * p]);
      const double u2 = halton(offset + c, kPrimes[2 * p + 1]);
      if (u1 <= 1e-300) u1 = 1e-300;
      const double r = std::sqrt(-2.0 * std::log(u1));
      z(2 * p) = r * std::cos(2.0 * M_PI * u2);
      if (2 * p + 1 < dim) z(2 * p + 1) = r * std::sin(2.0 * M_PI * u2);
    }
    const double n = z.norm();
    out.col(c) = n > 0 ? Vector(z / n) : Vector(Vector::Unit(dim, 0));
  }
  return out;
}

lp::Polyhedron SpherePolytope::as_polyhedron() const {
  lp::Polyhedron p;
  p.G = normals.transpose();
  p.h = Vector::Ones(num_normals());
  p.E.resize(0, dim);
  p.f.resize(0);
  p.dim = dim;
  return p;
}

SpherePolytope dudley_polytope(int m, int K, std::uint64_t seed) {
  if (m < 2 || K <= m) throw BadDim("dudley_polytope: need K > m >= 2");
  SpherePolytope P;
  P.dim = m;
  P.requested_K = K;
  P.seed = seed;
  P.normals.resize(m, K);
  if (m == 2) {
    // Snap coordinates that are axis values up to rounding so the axis
    // normals come out exact (duplicate removal is by exact equality).
    const auto snap = [](double c) {
      if (std::abs(c) < 1e-15) return 0.0;
      if (std::abs(c - 1.0) < 1e-15) return 1.0;
      if (std::abs(c + 1.0) < 1e-15) return -1.0;
      return c;
    };
    for (int j = 0; j < K; ++j) {
      const double a = 2.0 * M_PI * j / K;
      P.normals(0, j) = snap(std::cos(a));
      P.normals(1, j) = snap(std::sin(a));
    }
    return P;
  }
  ensemble::Rng rng(seed);
  for (int j = 0; j < K; ++j) {
    Vector v(m);
    for (int i = 0; i < m; ++i) v(i) = rng.normal();
    P.normals.col(j) = v / v.norm();
  }
  // Fixed-count electrostatic repulsion toward quasi-uniformity.
  for (int iter = 0; iter < 200; ++iter) {
    Matrix force = Matrix::Zero(m, K);
    for (int a = 0; a < K; ++a) {
      for (int b = 0; b < K; ++b) {
        if (a == b) continue;
        const Vector d = P.normals.col(a) - P.normals.col(b);
        const double r = std::max(d.norm(), 1e-6);
        force.col(a) += d / (r * r * r);
      }
    }
    const double step = 0.1 / K;
    for (int a = 0; a < K; ++a) {
      Vector v = P.normals.col(a) + step * force.col(a);
      P.normals.col(a) = v / v.norm();
    }
  }
  return P;
}

SpherePolytope augment_with_axes(const SpherePolytope& P) {
  std::vector<Vector> extra;
  for (int i = 0; i < P.dim; ++i) {
    for (double s : {1.0, -1.0}) {
      const Vector axis = s * Vector::Unit(P.dim, i);
      bool present = false;
      for (int j = 0; j < P.num_normals() && !present; ++j) {
        present = (P.normals.col(j).array() == axis.array()).all();
      }
      if (!present) extra.push_back(axis);
    }
  }
  SpherePolytope out = P;
  out.augmented = true;
  if (!extra.empty()) {
    out.normals.conservativeResize(P.dim, P.num_normals() + extra.size());
    for (size_t e = 0; e < extra.size(); ++e) {
      out.normals.col(P.num_normals() + e) = extra[e];
    }
  }
  return out;
}

SpherePolytope nest(const std::vector<SpherePolytope>& polytopes) {
  if (polytopes.empty()) throw BadDim("nest: empty list");
  const int dim = polytopes.front().dim;
  SpherePolytope out;
  out.dim = dim;
  out.seed = polytopes.front().seed;
  out.requested_K = 0;
  std::vector<Vector> cols;
  bool augmented = true;
  for (const auto& P : polytopes) {
    if (P.dim != dim) throw DimMismatch("nest: mixed dimensions");
    out.requested_K += P.requested_K;
    augmented = augmented && P.augmented;
    for (int j = 0; j < P.num_normals(); ++j) {
      const Vector c = P.normals.col(j);
      bool dup = false;
      for (const auto& seen : cols) {
        if ((seen.array() == c.array()).all()) {
          dup = true;
          break;
        }
      }
      if (!dup) cols.push_back(c);
    }
  }
  out.augmented = augmented;
  out.normals.resize(dim, cols.size());
  for (size_t j = 0; j < cols.size(); ++j) out.normals.col(j) = cols[j];
  return out;
}

HausdorffValue hausdorff_to_ball(const SpherePolytope& P, int directions,
                                 std::uint64_t seed) {
  HausdorffValue hv;
  if (P.dim == 2) {
    std::vector<double> ang(P.num_normals());
    for (int j = 0; j < P.num_normals(); ++j) {
      ang[j] = std::atan2(P.normals(1, j), P.normals(0, j));
    }
    std::sort(ang.begin(), ang.end());
    double max_gap = 2.0 * M_PI + ang.front() - ang.back();
    for (size_t j = 1; j < ang.size(); ++j) {
      max_gap = std::max(max_gap, ang[j] - ang[j - 1]);
    }
    hv.exact = true;
    hv.value = max_gap >= M_PI ? std::numeric_limits<double>::infinity()
                               : 1.0 / std::cos(max_gap / 2.0) - 1.0;
    return hv;
  }
  const lp::Polyhedron sys = P.as_polyhedron();
  const Matrix dirs = sample_directions(P.dim, directions, seed);
  double best = 0.0;
  for (int c = 0; c < directions; ++c) {
    lp::LpProblem prob;
    prob.c = -dirs.col(c);
    prob.G = sys.G;
    prob.h = sys.h;
    prob.E.resize(0, P.dim);
    prob.f.resize(0);
    const auto sol = lp::solve(prob);
    if (sol.status == lp::LpStatus::Unbounded) {
      hv.value = std::numeric_limits<double>::infinity();
      hv.exact = false;
      return hv;
    }
    best = std::max(best, sol.primal.norm());
  }
  hv.value = best - 1.0;
  hv.exact = false;
  return hv;
}

std::pair<int, double> nearest_normal(const SpherePolytope& P, const Vector& z) {
  if (std::abs(z.norm() - 1.0) > 1e-8) {
    throw BadDim("nearest_normal: z must be a unit vector");
  }
  int best = 0;
  double dist = std::numeric_limits<double>::infinity();
  for (int j = 0; j < P.num_normals(); ++j) {
    const double d = (P.normals.col(j) - z).norm();
    if (d < dist) {
      dist = d;
      best = j;
    }
  }
  return {best, dist};
}

namespace {

// Dykstra alternating projections under the diagonal metric diag(w).
Vector dykstra(const Vector& x, const lp::Polyhedron& F, const Vector& w) {
  const int n = F.dim;
  const int rows = F.num_ineq() + F.num_eq();
  Vector z = x;
  Matrix corr = Matrix::Zero(n, rows);
  const Vector winv = w.cwiseInverse();
  for (int iter = 0; iter < kDykstraIters; ++iter) {
    const Vector z_prev = z;
    for (int r = 0; r < rows; ++r) {
      const Vector y = z + corr.col(r);
      Vector g;
      double viol;
      if (r < F.num_ineq()) {
        g = F.G.row(r).transpose();
        viol = std::max(0.0, g.dot(y) - F.h(r));
      } else {
        g = F.E.row(r - F.num_ineq()).transpose();
        viol = g.dot(y) - F.f(r - F.num_ineq());
      }
      const double denom = g.cwiseProduct(winv).dot(g);
      const Vector znew =
          denom > 0 ? Vector(y - (viol / denom) * winv.cwiseProduct(g)) : y;
      corr.col(r) = y - znew;
      z = znew;
    }
    if ((z - z_prev).cwiseAbs().maxCoeff() < kDykstraTol * 1e-2) break;
  }
  return z;
}

struct KktCandidate {
  Vector z;
  bool ok = false;
};

// Solve the equality-constrained weighted least-squares KKT system for a
// fixed active set; verify stationarity, primal feasibility and multiplier
// signs.
KktCandidate try_active_set(const Vector& x, const lp::Polyhedron& F,
                            const Vector& w, const std::vector<int>& active) {
  const int n = F.dim;
  const int na = static_cast<int>(active.size());
  const int ne = F.num_eq();
  const int dim = n + na + ne;
  Matrix K = Matrix::Zero(dim, dim);
  Vector rhs = Vector::Zero(dim);
  K.topLeftCorner(n, n) = w.asDiagonal();
  rhs.head(n) = w.cwiseProduct(x);
  for (int a = 0; a < na; ++a) {
    K.block(0, n + a, n, 1) = F.G.row(active[a]).transpose();
    K.block(n + a, 0, 1, n) = F.G.row(active[a]);
    rhs(n + a) = F.h(active[a]);
  }
  for (int e = 0; e < ne; ++e) {
    K.block(0, n + na + e, n, 1) = F.E.row(e).transpose();
    K.block(n + na + e, 0, 1, n) = F.E.row(e);
    rhs(n + na + e) = F.f(e);
  }
  Eigen::CompleteOrthogonalDecomposition<Matrix> cod(K);
  const Vector sol = cod.solve(rhs);
  KktCandidate cand;
  cand.z = sol.head(n);
  if ((K * sol - rhs).cwiseAbs().maxCoeff() > 1e-7) return cand;
  if (lp::max_violation(F, cand.z) > 1e-8) return cand;
  for (int a = 0; a < na; ++a) {
    if (sol(n + a) < -1e-8) return cand;
  }
  cand.ok = true;
  return cand;
}

Projection project_impl(const Vector& x, const lp::Polyhedron& F,
                        const Vector& weights) {
  const auto feas = lp::check_feasibility(F);
  if (!feas.feasible) throw EmptyPolyhedron("project: empty polyhedron");

  const auto wdist = [&](const Vector& z) {
    return std::sqrt(weights.cwiseProduct((z - x).cwiseAbs2()).sum());
  };

  Projection out;
  if (lp::max_violation(F, x) <= lp::kFeasTol) {
    out.point = x;
    out.dist = 0.0;
    out.exact = true;
    return out;
  }

  // Dykstra pass (weights floored so zero-weight coordinates still move)
  // provides the active-set guess.
  const Vector wfloor = weights.cwiseMax(1e-3);
  const Vector guess_pt = dykstra(x, F, wfloor);
  std::vector<int> guess;
  for (int r = 0; r < F.num_ineq(); ++r) {
    if (F.G.row(r) * guess_pt - F.h(r) > -1e-6) guess.push_back(r);
  }
  {
    const auto cand = try_active_set(x, F, weights, guess);
    if (cand.ok) {
      out.point = cand.z;
      out.dist = wdist(cand.z);
      out.exact = true;
      return out;
    }
  }

  const int rows = F.num_ineq();
  if (rows <= kProjCap) {
    // Exhaustive active-set enumeration, smallest sets first; the first
    // verified candidate is the projection.
    std::vector<std::vector<int>> by_card(rows + 1);
    for (std::uint32_t mask = 0; mask < (1u << rows); ++mask) {
      by_card[std::popcount(mask)].push_back(mask);
    }
    double best = std::numeric_limits<double>::infinity();
    Vector best_z;
    bool found = false;
    for (int card = 0; card <= rows; ++card) {
      for (std::uint32_t mask : by_card[card]) {
        std::vector<int> active;
        for (int r = 0; r < rows; ++r) {
          if (mask >> r & 1) active.push_back(r);
        }
        const auto cand = try_active_set(x, F, weights, active);
        if (cand.ok) {
          const double d = wdist(cand.z);
          if (d < best) {
            best = d;
            best_z = cand.z;
            found = true;
          }
        }
      }
      if (found) break;  // minimal active set found at this cardinality
    }
    if (found) {
      out.point = best_z;
      out.dist = best;
      out.exact = true;
      return out;
    }
  }

  // Fallback: the Dykstra point under floored weights, flagged approximate.
  Vector z = dykstra(x, F, wfloor);
  // Clean tiny infeasibility by a last metric projection on violated rows.
  out.point = z;
  out.dist = wdist(z);
  out.exact = false;
  return out;
}

}  // namespace

Projection project(const Vector& x, const lp::Polyhedron& F) {
  return project_impl(x, F, Vector::Ones(F.dim));
}

Projection project_weighted(const Vector& x, const lp::Polyhedron& F,
                            const Vector& weights) {
  if (weights.size() != F.dim) throw DimMismatch("project_weighted: weights");
  return project_impl(x, F, weights);
}

namespace {

double support_value(const lp::Polyhedron& F, const Vector& u, Vector* argmax) {
  lp::LpProblem prob;
  prob.c = -u;
  prob.G = F.G;
  prob.h = F.h;
  prob.E = F.E;
  prob.f = F.f;
  const auto sol = lp::solve(prob);
  if (sol.status == lp::LpStatus::Unbounded) {
    throw Unbounded("hausdorff_estimate: support LP unbounded");
  }
  if (sol.status != lp::LpStatus::Optimal) {
    throw EmptyPolyhedron("hausdorff_estimate: empty polyhedron");
  }
  if (argmax) *argmax = sol.primal;
  return -sol.value;
}

}  // namespace

double hausdorff_estimate(const lp::Polyhedron& F1, const lp::Polyhedron& F2,
                          int directions, std::uint64_t seed,
                          bool f1_subset_f2) {
  if (F1.dim != F2.dim) throw DimMismatch("hausdorff_estimate: dims differ");
  const Matrix dirs = sample_directions(F1.dim, directions, seed);
  double est = 0.0;
  for (int c = 0; c < directions; ++c) {
    Vector v2;
    const double h1 = support_value(F1, dirs.col(c), nullptr);
    const double h2 = support_value(F2, dirs.col(c), &v2);
    est = std::max(est, std::abs(h1 - h2));
    if (f1_subset_f2) {
      est = std::max(est, project(v2, F1).dist);
    }
  }
  return est;
}

}  // namespace geom
}  // namespace l1stab
