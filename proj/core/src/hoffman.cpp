// Copyright 2026 The l1stab authors
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0

#include "l1stab/hoffman.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "l1stab/certify.hpp"
#include "l1stab/ensemble.hpp"

namespace l1stab {
namespace hoffman {

using solvers::DualTuple;
using solvers::Kind;

Vector KktSystem::pack(const Vector& x, const DualTuple& d) const {
  std::vector<double> z;
  const auto push = [&](const Vector& v) {
    for (Eigen::Index i = 0; i < v.size(); ++i) z.push_back(v(i));
  };
  push(x);
  push(d.t);
  switch (kind) {
    case Kind::Eq:
      push(d.u);
      push(d.v);
      push(d.w);
      break;
    case Kind::Inf:
      push(d.u);
      push(d.v);
      push(d.w);
      push(d.w2);
      break;
    case Kind::One:
      push(d.r);
      push(d.v1);
      push(d.v2);
      push(d.v3);
      push(d.v4);
      z.push_back(d.v5);
      break;
    case Kind::Two:
      push(d.v1);
      push(d.v2);
      push(d.v3);
      break;
  }
  Vector out(static_cast<Eigen::Index>(z.size()));
  for (size_t i = 0; i < z.size(); ++i) out(static_cast<Eigen::Index>(i)) = z[i];
  return out;
}

Vector KktSystem::residual_stack(const Vector& z) const {
  Vector out(M_ineq.rows() + M_eq.rows());
  out.head(M_ineq.rows()) = (M_ineq * z - b_ineq).cwiseMax(0.0);
  out.tail(M_eq.rows()) = (M_eq * z - b_eq).cwiseAbs();
  return out;
}

double KktSystem::residual_l1(const Vector& z) const {
  return residual_stack(z).lpNorm<1>();
}

namespace {

struct Blocks {
  std::vector<Matrix> rows;
  std::vector<Vector> rhs;
  std::vector<std::string> labels;
  int cols = 0;

  void add(const Matrix& M, const Vector& b, const std::string& label) {
    rows.push_back(M);
    rhs.push_back(b);
    labels.push_back(label);
  }
  void stack(Matrix& M, Vector& b, std::vector<std::string>& out_labels) const {
    Eigen::Index total = 0;
    for (const auto& r : rows) total += r.rows();
    M.resize(total, cols);
    b.resize(total);
    Eigen::Index at = 0;
    for (size_t i = 0; i < rows.size(); ++i) {
      M.middleRows(at, rows[i].rows()) = rows[i];
      b.segment(at, rhs[i].size()) = rhs[i];
      at += rows[i].rows();
    }
    out_labels = labels;
  }
};

Matrix zeros(int r, int c) { return Matrix::Zero(r, c); }

}  // namespace

KktSystem build_kkt(Kind kind, const linops::DesignMatrix& A, const Vector& y,
                    double eps, const geom::SpherePolytope* P) {
  const int m = static_cast<int>(A.A.rows());
  const int n = static_cast<int>(A.A.cols());
  const Matrix I = Matrix::Identity(n, n);
  const Matrix Im = Matrix::Identity(m, m);
  const Vector zn = Vector::Zero(n);
  const Vector zm = Vector::Zero(m);
  const Vector en = Vector::Ones(n);
  const Vector em = Vector::Ones(m);

  KktSystem sys;
  sys.kind = kind;
  Blocks bi, be;

  switch (kind) {
    case Kind::Eq: {
      const int nc = 4 * n + m;  // (x, t, u, v, w)
      bi.cols = be.cols = nc;
      sys.col_blocks = {"x", "t", "u", "v", "w"};
      auto row = [&](int r) { return zeros(r, nc); };
      Matrix R;
      R = row(n); R.leftCols(n) = I; R.middleCols(n, n) = -I;
      bi.add(R, zn, "x-t<=0");
      R = row(n); R.leftCols(n) = -I; R.middleCols(n, n) = -I;
      bi.add(R, zn, "-x-t<=0");
      R = row(n); R.middleCols(2 * n, n) = I; R.middleCols(3 * n, n) = I;
      bi.add(R, en, "u+v<=e");
      R = row(n); R.middleCols(2 * n, n) = -I;
      bi.add(R, zn, "-u<=0");
      R = row(n); R.middleCols(3 * n, n) = -I;
      bi.add(R, zn, "-v<=0");
      R = row(n); R.middleCols(n, n) = -I;
      bi.add(R, zn, "-t<=0");

      R = row(m); R.leftCols(n) = A.A;
      be.add(R, y, "Ax=y");
      R = row(n);
      R.middleCols(2 * n, n) = -I;
      R.middleCols(3 * n, n) = I;
      R.rightCols(m) = A.A.transpose();
      be.add(R, zn, "A^Tw-u+v=0");
      R = row(1);
      R.block(0, n, 1, n) = -en.transpose();
      R.block(0, 4 * n, 1, m) = y.transpose();
      be.add(R, Vector::Zero(1), "y^Tw=e^Tt");
      break;
    }
    case Kind::Inf: {
      const int nc = 4 * n + 2 * m;  // (x, t, u, v, w, w')
      bi.cols = be.cols = nc;
      sys.col_blocks = {"x", "t", "u", "v", "w", "w'"};
      auto row = [&](int r) { return zeros(r, nc); };
      Matrix R;
      R = row(n); R.leftCols(n) = I; R.middleCols(n, n) = -I;
      bi.add(R, zn, "x-t<=0");
      R = row(n); R.leftCols(n) = -I; R.middleCols(n, n) = -I;
      bi.add(R, zn, "-x-t<=0");
      R = row(m); R.leftCols(n) = A.A;
      bi.add(R, Vector(y + eps * em), "Ax<=y+eps*e");
      R = row(m); R.leftCols(n) = -A.A;
      bi.add(R, Vector(eps * em - y), "-Ax<=eps*e-y");
      R = row(n); R.middleCols(n, n) = -I;
      bi.add(R, zn, "-t<=0");
      R = row(n); R.middleCols(2 * n, n) = I; R.middleCols(3 * n, n) = I;
      bi.add(R, en, "u+v<=e");
      R = row(m); R.middleCols(4 * n, m) = -Im;
      bi.add(R, zm, "-w<=0");
      R = row(m); R.middleCols(4 * n + m, m) = -Im;
      bi.add(R, zm, "-w'<=0");
      R = row(n); R.middleCols(2 * n, n) = -I;
      bi.add(R, zn, "-u<=0");
      R = row(n); R.middleCols(3 * n, n) = -I;
      bi.add(R, zn, "-v<=0");

      R = row(n);
      R.middleCols(2 * n, n) = -I;
      R.middleCols(3 * n, n) = I;
      R.middleCols(4 * n, m) = A.A.transpose();
      R.middleCols(4 * n + m, m) = -A.A.transpose();
      be.add(R, zn, "A^T(w-w')-u+v=0");
      R = row(1);
      R.block(0, n, 1, n) = en.transpose();
      R.block(0, 4 * n, 1, m) = -(y - eps * em).transpose();
      R.block(0, 4 * n + m, 1, m) = (y + eps * em).transpose();
      be.add(R, Vector::Zero(1), "e^Tt=(y-eps*e)^Tw-(y+eps*e)^Tw'");
      break;
    }
    case Kind::One: {
      // (x, t, r, v1, v2, v3, v4, v5)
      const int nc = 4 * n + 3 * m + 1;
      bi.cols = be.cols = nc;
      sys.col_blocks = {"x", "t", "r", "v1", "v2", "v3", "v4", "v5"};
      const int xr = 0, tr = n, rr = 2 * n, v1r = 2 * n + m, v2r = 3 * n + m,
                v3r = 4 * n + m, v4r = 4 * n + 2 * m, v5r = 4 * n + 3 * m;
      auto row = [&](int r) { return zeros(r, nc); };
      Matrix R;
      R = row(n); R.middleCols(xr, n) = I; R.middleCols(tr, n) = -I;
      bi.add(R, zn, "x-t<=0");
      R = row(n); R.middleCols(xr, n) = -I; R.middleCols(tr, n) = -I;
      bi.add(R, zn, "-x-t<=0");
      R = row(m); R.middleCols(xr, n) = A.A; R.middleCols(rr, m) = -Im;
      bi.add(R, y, "Ax-r<=y");
      R = row(m); R.middleCols(xr, n) = -A.A; R.middleCols(rr, m) = -Im;
      bi.add(R, Vector(-y), "-Ax-r<=-y");
      R = row(1); R.block(0, rr, 1, m) = em.transpose();
      bi.add(R, Vector::Constant(1, eps), "e^Tr<=eps");
      R = row(m); R.middleCols(rr, m) = -Im;
      bi.add(R, zm, "-r<=0");
      R = row(n); R.middleCols(tr, n) = -I;
      bi.add(R, zn, "-t<=0");
      R = row(m);
      R.middleCols(v3r, m) = Im;
      R.middleCols(v4r, m) = Im;
      R.col(v5r) = -em;
      bi.add(R, zm, "v3+v4-v5*e<=0");
      R = row(n); R.middleCols(v1r, n) = I; R.middleCols(v2r, n) = I;
      bi.add(R, en, "v1+v2<=e");
      R = row(n); R.middleCols(v1r, n) = -I;
      bi.add(R, zn, "-v1<=0");
      R = row(n); R.middleCols(v2r, n) = -I;
      bi.add(R, zn, "-v2<=0");
      R = row(m); R.middleCols(v3r, m) = -Im;
      bi.add(R, zm, "-v3<=0");
      R = row(m); R.middleCols(v4r, m) = -Im;
      bi.add(R, zm, "-v4<=0");
      R = row(1); R(0, v5r) = -1.0;
      bi.add(R, Vector::Zero(1), "-v5<=0");

      R = row(n);
      R.middleCols(v1r, n) = I;
      R.middleCols(v2r, n) = -I;
      R.middleCols(v3r, m) = A.A.transpose();
      R.middleCols(v4r, m) = -A.A.transpose();
      be.add(R, zn, "A^T(v3-v4)+v1-v2=0");
      R = row(1);
      R.block(0, tr, 1, n) = en.transpose();
      R.block(0, v3r, 1, m) = y.transpose();
      R.block(0, v4r, 1, m) = -y.transpose();
      R(0, v5r) = eps;
      be.add(R, Vector::Zero(1), "e^Tt+y^T(v3-v4)+v5*eps=0");
      break;
    }
    case Kind::Two: {
      if (!P) throw DimMismatch("build_kkt: polytope required for kind two");
      const Matrix MT = P->normals.transpose();  // N x m
      const int N = static_cast<int>(MT.rows());
      const int nc = 4 * n + N;  // (x, t, v1, v2, v3)
      bi.cols = be.cols = nc;
      sys.col_blocks = {"x", "t", "v1", "v2", "v3"};
      auto row = [&](int r) { return zeros(r, nc); };
      Matrix R;
      R = row(n); R.leftCols(n) = I; R.middleCols(n, n) = -I;
      bi.add(R, zn, "x-t<=0");
      R = row(n); R.leftCols(n) = -I; R.middleCols(n, n) = -I;
      bi.add(R, zn, "-x-t<=0");
      R = row(N); R.leftCols(n) = MT * A.A;
      bi.add(R, Vector(MT * y + eps * Vector::Ones(N)), "M^T(Ax-y)<=eps*e");
      R = row(n); R.middleCols(2 * n, n) = I; R.middleCols(3 * n, n) = I;
      bi.add(R, en, "v1+v2<=e");
      R = row(n); R.middleCols(n, n) = -I;
      bi.add(R, zn, "-t<=0");
      R = row(n); R.middleCols(2 * n, n) = -I;
      bi.add(R, zn, "-v1<=0");
      R = row(n); R.middleCols(3 * n, n) = -I;
      bi.add(R, zn, "-v2<=0");
      R = row(N); R.rightCols(N) = -Matrix::Identity(N, N);
      bi.add(R, Vector::Zero(N), "-v3<=0");

      R = row(n);
      R.middleCols(2 * n, n) = I;
      R.middleCols(3 * n, n) = -I;
      R.rightCols(N) = A.A.transpose() * P->normals;
      be.add(R, zn, "A^T*M*v3+v1-v2=0");
      R = row(1);
      R.block(0, n, 1, n) = en.transpose();
      R.block(0, 4 * n, 1, N) =
          (eps * Vector::Ones(N) + MT * y).transpose();
      be.add(R, Vector::Zero(1), "e^Tt+(eps*e+M^Ty)^Tv3=0");
      break;
    }
  }
  bi.stack(sys.M_ineq, sys.b_ineq, sys.row_blocks_ineq);
  be.stack(sys.M_eq, sys.b_eq, sys.row_blocks_eq);
  return sys;
}

namespace {

// g(b, d) = min ||z||_inf s.t. M'z <= b, M''z = d; NaN when infeasible.
double inner_min_linf(const Matrix& Mi, const Matrix& Me, const Vector& b,
                      const Vector& d) {
  const int nz = static_cast<int>(Mi.cols() > 0 ? Mi.cols() : Me.cols());
  lp::LpProblem p;
  p.c = Vector::Zero(nz + 1);
  p.c(nz) = 1.0;
  const int mi = static_cast<int>(Mi.rows());
  p.G = Matrix::Zero(mi + 2 * nz, nz + 1);
  p.h = Vector::Zero(mi + 2 * nz);
  if (mi > 0) {
    p.G.topLeftCorner(mi, nz) = Mi;
    p.h.head(mi) = b;
  }
  for (int i = 0; i < nz; ++i) {
    p.G(mi + 2 * i, i) = 1.0;
    p.G(mi + 2 * i, nz) = -1.0;
    p.G(mi + 2 * i + 1, i) = -1.0;
    p.G(mi + 2 * i + 1, nz) = -1.0;
  }
  p.E.resize(Me.rows(), nz + 1);
  if (Me.rows() > 0) p.E.leftCols(nz) = Me;
  if (Me.rows() > 0) p.E.col(nz).setZero();
  p.f = d;
  const auto sol = lp::solve(p);
  if (sol.status != lp::LpStatus::Optimal) {
    return std::numeric_limits<double>::quiet_NaN();
  }
  return sol.value;
}

}  // namespace

RobinsonEstimate robinson_estimate(const Matrix& M_ineq, const Matrix& M_eq,
                                   int samples, std::uint64_t seed) {
  if (samples < 1) throw DimMismatch("robinson_estimate: samples >= 1");
  const int ri = static_cast<int>(M_ineq.rows());
  const int re = static_cast<int>(M_eq.rows());
  const int r = ri + re;
  RobinsonEstimate est;
  est.samples = samples;
  est.seed = seed;

  const auto eval = [&](const Vector& bd) {
    return inner_min_linf(M_ineq, M_eq, bd.head(ri), bd.tail(re));
  };

  if (r <= 2) {
    // Tiny path: the value function is convex on the unit ball, so the max
    // sits on the sphere; a dense angular scan is exact to grid resolution
    // (and exact, period, for r == 1).
    est.semantics = RobinsonEstimate::Semantics::ExactTiny;
    double best = 0.0;
    bool any = false;
    if (r == 1) {
      for (double s : {-1.0, 1.0}) {
        const double g = eval(Vector::Constant(1, s));
        if (!std::isnan(g)) {
          best = std::max(best, g);
          any = true;
        }
      }
    } else {
      const int grid = 1 << 14;
      for (int i = 0; i < grid; ++i) {
        const double a = 2.0 * M_PI * i / grid;
        Vector bd(2);
        bd << std::cos(a), std::sin(a);
        const double g = eval(bd);
        if (!std::isnan(g)) {
          best = std::max(best, g);
          any = true;
        }
      }
    }
    est.value = best;
    est.no_feasible_samples = !any;
    return est;
  }

  est.semantics = RobinsonEstimate::Semantics::MonteCarloLowerBound;
  ensemble::Rng rng(seed);
  double best = 0.0;
  bool any = false;
  for (int s = 0; s < samples; ++s) {
    Vector bd(r);
    for (int i = 0; i < r; ++i) bd(i) = rng.normal();
    bd /= bd.norm();
    const double g = eval(bd);
    if (!std::isnan(g)) {
      best = std::max(best, g);
      any = true;
    }
  }
  est.value = best;
  est.no_feasible_samples = !any;
  return est;
}

HoffmanEmpirical hoffman_empirical(const lp::Polyhedron& F, int points,
                                   std::uint64_t seed) {
  const auto feas = lp::check_feasibility(F);
  if (!feas.feasible) {
    throw geom::EmptyPolyhedron("hoffman_empirical: empty polyhedron");
  }
  const auto residual = [&](const Vector& z) {
    double rsum = 0.0;
    if (F.num_ineq() > 0) rsum += (F.G * z - F.h).cwiseMax(0.0).lpNorm<1>();
    if (F.num_eq() > 0) rsum += (F.E * z - F.f).cwiseAbs().lpNorm<1>();
    return rsum;
  };
  ensemble::Rng rng(seed);
  const double scales[] = {0.1, 1.0, 10.0};
  HoffmanEmpirical out;
  for (int p = 0; p < points; ++p) {
    Vector z = feas.witness;
    const double scale = scales[p % 3];
    for (int i = 0; i < F.dim; ++i) z(i) += scale * rng.normal();
    const double res = residual(z);
    if (res <= 1e-12) continue;
    const double dist = geom::project(z, F).dist;
    const double ratio = dist / res;
    if (ratio > out.gamma_emp) {
      out.gamma_emp = ratio;
      out.worst_point = z;
    }
  }
  return out;
}

BoundBreakdown bound_rhs(Theorem theorem, const linops::DesignMatrix& A,
                         const Vector& y, double eps, const Vector& x,
                         double gamma, const Extras& extras) {
  const Vector res = A.A * x - y;
  const double sigma = linops::best_k_term_error(x, extras.k);
  BoundBreakdown bb;
  switch (theorem) {
    case Theorem::T32: {
      bb.terms = {{"2*sigma_k", 2.0 * sigma},
                  {"(1+c)*||Ax-y||_1", (1.0 + A.c) * res.lpNorm<1>()}};
      break;
    }
    case Theorem::T42: {
      const int m = static_cast<int>(y.size());
      bb.terms = {
          {"||(Ax-y-eps*e)+||_1",
           (res - eps * Vector::Ones(m)).cwiseMax(0.0).lpNorm<1>()},
          {"||(Ax-y+eps*e)-||_1",
           (-(res + eps * Vector::Ones(m))).cwiseMax(0.0).lpNorm<1>()},
          {"2*sigma_k", 2.0 * sigma},
          {"c1*eps", A.c1 * eps},
          {"c1*||Ax-y||_inf", A.c1 * res.lpNorm<Eigen::Infinity>()}};
      break;
    }
    case Theorem::T44: {
      bb.terms = {{"2*sigma_k", 2.0 * sigma},
                  {"(||Ax-y||_1-eps)+", std::max(0.0, res.lpNorm<1>() - eps)},
                  {"c*(eps+||y-Ax||_1)", A.c * (eps + res.lpNorm<1>())}};
      break;
    }
    case Theorem::T56: {
      if (extras.N_hat <= 0) {
        throw MissingExtras("bound_rhs: theorem 5.6 needs N_hat");
      }
      bb.terms = {
          {"2*N_hat*(||Ax-y||_2-eps)+",
           2.0 * extras.N_hat * std::max(0.0, res.norm() - eps)},
          {"4*sigma_k", 4.0 * sigma},
          {"2*c1*eps", 2.0 * A.c1 * eps},
          {"2*c2*||Ax-y||_2", 2.0 * A.c2 * res.norm()}};
      break;
    }
  }
  for (const auto& t : bb.terms) bb.factor += t.second;
  bb.total = gamma * bb.factor;
  if (theorem == Theorem::T56) {
    bb.terms.emplace_back("2*eps'", 2.0 * extras.eps_prime);
    bb.total += 2.0 * extras.eps_prime;
  }
  return bb;
}

namespace {

// Support of the k largest |x_i|, ties by lowest index.
std::vector<int> top_k_support(const Vector& x, int k) {
  const int n = static_cast<int>(x.size());
  std::vector<int> idx(n);
  std::iota(idx.begin(), idx.end(), 0);
  std::stable_sort(idx.begin(), idx.end(), [&](int a, int b) {
    return std::abs(x(a)) > std::abs(x(b));
  });
  idx.resize(std::min(k, n));
  std::sort(idx.begin(), idx.end());
  return idx;
}

}  // namespace

DualTuple dual_construction(Theorem theorem, const linops::DesignMatrix& A,
                            const Vector& x, int k,
                            const geom::SpherePolytope* P) {
  const int n = static_cast<int>(A.A.cols());
  const int m = static_cast<int>(A.A.rows());
  certify::SupportPair pair;
  pair.n = n;
  pair.k = k;
  for (int i : top_k_support(x, k)) {
    if (x(i) > 0) {
      pair.S1.push_back(i);
    } else if (x(i) < 0) {
      pair.S2.push_back(i);
    }
  }
  const auto cert = certify::dual_certificate(A, pair);  // throws NoCertificate
  const Vector& eta = cert.eta;
  const Vector& g = cert.w;
  std::vector<char> in_S(n, 0);
  for (int i : pair.S1) in_S[i] = 1;
  for (int i : pair.S2) in_S[i] = 2;

  DualTuple d;
  d.t = x.cwiseAbs();
  Vector a(n), b(n);
  for (int i = 0; i < n; ++i) {
    if (in_S[i] == 1) {
      a(i) = 1.0;
      b(i) = 0.0;
    } else if (in_S[i] == 2) {
      a(i) = 0.0;
      b(i) = 1.0;
    } else if (theorem == Theorem::T42) {
      a(i) = (1.0 + eta(i)) / 2.0;  // off-support split without |eta|
      b(i) = (1.0 - eta(i)) / 2.0;
    } else {
      a(i) = (std::abs(eta(i)) + eta(i)) / 2.0;
      b(i) = (std::abs(eta(i)) - eta(i)) / 2.0;
    }
  }
  switch (theorem) {
    case Theorem::T32:
      d.u = a;
      d.v = b;
      d.w = g;
      break;
    case Theorem::T42:
      d.u = a;
      d.v = b;
      d.w = g.cwiseMax(0.0);        // (g)+
      d.w2 = (-g).cwiseMax(0.0);    // -(g)-
      break;
    case Theorem::T44:
      d.v1 = a;
      d.v2 = b;
      d.v3 = (-g).cwiseMax(0.0);
      d.v4 = g.cwiseMax(0.0);
      d.v5 = g.lpNorm<Eigen::Infinity>();
      break;
    case Theorem::T56: {
      if (!P || !P->augmented) {
        throw MissingExtras(
            "dual_construction: theorem 5.6 needs an axis-augmented polytope");
      }
      d.v1 = a;
      d.v2 = b;
      d.v3 = Vector::Zero(P->num_normals());
      for (int i = 0; i < m; ++i) {
        const double target = g(i) >= 0 ? -1.0 : 1.0;  // column -+rho_i
        int col = -1;
        for (int j = 0; j < P->num_normals(); ++j) {
          if ((P->normals.col(j) - target * Vector::Unit(m, i))
                  .cwiseAbs()
                  .maxCoeff() <= 1e-12) {
            col = j;
            break;
          }
        }
        if (col < 0) {
          throw MissingExtras("dual_construction: axis column missing");
        }
        d.v3(col) += std::abs(g(i));
      }
      break;
    }
  }
  return d;
}

std::vector<StabilityReport> stability_experiment(Theorem theorem,
                                                  const linops::DesignMatrix& A,
                                                  int k,
                                                  const StabilityConfig& cfg) {
  const int n = static_cast<int>(A.A.cols());
  const Kind kind = theorem == Theorem::T32   ? Kind::Eq
                    : theorem == Theorem::T42 ? Kind::Inf
                    : theorem == Theorem::T44 ? Kind::One
                                              : Kind::Two;
  const double eps = theorem == Theorem::T32 ? 0.0 : cfg.epsilon;
  std::vector<StabilityReport> out;
  for (int trial = 0; trial < cfg.trials; ++trial) {
    ensemble::Rng rng(cfg.seed + 977 * trial);
    const Vector x0 = ensemble::sparse_vector(n, k, rng);
    const Vector y = A.A * x0;
    Vector x = x0;
    if (cfg.perturbation > 0) {
      Vector noise(n);
      for (int i = 0; i < n; ++i) noise(i) = rng.normal();
      x += cfg.perturbation * noise / noise.norm();
    }
    StabilityReport rep;
    rep.trial = trial;
    rep.theorem = theorem;
    rep.sigma_k = linops::best_k_term_error(x, k);
    rep.epsilon = eps;
    Extras ex;
    ex.k = k;
    if (theorem == Theorem::T56) {
      const auto sol = solvers::l2con_solve(A, y, eps);
      ex.N_hat = sol.relaxation->polytope.num_normals();
      // eps' proxy: the measured relaxation sandwich gap.
      ex.eps_prime = std::abs(sol.relaxation->upper - sol.relaxation->lower);
    }
    rep.measured_distance = solvers::solution_set_distance(x, kind, A, y, eps);
    rep.bound_factor = bound_rhs(theorem, A, y, eps, x, 1.0, ex).factor;
    rep.empirical_gamma =
        rep.bound_factor > 0 ? rep.measured_distance / rep.bound_factor : 0.0;
    const Vector res = A.A * x - y;
    switch (kind) {
      case Kind::Eq:
        rep.feasible = res.cwiseAbs().maxCoeff() <= 1e-9;
        break;
      case Kind::Inf:
        rep.feasible = res.lpNorm<Eigen::Infinity>() <= eps + 1e-9;
        break;
      case Kind::One:
        rep.feasible = res.lpNorm<1>() <= eps + 1e-9;
        break;
      case Kind::Two:
        rep.feasible = res.norm() <= eps + 1e-9;
        break;
    }
    out.push_back(rep);
  }
  return out;
}

}  // namespace hoffman
}  // namespace l1stab
