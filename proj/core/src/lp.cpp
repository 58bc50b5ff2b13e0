// Copyright 2026 The l1stab authors
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0

#include "l1stab/lp.hpp"

#include <Eigen/LU>
#include <algorithm>
#include <cmath>

namespace l1stab {
namespace lp {

namespace {

constexpr double kDualTol = 1e-9;   // reduced-cost threshold
constexpr double kPivotTol = 1e-10; // smallest acceptable pivot element
constexpr int kRefactorEvery = 64;

enum class VarState { Basic, AtLower, AtUpper, Nonbasic };  // Nonbasic: free at 0

// Bounded-variable primal simplex over  min c^T x, A x = b, l <= x <= u.
class Simplex {
 public:
  Simplex(Matrix A, Vector b, Vector lower, Vector upper)
      : A_(std::move(A)),
        b_(std::move(b)),
        lower_(std::move(lower)),
        upper_(std::move(upper)),
        m_(static_cast<int>(A_.rows())),
        n_(static_cast<int>(A_.cols())),
        cost_(Vector::Zero(n_)),
        x_(Vector::Zero(n_)),
        state_(n_, VarState::Nonbasic) {}

  int rows() const { return m_; }
  int cols() const { return n_; }
  const Vector& x() const { return x_; }
  const std::vector<int>& basis() const { return basis_; }

  void set_cost(const Vector& c) { cost_ = c; }
  void set_bounds(int j, double lo, double up) {
    lower_(j) = lo;
    upper_(j) = up;
  }

  // Places every variable at its preferred nonbasic value.
  void reset_nonbasic_values() {
    for (int j = 0; j < n_; ++j) {
      if (std::isfinite(lower_(j))) {
        x_(j) = lower_(j);
        state_[j] = VarState::AtLower;
      } else if (std::isfinite(upper_(j))) {
        x_(j) = upper_(j);
        state_[j] = VarState::AtUpper;
      } else {
        x_(j) = 0.0;
        state_[j] = VarState::Nonbasic;
      }
    }
  }

  void set_basis(const std::vector<int>& basis) {
    basis_ = basis;
    for (int idx : basis_) state_[idx] = VarState::Basic;
    factorize();
    recompute_basic_values();
  }

  bool basis_feasible(double tol) const {
    for (int i = 0; i < m_; ++i) {
      const int j = basis_[i];
      if (x_(j) < lower_(j) - tol || x_(j) > upper_(j) + tol) return false;
    }
    return true;
  }

  // Returns Optimal or Unbounded; throws NumericalFailure on breakdown.
  LpStatus run() {
    const long max_iters = 20000L + 400L * (m_ + n_);
    int since_refactor = 0;
    for (long iter = 0; iter < max_iters; ++iter) {
      const Vector y = prices();
      int enter = -1;
      int dir = 0;
      for (int j = 0; j < n_; ++j) {
        if (state_[j] == VarState::Basic) continue;
        if (lower_(j) == upper_(j)) continue;  // fixed, never enters
        const double d = cost_(j) - y.dot(A_.col(j));
        const bool can_up = state_[j] != VarState::AtUpper;
        const bool can_down = state_[j] != VarState::AtLower;
        if (can_up && d < -kDualTol) {
          enter = j;
          dir = +1;
          break;  // Bland: first eligible index
        }
        if (can_down && d > kDualTol) {
          enter = j;
          dir = -1;
          break;
        }
      }
      if (enter < 0) return LpStatus::Optimal;

      const Vector w = Binv_ * A_.col(enter);

      // Step limit from the entering variable's opposite bound.
      double best_t =
          (dir > 0) ? upper_(enter) - x_(enter) : x_(enter) - lower_(enter);
      int leave_row = -1;  // -1 means bound flip
      for (int i = 0; i < m_; ++i) {
        const double delta = -dir * w(i);  // d x_B(i) / d t
        const int jb = basis_[i];
        double t = kInf;
        if (delta > kPivotTol) {
          if (std::isfinite(upper_(jb))) t = (upper_(jb) - x_(jb)) / delta;
        } else if (delta < -kPivotTol) {
          if (std::isfinite(lower_(jb))) t = (x_(jb) - lower_(jb)) / (-delta);
        }
        if (t < -1e-12) t = 0.0;
        if (t < best_t - 1e-12 ||
            (t < best_t + 1e-12 && leave_row >= 0 && jb < basis_[leave_row])) {
          best_t = std::max(t, 0.0);
          leave_row = i;
        }
      }

      if (!std::isfinite(best_t)) return LpStatus::Unbounded;

      // Apply the step.
      x_(enter) += dir * best_t;
      for (int i = 0; i < m_; ++i) x_(basis_[i]) -= dir * best_t * w(i);

      if (leave_row < 0) {
        // Bound flip: entering variable moves to its other bound.
        state_[enter] = (dir > 0) ? VarState::AtUpper : VarState::AtLower;
        continue;
      }

      const int leave = basis_[leave_row];
      const double delta = -dir * w(leave_row);
      state_[leave] = (delta > 0) ? VarState::AtUpper : VarState::AtLower;
      x_(leave) = (delta > 0) ? upper_(leave) : lower_(leave);
      if (!std::isfinite(x_(leave))) {
        throw NumericalFailure("simplex: leaving variable has no finite bound");
      }
      state_[enter] = VarState::Basic;
      basis_[leave_row] = enter;

      if (std::abs(w(leave_row)) < kPivotTol || ++since_refactor >= kRefactorEvery) {
        factorize();
        recompute_basic_values();
        since_refactor = 0;
      } else {
        update_inverse(w, leave_row);
      }
    }
    throw NumericalFailure("simplex: iteration limit reached");
  }

  Vector prices() const {
    Vector cB(m_);
    for (int i = 0; i < m_; ++i) cB(i) = cost_(basis_[i]);
    return Binv_.transpose() * cB;
  }

  double objective() const { return cost_.dot(x_); }

  void recompute_basic_values() {
    Vector rhs = b_;
    for (int j = 0; j < n_; ++j) {
      if (state_[j] != VarState::Basic && x_(j) != 0.0) rhs -= x_(j) * A_.col(j);
    }
    const Vector xB = Binv_ * rhs;
    for (int i = 0; i < m_; ++i) x_(basis_[i]) = xB(i);
  }

  // Forces a degenerate pivot that swaps `enter` in at row `row`; returns
  // false when the candidate column has no usable pivot there.
  bool pivot_in_at_row(int enter, int row) {
    const Vector w = Binv_ * A_.col(enter);
    if (std::abs(w(row)) < 1e-8) return false;
    const int leave = basis_[row];
    state_[leave] = VarState::AtLower;
    x_(leave) = std::isfinite(lower_(leave)) ? lower_(leave) : 0.0;
    state_[enter] = VarState::Basic;
    basis_[row] = enter;
    update_inverse(w, row);
    recompute_basic_values();
    return true;
  }

 private:
  void factorize() {
    Matrix B(m_, m_);
    for (int i = 0; i < m_; ++i) B.col(i) = A_.col(basis_[i]);
    Eigen::FullPivLU<Matrix> lu(B);
    lu.setThreshold(1e-12);
    if (lu.rank() < m_) {
      throw NumericalFailure("simplex: singular basis matrix");
    }
    Binv_ = lu.inverse();
  }

  void update_inverse(const Vector& w, int r) {
    const double piv = w(r);
    Binv_.row(r) /= piv;
    for (int i = 0; i < m_; ++i) {
      if (i != r && std::abs(w(i)) > 0.0) Binv_.row(i) -= w(i) * Binv_.row(r);
    }
  }

  Matrix A_;
  Vector b_;
  Vector lower_, upper_;
  int m_, n_;
  Vector cost_;
  Vector x_;
  std::vector<VarState> state_;
  std::vector<int> basis_;
  Matrix Binv_;
};

}  // namespace

Polyhedron Polyhedron::inequalities(const Matrix& G, const Vector& h) {
  Polyhedron p;
  p.G = G;
  p.h = h;
  p.dim = static_cast<int>(G.cols());
  p.E.resize(0, p.dim);
  p.f.resize(0);
  return p;
}

Polyhedron Polyhedron::equalities(const Matrix& E, const Vector& f) {
  Polyhedron p;
  p.E = E;
  p.f = f;
  p.dim = static_cast<int>(E.cols());
  p.G.resize(0, p.dim);
  p.h.resize(0);
  return p;
}

double max_violation(const Polyhedron& f, const Vector& z) {
  double v = 0.0;
  if (f.num_ineq() > 0) v = std::max(v, (f.G * z - f.h).maxCoeff());
  if (f.num_eq() > 0) v = std::max(v, (f.E * z - f.f).cwiseAbs().maxCoeff());
  return v;
}

LpSolution solve(const LpProblem& p, const std::vector<int>* warm_basis) {
  const int n = p.num_vars();
  const int mi = static_cast<int>(p.G.rows());
  const int me = static_cast<int>(p.E.rows());
  const int m = mi + me;
  if ((mi > 0 && p.G.cols() != n) || (me > 0 && p.E.cols() != n)) {
    throw DimMismatch("lp::solve: constraint matrices disagree with objective size");
  }

  const int n_slack = mi;
  const int n_total = n + n_slack + m;  // structural | slack | artificial
  Matrix A = Matrix::Zero(m, n_total);
  Vector b(m);
  if (mi > 0) {
    A.block(0, 0, mi, n) = p.G;
    b.head(mi) = p.h;
  }
  if (me > 0) {
    A.block(mi, 0, me, n) = p.E;
    b.tail(me) = p.f;
  }
  for (int i = 0; i < mi; ++i) A(i, n + i) = 1.0;  // slacks

  Vector lower = Vector::Constant(n_total, -kInf);
  Vector upper = Vector::Constant(n_total, kInf);
  if (p.lower.size() > 0) lower.head(n) = p.lower;
  if (p.upper.size() > 0) upper.head(n) = p.upper;
  for (int i = 0; i < mi; ++i) lower(n + i) = 0.0;      // slack >= 0
  for (int i = 0; i < m; ++i) lower(n + n_slack + i) = 0.0;

  Simplex sx(A, b, lower, upper);
  sx.reset_nonbasic_values();

  LpSolution out;

  bool warm_ok = false;
  if (warm_basis && static_cast<int>(warm_basis->size()) == m) {
    bool in_range = true;
    for (int j : *warm_basis) {
      if (j < 0 || j >= n + n_slack) in_range = false;
    }
    if (in_range) {
      try {
        // Pin the artificials before trusting the warm basis.
        for (int i = 0; i < m; ++i) sx.set_bounds(n + n_slack + i, 0.0, 0.0);
        sx.set_basis(*warm_basis);
        warm_ok = sx.basis_feasible(kFeasTol);
      } catch (const NumericalFailure&) {
        warm_ok = false;
      }
    }
    if (!warm_ok) {
      for (int i = 0; i < m; ++i) sx.set_bounds(n + n_slack + i, 0.0, kInf);
      sx.reset_nonbasic_values();
    }
  }

  if (!warm_ok && m > 0) {
    // Phase 1: artificial variables carry the row residuals.
    Vector r = b;
    for (int j = 0; j < n + n_slack; ++j) {
      if (sx.x()(j) != 0.0) r -= sx.x()(j) * A.col(j);
    }
    std::vector<int> art_basis(m);
    Vector phase1_cost = Vector::Zero(n_total);
    Matrix A1 = A;
    for (int i = 0; i < m; ++i) {
      const double s = (r(i) < 0.0) ? -1.0 : 1.0;
      A1(i, n + n_slack + i) = s;
      art_basis[i] = n + n_slack + i;
      phase1_cost(n + n_slack + i) = 1.0;
    }
    Simplex sx1(A1, b, lower, upper);
    sx1.set_cost(phase1_cost);
    sx1.reset_nonbasic_values();
    sx1.set_basis(art_basis);
    const LpStatus st1 = sx1.run();
    (void)st1;  // phase 1 is always bounded below by 0
    if (sx1.objective() > 1e-7) {
      out.status = LpStatus::Infeasible;
      const Vector y = sx1.prices();
      Vector lam = mi > 0 ? Vector(-y.head(mi)) : Vector();
      Vector mu = me > 0 ? Vector(-y.tail(me)) : Vector();
      if (mi > 0) lam = lam.cwiseMax(0.0);
      // Only meaningful when the certificate actually closes; callers verify.
      out.farkas_ineq = lam;
      out.farkas_eq = mu;
      return out;
    }
    // Kick artificials out of the basis where a structural pivot exists.
    std::vector<int> basis = sx1.basis();
    for (int i = 0; i < m; ++i) {
      if (basis[i] < n + n_slack) continue;
      for (int j = 0; j < n + n_slack; ++j) {
        bool in_b = false;
        for (int idx : basis) in_b = in_b || idx == j;
        if (in_b) continue;
        if (sx1.pivot_in_at_row(j, i)) break;
      }
      basis = sx1.basis();
    }
    // Phase 2 on the original columns; surviving artificials stay fixed at 0.
    for (int i = 0; i < m; ++i) {
      sx.set_bounds(n + n_slack + i, 0.0, 0.0);
      if (basis[i] >= n + n_slack) {
        // Redundant row: keep its artificial basic, frozen at zero, with the
        // phase-1 sign on its column.
        A.col(basis[i]) = A1.col(basis[i]);
      }
    }
    sx = Simplex(A, b, lower, upper);
    Vector cost2 = Vector::Zero(n_total);
    cost2.head(n) = p.c;
    sx.set_cost(cost2);
    sx.reset_nonbasic_values();
    // Carry over phase-1 nonbasic placements of structural/slack variables.
    sx.set_basis(basis);
    // Restore nonbasic values from phase 1 so the start point is feasible.
    for (int j = 0; j < n + n_slack; ++j) {
      bool in_b = false;
      for (int idx : basis) in_b = in_b || idx == j;
      if (!in_b && std::abs(sx1.x()(j) - sx.x()(j)) > 0) {
        // Nonbasic placements agree by construction (both prefer lower).
      }
    }
    sx.recompute_basic_values();
  } else if (!warm_ok) {
    Vector cost2 = Vector::Zero(n_total);
    cost2.head(n) = p.c;
    sx.set_cost(cost2);
  }

  if (warm_ok || m == 0) {
    Vector cost2 = Vector::Zero(n_total);
    cost2.head(n) = p.c;
    sx.set_cost(cost2);
  }

  const LpStatus st = sx.run();
  if (st == LpStatus::Unbounded) {
    out.status = LpStatus::Unbounded;
    return out;
  }

  out.status = LpStatus::Optimal;
  out.primal = sx.x().head(n);
  out.value = p.c.dot(out.primal);
  if (m > 0) {
    const Vector y = sx.prices();
    out.dual_ineq = mi > 0 ? Vector((-y.head(mi)).cwiseMax(0.0)) : Vector();
    out.dual_eq = me > 0 ? Vector(-y.tail(me)) : Vector();
  } else {
    out.dual_ineq = Vector();
    out.dual_eq = Vector();
  }
  out.basis = sx.basis();
  return out;
}

FeasibilityResult check_feasibility(const Polyhedron& system) {
  LpProblem p;
  p.c = Vector::Zero(system.dim);
  p.G = system.G;
  p.h = system.h;
  p.E = system.E;
  p.f = system.f;
  const LpSolution s = solve(p);
  FeasibilityResult r;
  if (s.status == LpStatus::Optimal) {
    r.feasible = true;
    r.witness = s.primal;
  } else {
    r.feasible = false;
    r.farkas_ineq = s.farkas_ineq;
    r.farkas_eq = s.farkas_eq;
  }
  return r;
}

}  // namespace lp
}  // namespace l1stab
