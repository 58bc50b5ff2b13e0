// Copyright 2026 The l1stab authors
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0

#include <cmath>
#include <random>

#include "doctest.h"
#include "l1stab/lp.hpp"

using namespace l1stab;
using lp::LpProblem;
using lp::LpSolution;
using lp::LpStatus;

namespace {

Matrix mat(std::initializer_list<std::initializer_list<double>> rows) {
  const int m = static_cast<int>(rows.size());
  const int n = static_cast<int>(rows.begin()->size());
  Matrix M(m, n);
  int i = 0;
  for (const auto& r : rows) {
    int j = 0;
    for (double v : r) M(i, j++) = v;
    ++i;
  }
  return M;
}

Vector vec(std::initializer_list<double> vals) {
  Vector v(static_cast<Eigen::Index>(vals.size()));
  int i = 0;
  for (double x : vals) v(i++) = x;
  return v;
}

double dual_objective(const LpProblem& p, const LpSolution& s) {
  // min c^T z, G z <= h, E z = f (free vars): dual obj = -h^T lam - f^T mu
  // with G^T lam + E^T mu + c = 0, lam >= 0.
  double obj = 0.0;
  if (s.dual_ineq.size() > 0) obj -= p.h.dot(s.dual_ineq);
  if (s.dual_eq.size() > 0) obj -= p.f.dot(s.dual_eq);
  return obj;
}

void check_optimal(const LpProblem& p, const LpSolution& s) {
  REQUIRE(s.status == LpStatus::Optimal);
  if (p.G.rows() > 0) {
    CHECK((p.G * s.primal - p.h).maxCoeff() <= lp::kFeasTol);
    CHECK(s.dual_ineq.minCoeff() >= -lp::kFeasTol);
    for (int i = 0; i < p.G.rows(); ++i) {
      CHECK(std::abs(s.dual_ineq(i) * (p.G.row(i) * s.primal - p.h(i))) <=
            lp::kCsTol);
    }
  }
  if (p.E.rows() > 0) {
    CHECK((p.E * s.primal - p.f).cwiseAbs().maxCoeff() <= lp::kFeasTol);
  }
  if (p.lower.size() == 0 && p.upper.size() == 0) {
    // Stationarity and strong duality only stated here for free variables.
    Vector g = p.c;
    if (p.G.rows() > 0) g += p.G.transpose() * s.dual_ineq;
    if (p.E.rows() > 0) g += p.E.transpose() * s.dual_eq;
    CHECK(g.cwiseAbs().maxCoeff() <= 1e-7);
    CHECK(std::abs(s.value - dual_objective(p, s)) <=
          lp::kGapTol * (1.0 + std::abs(s.value)));
  }
}

}  // namespace

TEST_CASE("min x subject to x >= 1") {
  LpProblem p;
  p.c = vec({1});
  p.G = mat({{-1}});
  p.h = vec({-1});
  p.E.resize(0, 1);
  p.f.resize(0);
  const auto s = lp::solve(p);
  check_optimal(p, s);
  CHECK(s.value == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("infeasible pair of halflines") {
  LpProblem p;
  p.c = vec({0});
  p.G = mat({{1}, {-1}});
  p.h = vec({-1, -1});
  p.E.resize(0, 1);
  p.f.resize(0);
  const auto s = lp::solve(p);
  CHECK(s.status == LpStatus::Infeasible);
}

TEST_CASE("unbounded below") {
  LpProblem p;
  p.c = vec({-1});
  p.G = mat({{-1}});
  p.h = vec({0});
  p.E.resize(0, 1);
  p.f.resize(0);
  const auto s = lp::solve(p);
  CHECK(s.status == LpStatus::Unbounded);
}

TEST_CASE("equality-constrained LP with duals") {
  // min x1 + 2 x2 s.t. x1 + x2 = 2, x1 - x2 <= 0  ->  x = (1,1), value 3.
  LpProblem p;
  p.c = vec({1, 2});
  p.G = mat({{1, -1}});
  p.h = vec({0});
  p.E = mat({{1, 1}});
  p.f = vec({2});
  const auto s = lp::solve(p);
  check_optimal(p, s);
  CHECK(s.value == doctest::Approx(3.0).epsilon(1e-12));
  CHECK(s.primal(0) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(s.primal(1) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("variable bounds") {
  // min -x1 - x2, 0 <= x <= (1,2), x1 + x2 <= 2.5 -> value -2.5.
  LpProblem p;
  p.c = vec({-1, -1});
  p.G = mat({{1, 1}});
  p.h = vec({2.5});
  p.E.resize(0, 2);
  p.f.resize(0);
  p.lower = vec({0, 0});
  p.upper = vec({1, 2});
  const auto s = lp::solve(p);
  REQUIRE(s.status == LpStatus::Optimal);
  CHECK(s.value == doctest::Approx(-2.5).epsilon(1e-12));
}

TEST_CASE("warm start round trip") {
  LpProblem p;
  p.c = vec({1, 2, -1});
  p.G = mat({{1, 1, 1}, {-1, 0, 2}, {0, -1, 1}});
  p.h = vec({4, 1, 2});
  p.E = mat({{1, -1, 0}});
  p.f = vec({0.5});
  p.lower = vec({-5, -5, -5});
  p.upper = vec({5, 5, 5});
  const auto s1 = lp::solve(p);
  REQUIRE(s1.status == LpStatus::Optimal);
  const auto s2 = lp::solve(p, &s1.basis);
  REQUIRE(s2.status == LpStatus::Optimal);
  CHECK(std::abs(s1.value - s2.value) <= 1e-12);
}

TEST_CASE("determinism") {
  LpProblem p;
  p.c = vec({1, -1, 2, 0.5});
  p.G = mat({{1, 1, 0, 0}, {0, 1, 1, 0}, {0, 0, 1, 1}, {-1, 0, 0, 1}});
  p.h = vec({1, 2, 3, 4});
  p.E = mat({{1, 1, 1, 1}});
  p.f = vec({1});
  p.lower = vec({-10, -10, -10, -10});
  p.upper = vec({10, 10, 10, 10});
  const auto a = lp::solve(p);
  const auto b = lp::solve(p);
  REQUIRE(a.status == LpStatus::Optimal);
  CHECK(a.value == b.value);
  CHECK((a.primal - b.primal).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("random LPs: duality and complementary slackness") {
  std::mt19937_64 gen(3);
  std::normal_distribution<double> nd;
  int optimal_seen = 0;
  for (int rep = 0; rep < 40; ++rep) {
    const int n = 3 + static_cast<int>(gen() % 4);
    const int mi = 2 + static_cast<int>(gen() % 4);
    const int me = static_cast<int>(gen() % 2);
    LpProblem p;
    p.c = Vector::NullaryExpr(n, [&](Eigen::Index) { return nd(gen); });
    p.G = Matrix::NullaryExpr(mi, n, [&](Eigen::Index, Eigen::Index) { return nd(gen); });
    // Make feasibility likely: h = G z0 + positive slack for a random z0.
    const Vector z0 = Vector::NullaryExpr(n, [&](Eigen::Index) { return nd(gen); });
    p.h = p.G * z0 + Vector::Constant(mi, 0.5);
    if (me > 0) {
      p.E = Matrix::NullaryExpr(me, n, [&](Eigen::Index, Eigen::Index) { return nd(gen); });
      p.f = p.E * z0;
    } else {
      p.E.resize(0, n);
      p.f.resize(0);
    }
    const auto s = lp::solve(p);
    REQUIRE(s.status != LpStatus::Infeasible);  // z0 is feasible
    if (s.status == LpStatus::Optimal) {
      ++optimal_seen;
      check_optimal(p, s);
      CHECK(s.value <= p.c.dot(z0) + 1e-9);
    }
  }
  CHECK(optimal_seen > 0);
}

TEST_CASE("check_feasibility basic cases") {
  SUBCASE("interval [0,1]") {
    const auto f = lp::check_feasibility(
        lp::Polyhedron::inequalities(mat({{1}, {-1}}), vec({1, 0})));
    REQUIRE(f.feasible);
    CHECK(f.witness(0) >= -lp::kFeasTol);
    CHECK(f.witness(0) <= 1 + lp::kFeasTol);
  }
  SUBCASE("empty: z <= -1, -z <= -1") {
    const auto sys =
        lp::Polyhedron::inequalities(mat({{1}, {-1}}), vec({-1, -1}));
    const auto f = lp::check_feasibility(sys);
    REQUIRE(!f.feasible);
    REQUIRE(f.farkas_ineq.size() == 2);
    // Certificate: lambda >= 0, G^T lambda = 0, h^T lambda < 0.
    CHECK(f.farkas_ineq.minCoeff() >= -1e-12);
    CHECK(std::abs((sys.G.transpose() * f.farkas_ineq).value()) <= 1e-9);
    CHECK(sys.h.dot(f.farkas_ineq) < -1e-9);
    // Normalized, this is the hand certificate (1,1).
    const Vector nrm = f.farkas_ineq / f.farkas_ineq.maxCoeff();
    CHECK(nrm(0) == doctest::Approx(1.0));
    CHECK(nrm(1) == doctest::Approx(1.0));
  }
  SUBCASE("hyperplane z1 + z2 = 2") {
    const auto f = lp::check_feasibility(
        lp::Polyhedron::equalities(mat({{1, 1}}), vec({2})));
    REQUIRE(f.feasible);
    CHECK(std::abs(f.witness.sum() - 2.0) <= lp::kFeasTol);
  }
}

TEST_CASE("random infeasible systems produce verifying Farkas certificates") {
  std::mt19937_64 gen(11);
  std::normal_distribution<double> nd;
  int infeasible_seen = 0;
  for (int rep = 0; rep < 60; ++rep) {
    const int n = 2 + static_cast<int>(gen() % 3);
    const int mi = n + 2 + static_cast<int>(gen() % 3);
    Matrix G = Matrix::NullaryExpr(mi, n, [&](Eigen::Index, Eigen::Index) { return nd(gen); });
    Vector h = Vector::NullaryExpr(mi, [&](Eigen::Index) { return nd(gen) - 1.0; });
    const auto sys = lp::Polyhedron::inequalities(G, h);
    const auto f = lp::check_feasibility(sys);
    if (f.feasible) {
      CHECK(lp::max_violation(sys, f.witness) <= lp::kFeasTol);
    } else {
      ++infeasible_seen;
      REQUIRE(f.farkas_ineq.size() == mi);
      CHECK(f.farkas_ineq.minCoeff() >= -1e-10);
      CHECK((G.transpose() * f.farkas_ineq).cwiseAbs().maxCoeff() <= 1e-7);
      CHECK(h.dot(f.farkas_ineq) < -1e-9);
    }
  }
  CHECK(infeasible_seen > 0);
}
