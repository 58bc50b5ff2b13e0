// Copyright 2026 The l1stab authors
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0

#include "l1stab/hoffman.hpp"

#include <doctest.h>

#include <cmath>

#include "l1stab/certify.hpp"
#include "l1stab/ensemble.hpp"

using namespace l1stab;
using hoffman::Theorem;
using linops::DesignMatrix;
using solvers::Kind;

namespace {

DesignMatrix one_one() {
  Matrix A(1, 2);
  A << 1, 1;
  return DesignMatrix::build(A);
}

// A certified weak-RSP matrix for the construction tests.
DesignMatrix certified_3x6(std::uint64_t seed) {
  ensemble::EnsembleSpec spec;
  spec.m = 3;
  spec.n = 6;
  spec.count = 40;
  spec.seed = seed;
  for (const auto& A : ensemble::gen_matrix(spec)) {
    if (certify::certify_weak_rsp(A, 1).holds) return A;
  }
  throw std::runtime_error("no certified matrix in the ensemble");
}

}  // namespace

TEST_CASE("build_kkt shapes for the BP system, A=[1 1]") {
  const auto A = one_one();
  const auto sys =
      hoffman::build_kkt(Kind::Eq, A, Vector::Constant(1, 2.0), 0.0);
  // n=2, m=1: 6 inequality blocks of n rows; equalities m + n + 1.
  CHECK(sys.M_ineq.rows() == 12);
  CHECK(sys.M_eq.rows() == 4);
  CHECK(sys.M_ineq.cols() == 4 * 2 + 1);
  CHECK(sys.row_blocks_ineq.size() == 6);
  CHECK(sys.col_blocks.size() == 5);
}

TEST_CASE("solver outputs are members of their KKT systems") {
  ensemble::EnsembleSpec spec;
  spec.m = 3;
  spec.n = 5;
  spec.count = 3;
  spec.seed = 19;
  ensemble::Rng rng(6);
  for (const auto& A : ensemble::gen_matrix(spec)) {
    Vector y(3);
    for (int i = 0; i < 3; ++i) y(i) = rng.normal();
    {
      const auto sol = solvers::bp_solve(A, y);
      const auto sys = hoffman::build_kkt(Kind::Eq, A, y, 0.0);
      CHECK(sys.residual_l1(sys.pack(sol.x, sol.dual)) <= 1e-7);
    }
    {
      const auto sol = solvers::linf_solve(A, y, 0.5);
      const auto sys = hoffman::build_kkt(Kind::Inf, A, y, 0.5);
      CHECK(sys.residual_l1(sys.pack(sol.x, sol.dual)) <= 1e-7);
    }
    {
      const auto sol = solvers::l1con_solve(A, y, 0.5);
      const auto sys = hoffman::build_kkt(Kind::One, A, y, 0.5);
      CHECK(sys.residual_l1(sys.pack(sol.x, sol.dual)) <= 1e-7);
    }
    {
      const auto sol = solvers::l2con_solve(A, y, 0.5);
      const auto sys = hoffman::build_kkt(Kind::Two, A, y, 0.5,
                                          &sol.relaxation->polytope);
      CHECK(sys.residual_l1(sys.pack(sol.x, sol.dual)) <= 1e-6);
    }
  }
}

TEST_CASE("perturbing y moves only right-hand sides and y^T rows") {
  const auto A = one_one();
  const Vector y = Vector::Constant(1, 2.0);
  const auto s1 = hoffman::build_kkt(Kind::Eq, A, y, 0.0);
  const auto s2 =
      hoffman::build_kkt(Kind::Eq, A, Vector::Constant(1, 2.5), 0.0);
  CHECK((s1.M_ineq - s2.M_ineq).cwiseAbs().maxCoeff() == 0.0);
  CHECK((s1.b_ineq - s2.b_ineq).cwiseAbs().maxCoeff() == 0.0);
  // Only the last equality row (the objective row, containing y^T) moves.
  const Matrix diff = (s1.M_eq - s2.M_eq).cwiseAbs();
  CHECK(diff.topRows(diff.rows() - 1).maxCoeff() == 0.0);
  CHECK(diff.bottomRows(1).maxCoeff() > 0.0);
}

TEST_CASE("robinson calibration: {z<=0} gives 1, {z1+z2=d} gives 1/2") {
  Matrix Mi(1, 1);
  Mi << 1;
  Matrix Me0(0, 1);
  const auto r1 = hoffman::robinson_estimate(Mi, Me0, 1, 1);
  CHECK(r1.semantics == hoffman::RobinsonEstimate::Semantics::ExactTiny);
  CHECK(r1.value == doctest::Approx(1.0).epsilon(1e-9));

  Matrix Mi0(0, 2);
  Matrix Me(1, 2);
  Me << 1, 1;
  const auto r2 = hoffman::robinson_estimate(Mi0, Me, 1, 1);
  CHECK(r2.semantics == hoffman::RobinsonEstimate::Semantics::ExactTiny);
  CHECK(r2.value == doctest::Approx(0.5).epsilon(1e-9));
}

TEST_CASE("robinson monte-carlo path is a running max in samples") {
  Matrix Mi(3, 2);
  Mi << 1, 0, 0, 1, -1, -1;
  Matrix Me(0, 2);
  double prev = 0.0;
  for (int s : {8, 32, 128}) {
    const auto r = hoffman::robinson_estimate(Mi, Me, s, 5);
    CHECK(r.semantics ==
          hoffman::RobinsonEstimate::Semantics::MonteCarloLowerBound);
    CHECK(r.value >= prev - 1e-12);
    prev = r.value;
  }
}

TEST_CASE("hoffman_empirical on the closed-form systems") {
  lp::Polyhedron half;
  half.dim = 1;
  half.G = Matrix::Constant(1, 1, 1.0);
  half.h = Vector::Zero(1);
  const auto h1 = hoffman::hoffman_empirical(half, 60, 3);
  CHECK(h1.gamma_emp == doctest::Approx(1.0).epsilon(1e-6));

  lp::Polyhedron plane;
  plane.dim = 2;
  plane.E.resize(1, 2);
  plane.E << 1, 1;
  plane.f = Vector::Zero(1);
  const auto h2 = hoffman::hoffman_empirical(plane, 60, 3);
  CHECK(h2.gamma_emp ==
        doctest::Approx(std::sqrt(2.0) / 2.0).epsilon(1e-6));
}

TEST_CASE("bound_rhs special cases") {
  const auto A = certified_3x6(41);
  ensemble::Rng rng(9);
  const Vector x = ensemble::sparse_vector(6, 1, rng);
  const Vector y = A.A * x;  // feasible, exactly 1-sparse
  hoffman::Extras ex;
  ex.k = 1;
  const double gamma = 2.0;

  const auto b32 = hoffman::bound_rhs(Theorem::T32, A, y, 0.0, x, gamma, ex);
  CHECK(b32.total ==
        doctest::Approx(2 * gamma * linops::best_k_term_error(x, 1))
            .epsilon(1e-12));

  const double eps = 0.3;
  const auto b42 = hoffman::bound_rhs(Theorem::T42, A, y, eps, x, gamma, ex);
  CHECK(b42.total == doctest::Approx(gamma * A.c1 * eps).epsilon(1e-10));

  const auto b44 = hoffman::bound_rhs(Theorem::T44, A, y, eps, x, gamma, ex);
  CHECK(b44.total == doctest::Approx(gamma * A.c * eps).epsilon(1e-10));

  ex.N_hat = 20;
  ex.eps_prime = 0.01;
  const auto b56 = hoffman::bound_rhs(Theorem::T56, A, y, eps, x, gamma, ex);
  // Residual is zero, so only the 2*c1*eps term and the 2*eps' tail remain.
  CHECK(b56.total ==
        doctest::Approx(2 * gamma * A.c1 * eps + 2 * ex.eps_prime)
            .epsilon(1e-10));

  hoffman::Extras missing;
  missing.k = 1;
  CHECK_THROWS_AS(
      hoffman::bound_rhs(Theorem::T56, A, y, eps, x, gamma, missing),
      hoffman::MissingExtras);
}

TEST_CASE("dual_construction hand example and residual pattern (Eq. feasible)") {
  const auto A = one_one();
  // x = (3,-1) is feasible for y = 2 but not optimal; support pair ({0}, {}).
  Vector x{{3, -1}};
  const Vector y = Vector::Constant(1, 2.0);
  const auto d = hoffman::dual_construction(Theorem::T32, A, x, 1);
  CHECK(d.u(0) == doctest::Approx(1.0).epsilon(1e-8));
  CHECK(d.u(1) == doctest::Approx(1.0).epsilon(1e-8));
  CHECK(d.v.cwiseAbs().maxCoeff() <= 1e-8);
  // Residual stack: nonzero only in the objective-equality row (Ax = y holds).
  const Vector res = solvers::kkt_residual(Kind::Eq, x, d, A.A, y, 0.0);
  // Layout: 3n epigraph/dual rows, m residual rows, n stationarity, 1
  // objective, 3n sign rows (n = 2, m = 1).
  const int obj_row = 3 * 2 + 1 + 2;
  for (int i = 0; i < res.size(); ++i) {
    if (i == obj_row) {
      CHECK(std::abs(res(i)) == doctest::Approx(2.0).epsilon(1e-8));
    } else {
      CHECK(std::abs(res(i)) <= 1e-8);
    }
  }
}

TEST_CASE("dual_construction dual feasibility, all four theorems") {
  const auto A = certified_3x6(43);
  ensemble::Rng rng(12);
  const auto P = geom::augment_with_axes(geom::dudley_polytope(3, 16, 1));
  for (int trial = 0; trial < 5; ++trial) {
    const Vector x = ensemble::sparse_vector(6, 1, rng);
    {
      const auto d = hoffman::dual_construction(Theorem::T32, A, x, 1);
      CHECK(d.u.minCoeff() >= -1e-8);
      CHECK(d.v.minCoeff() >= -1e-8);
      CHECK((d.u + d.v).maxCoeff() <= 1 + 1e-8);
      CHECK((A.A.transpose() * d.w - d.u + d.v).cwiseAbs().maxCoeff() <= 1e-8);
    }
    {
      const auto d = hoffman::dual_construction(Theorem::T42, A, x, 1);
      CHECK(d.w.minCoeff() >= -1e-12);
      CHECK(d.w2.minCoeff() >= -1e-12);
      CHECK((d.u + d.v).maxCoeff() <= 1 + 1e-8);
      CHECK(d.u.minCoeff() >= -1e-8);
      CHECK(d.v.minCoeff() >= -1e-8);
      CHECK((A.A.transpose() * (d.w - d.w2) - d.u + d.v)
                .cwiseAbs()
                .maxCoeff() <= 1e-8);
    }
    {
      const auto d = hoffman::dual_construction(Theorem::T44, A, x, 1);
      CHECK(d.v3.minCoeff() >= -1e-12);
      CHECK(d.v4.minCoeff() >= -1e-12);
      CHECK((d.v3 + d.v4).maxCoeff() <= d.v5 + 1e-10);
      CHECK((d.v1 + d.v2).maxCoeff() <= 1 + 1e-8);
      CHECK((A.A.transpose() * (d.v3 - d.v4) + d.v1 - d.v2)
                .cwiseAbs()
                .maxCoeff() <= 1e-8);
    }
    {
      const auto d = hoffman::dual_construction(Theorem::T56, A, x, 1, &P);
      CHECK(d.v3.minCoeff() >= -1e-12);
      // M v3 = -g and ||v3||_1 = ||g||_1 with g recovered from stationarity.
      const Vector Mg = P.normals * d.v3;
      const Vector eta_check =
          A.A.transpose() * (-Mg);  // should equal v1 - v2 = eta
      CHECK((eta_check - (d.v1 - d.v2)).cwiseAbs().maxCoeff() <= 1e-8);
      CHECK(d.v3.lpNorm<1>() == doctest::Approx(Mg.lpNorm<1>()).epsilon(1e-10));
      CHECK((d.v1 + d.v2).maxCoeff() <= 1 + 1e-8);
    }
  }
}

TEST_CASE("stability_experiment: exact k-sparse recovery at eps = 0") {
  const auto A = certified_3x6(47);
  hoffman::StabilityConfig cfg;
  cfg.trials = 4;
  cfg.seed = 2;
  cfg.perturbation = 0.0;
  const auto reports = hoffman::stability_experiment(Theorem::T32, A, 1, cfg);
  REQUIRE(reports.size() == 4);
  for (const auto& r : reports) {
    CHECK(r.feasible);
    CHECK(r.sigma_k <= 1e-12);
    CHECK(r.measured_distance <= 1e-6);
  }
}
