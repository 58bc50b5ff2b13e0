// Copyright 2026 The l1stab authors
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0

#include "l1stab/solvers.hpp"

#include <doctest.h>

#include <cmath>

#include "l1stab/ensemble.hpp"

using namespace l1stab;
using linops::DesignMatrix;
using solvers::Kind;

namespace {

DesignMatrix one_one() {
  Matrix A(1, 2);
  A << 1, 1;
  return DesignMatrix::build(A);
}

DesignMatrix id_23() {
  Matrix A(2, 3);
  A << 1, 0, 0, 0, 1, 0;
  return DesignMatrix::build(A);
}

}  // namespace

TEST_CASE("bp_solve frozen examples") {
  const auto A = one_one();
  const auto sol = solvers::bp_solve(A, Vector::Constant(1, 2.0));
  CHECK(sol.value == doctest::Approx(2.0).epsilon(1e-9));
  // Vertex optimum is (2,0) or (0,2).
  const bool v1 = (sol.x - Vector{{2, 0}}).norm() <= 1e-8;
  const bool v2 = (sol.x - Vector{{0, 2}}).norm() <= 1e-8;
  CHECK((v1 || v2));
  CHECK((sol.dual.t - sol.x.cwiseAbs()).cwiseAbs().maxCoeff() <= 1e-8);
  CHECK(sol.kkt_residual_linf <= 1e-7);

  const auto zero = solvers::bp_solve(A, Vector::Zero(1));
  CHECK(zero.value == doctest::Approx(0.0));
  CHECK(zero.x.cwiseAbs().maxCoeff() <= 1e-9);

  const auto B = id_23();
  Vector y(2);
  y << 3, -4;
  const auto s2 = solvers::bp_solve(B, y);
  CHECK(s2.value == doctest::Approx(7.0).epsilon(1e-9));
  CHECK((s2.x - Vector{{3, -4, 0}}).cwiseAbs().maxCoeff() <= 1e-8);
}

TEST_CASE("linf_solve frozen examples and monotonicity") {
  const auto A = one_one();
  const Vector y = Vector::Constant(1, 2.0);
  CHECK(solvers::linf_solve(A, y, 2.5).value == doctest::Approx(0.0));
  const auto s = solvers::linf_solve(A, y, 0.5);
  CHECK(s.value == doctest::Approx(1.5).epsilon(1e-9));
  CHECK(s.kkt_residual_linf <= 1e-7);
  double prev = solvers::linf_solve(A, y, 0.25).value;
  for (double eps : {0.5, 1.0, 1.5}) {
    const double v = solvers::linf_solve(A, y, eps).value;
    CHECK(v <= prev + 1e-9);
    prev = v;
  }
}

TEST_CASE("l1con_solve frozen examples") {
  const auto A = one_one();
  const Vector y = Vector::Constant(1, 2.0);
  CHECK(solvers::l1con_solve(A, y, 2.5).value == doctest::Approx(0.0));
  const auto s = solvers::l1con_solve(A, y, 0.5);
  CHECK(s.value == doctest::Approx(1.5).epsilon(1e-9));
  CHECK(s.kkt_residual_linf <= 1e-7);

  const auto B = id_23();
  const auto s2 = solvers::l1con_solve(B, Vector::Ones(2), 1.0);
  CHECK(s2.value == doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("l2con_solve: zero when eps dominates, sandwich otherwise") {
  Matrix M(2, 3);
  M << 1, 0, 1, 0, 1, 1;
  const auto A = DesignMatrix::build(M);
  Vector y(2);
  y << 2, 2;
  const auto z = solvers::l2con_solve(A, y, 1.1 * y.norm());
  CHECK(z.value == doctest::Approx(0.0).epsilon(1e-8));

  const auto s = solvers::l2con_solve(A, y, 0.5);
  REQUIRE(s.relaxation.has_value());
  const auto& info = *s.relaxation;
  CHECK(info.lower <= info.upper + 1e-8);
  double prev = -1e300;
  for (const auto& [J, val] : info.ladder) {
    CHECK(val >= prev - 1e-9);  // relaxation value nondecreasing in J
    prev = val;
  }
  CHECK(s.kkt_residual_linf <= 1e-7);
  CHECK((A.A * info.restored - y).norm() <= 0.5 + 1e-8);
}

TEST_CASE("norm comparison at fixed eps: inf <= two <= one") {
  ensemble::EnsembleSpec spec;
  spec.m = 2;
  spec.n = 4;
  spec.count = 3;
  spec.seed = 31;
  ensemble::Rng rng(8);
  for (const auto& A : ensemble::gen_matrix(spec)) {
    Vector y(2);
    y << 2 + rng.uniform(), 1 + rng.uniform();
    const double eps = 0.3;
    const double vi = solvers::linf_solve(A, y, eps).value;
    const double v2 = solvers::l2con_solve(A, y, eps).value;
    const double v1 = solvers::l1con_solve(A, y, eps).value;
    // The polytope relaxation lower-bounds the true l2 value, which sits
    // between the other two; allow the relaxation slack on the left.
    CHECK(vi <= v2 + 1e-6);
    CHECK(v2 <= v1 + 1e-6);
  }
}

TEST_CASE("kkt_residual: zero at solver output, local under sign flip") {
  const auto A = id_23();
  Vector y(2);
  y << 1, -2;
  auto sol = solvers::bp_solve(A, y);
  Vector res = solvers::kkt_residual(Kind::Eq, sol.x, sol.dual, A.A, y, 0.0);
  CHECK(res.cwiseAbs().maxCoeff() <= 1e-7);
  const int zeros_before = static_cast<int>((res.array().abs() < 1e-9).count());
  auto bad = sol.dual;
  bad.t(2) = -0.5;  // violate t >= 0 at one coordinate
  res = solvers::kkt_residual(Kind::Eq, sol.x, bad, A.A, y, 0.0);
  // Flipping one sign constraint touches the t-rows (epigraph + t>=0) only.
  CHECK(res.cwiseAbs().maxCoeff() > 0.1);
}

TEST_CASE("t = |x| at every returned KKT point") {
  ensemble::EnsembleSpec spec;
  spec.m = 3;
  spec.n = 5;
  spec.count = 4;
  spec.seed = 13;
  ensemble::Rng rng(2);
  for (const auto& A : ensemble::gen_matrix(spec)) {
    Vector y(3);
    for (int i = 0; i < 3; ++i) y(i) = rng.normal();
    const auto bp = solvers::bp_solve(A, y);
    CHECK((bp.dual.t - bp.x.cwiseAbs()).cwiseAbs().maxCoeff() <= 1e-8);
    const auto li = solvers::linf_solve(A, y, 0.2);
    CHECK((li.dual.t - li.x.cwiseAbs()).cwiseAbs().maxCoeff() <= 1e-8);
    const auto l1 = solvers::l1con_solve(A, y, 0.2);
    CHECK((l1.dual.t - l1.x.cwiseAbs()).cwiseAbs().maxCoeff() <= 1e-8);
  }
}

TEST_CASE("solution_set_distance: segment geometry and optimal point") {
  const auto A = one_one();
  const Vector y = Vector::Constant(1, 2.0);
  const double d =
      solvers::solution_set_distance(Vector{{3, -1}}, Kind::Eq, A, y, 0.0);
  CHECK(d == doctest::Approx(std::sqrt(2.0)).epsilon(1e-6));
  const double d0 =
      solvers::solution_set_distance(Vector{{1, 1}}, Kind::Eq, A, y, 0.0);
  CHECK(d0 <= 1e-8);
}

TEST_CASE("eps = 0 rejected for the noisy kinds") {
  const auto A = one_one();
  const Vector y = Vector::Constant(1, 1.0);
  CHECK_THROWS(solvers::linf_solve(A, y, 0.0));
  CHECK_THROWS(solvers::l1con_solve(A, y, 0.0));
  CHECK_THROWS(solvers::l2con_solve(A, y, 0.0));
}
