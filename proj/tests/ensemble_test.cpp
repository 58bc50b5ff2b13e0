// Copyright 2026 The l1stab authors
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0

#include "l1stab/ensemble.hpp"

#include <doctest.h>

#include <cmath>

using namespace l1stab;

TEST_CASE("gaussian generation is deterministic per seed") {
  ensemble::EnsembleSpec spec;
  spec.m = 3;
  spec.n = 8;
  spec.count = 2;
  spec.seed = 7;
  const auto a = ensemble::gen_matrix(spec);
  const auto b = ensemble::gen_matrix(spec);
  REQUIRE(a.size() == 2);
  CHECK((a[0].A - b[0].A).cwiseAbs().maxCoeff() == 0.0);
  CHECK((a[1].A - b[1].A).cwiseAbs().maxCoeff() == 0.0);
  spec.seed = 8;
  const auto c = ensemble::gen_matrix(spec);
  CHECK((a[0].A - c[0].A).cwiseAbs().maxCoeff() > 0.0);
}

TEST_CASE("bernoulli normalized entries are +-1/sqrt(m)") {
  ensemble::EnsembleSpec spec;
  spec.kind = ensemble::EnsembleSpec::Kind::Bernoulli;
  spec.m = 4;
  spec.n = 9;
  spec.count = 1;
  spec.seed = 3;
  spec.normalize = true;
  const auto mats = ensemble::gen_matrix(spec);
  const double v = 1.0 / std::sqrt(4.0);
  for (int i = 0; i < 4; ++i) {
    for (int j = 0; j < 9; ++j) {
      CHECK(std::abs(std::abs(mats[0].A(i, j)) - v) <= 1e-15);
    }
  }
}

TEST_CASE("generated matrices have full row rank (G is valid)") {
  ensemble::EnsembleSpec spec;
  spec.m = 5;
  spec.n = 10;
  spec.count = 5;
  spec.seed = 23;
  for (const auto& A : ensemble::gen_matrix(spec)) {
    CHECK((A.A * A.A.transpose() * A.G - A.A).cwiseAbs().maxCoeff() <= 1e-8);
  }
}

TEST_CASE("sparse_vector respects sparsity and magnitude mix") {
  ensemble::Rng rng(5);
  for (int trial = 0; trial < 20; ++trial) {
    const Vector x = ensemble::sparse_vector(10, 3, rng);
    int nnz = 0;
    for (int i = 0; i < 10; ++i) {
      if (x(i) != 0.0) {
        ++nnz;
        const double mag = std::abs(x(i));
        CHECK(mag >= 0.1 - 1e-12);
        CHECK(mag <= 10.0 + 1e-12);
      }
    }
    CHECK(nnz <= 3);
    CHECK(nnz >= 1);
  }
}

TEST_CASE("phase_experiment produces sane frequencies and intervals") {
  const auto curve = ensemble::phase_experiment(5, 1, {2, 4}, 4, 11);
  REQUIRE(curve.size() == 2);
  for (const auto& p : curve) {
    CHECK(p.per_point == 4);
    CHECK(p.frequency >= 0.0);
    CHECK(p.frequency <= 1.0);
    CHECK(p.wilson_lo <= p.frequency + 1e-12);
    CHECK(p.wilson_hi >= p.frequency - 1e-12);
    CHECK(p.holds == static_cast<int>(std::lround(p.frequency * 4)));
  }
}
