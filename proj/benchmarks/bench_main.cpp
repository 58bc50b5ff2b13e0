// Copyright 2026 The l1stab authors
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0

#include <benchmark/benchmark.h>

#include "l1stab/certify.hpp"
#include "l1stab/ensemble.hpp"
#include "l1stab/geometry.hpp"
#include "l1stab/solvers.hpp"

using namespace l1stab;

namespace {

linops::DesignMatrix make_matrix(int m, int n) {
  ensemble::EnsembleSpec spec;
  spec.m = m;
  spec.n = n;
  spec.count = 1;
  spec.seed = 42;
  return ensemble::gen_matrix(spec)[0];
}

void BM_BasisPursuit(benchmark::State& state) {
  const int m = static_cast<int>(state.range(0));
  const auto A = make_matrix(m, 2 * m);
  ensemble::Rng rng(7);
  Vector y(m);
  for (int i = 0; i < m; ++i) y(i) = rng.normal();
  for (auto _ : state) {
    benchmark::DoNotOptimize(solvers::bp_solve(A, y));
  }
}
BENCHMARK(BM_BasisPursuit)->Arg(4)->Arg(8)->Arg(16);

void BM_WeakRspPairLp(benchmark::State& state) {
  const auto A = make_matrix(4, 8);
  certify::SupportPair pair;
  pair.S1 = {0};
  pair.S2 = {3};
  pair.n = 8;
  pair.k = 2;
  for (auto _ : state) {
    try {
      benchmark::DoNotOptimize(certify::dual_certificate(A, pair));
    } catch (const certify::NoCertificate&) {
    }
  }
}
BENCHMARK(BM_WeakRspPairLp);

void BM_HausdorffToBall(benchmark::State& state) {
  const auto P = geom::dudley_polytope(3, static_cast<int>(state.range(0)), 1);
  for (auto _ : state) {
    benchmark::DoNotOptimize(geom::hausdorff_to_ball(P, 128));
  }
}
BENCHMARK(BM_HausdorffToBall)->Arg(8)->Arg(16);

}  // namespace

BENCHMARK_MAIN();
