// Copyright 2026 The l1stab authors
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0

#ifndef L1STAB_ENSEMBLE_HPP
#define L1STAB_ENSEMBLE_HPP

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "l1stab/linops.hpp"

namespace l1stab {
namespace ensemble {

struct RankRetryExhausted : std::runtime_error {
  explicit RankRetryExhausted(const std::string& what)
      : std::runtime_error(what) {}
};

// Deterministic RNG used everywhere randomness is needed; hand-rolled
// Box-Muller so streams are byte-reproducible across standard libraries.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : gen_(seed) {}
  double uniform() {  // [0, 1)
    return static_cast<double>(gen_() >> 11) * 0x1.0p-53;
  }
  double normal();
  int uniform_int(int lo, int hi);  // inclusive
  std::uint64_t raw() { return gen_(); }

 private:
  std::mt19937_64 gen_;
  bool have_spare_ = false;
  double spare_ = 0.0;
};

struct EnsembleSpec {
  enum class Kind { Gaussian, Bernoulli, File } kind = Kind::Gaussian;
  int m = 0, n = 0, k = 1;
  int count = 1;
  std::uint64_t seed = 1;
  bool normalize = false;  // scale entries by 1/sqrt(m)
  std::string file;        // kind == File
};

std::vector<linops::DesignMatrix> gen_matrix(const EnsembleSpec& spec);

struct PhasePoint {
  int m = 0;
  int per_point = 0;
  int holds = 0;
  double frequency = 0.0;
  double wilson_lo = 0.0, wilson_hi = 0.0;  // 95% interval
};

std::vector<PhasePoint> phase_experiment(int n, int k,
                                         const std::vector<int>& m_range,
                                         int per_point, std::uint64_t seed);

// k-sparse vector with the spec'd magnitude mix ({+-1} union log-uniform
// [0.1, 10]) on a uniform random support.
Vector sparse_vector(int n, int k, Rng& rng);

}  // namespace ensemble
}  // namespace l1stab

#endif  // L1STAB_ENSEMBLE_HPP
