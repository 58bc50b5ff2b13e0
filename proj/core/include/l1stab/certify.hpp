// Copyright 2026 The l1stab authors
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0

#ifndef L1STAB_CERTIFY_HPP
#define L1STAB_CERTIFY_HPP

#include <cstdint>
#include <optional>
#include <vector>

#include "l1stab/lp.hpp"

namespace l1stab {
namespace certify {

inline constexpr double kStrictTol = 1e-7;
inline constexpr long kEnumCap = 2000000;  // LP calls

struct NoCertificate : std::runtime_error {
  explicit NoCertificate(const std::string& what) : std::runtime_error(what) {}
};

// Disjoint index sets S1, S2 in {0..n-1} with |S1|+|S2| <= k.
struct SupportPair {
  std::vector<int> S1;
  std::vector<int> S2;
  int n = 0;
  int k = 0;
};

// eta = A^T w with eta = 1 on S1, -1 on S2, |eta| <= 1 elsewhere.
struct DualCertificate {
  Vector eta;
  Vector w;
  SupportPair pair;
};

struct WeakRspResult {
  bool holds = false;
  SupportPair witness;  // first violated pair when !holds
};

struct RspResult {
  bool holds = false;
  double min_margin = 0.0;
  SupportPair witness;
};

struct NspResult {
  bool holds = false;
  double rho = 0.0;       // rho* when finite
  bool rho_infinite = false;
  std::vector<int> S;     // violating support when !holds
  Vector v;               // null-space witness when !holds
};

WeakRspResult certify_weak_rsp(const linops::DesignMatrix& A, int k);
RspResult certify_rsp(const linops::DesignMatrix& A, int k);
NspResult certify_nsp(const linops::DesignMatrix& A, int k);

// rho* of Definition 2.1(c); sets *infinite when some null-space vector is
// supported inside an S of size k.
double stable_nsp_rho(const linops::DesignMatrix& A, int k,
                      bool* infinite = nullptr);

// Lower-bound estimate of the minimal tau in ||v_S||_1 <= rho ||v_Sbar||_1 +
// tau ||A v||_2, by projected subgradient ascent with multi-start.
double robust_nsp_tau(const linops::DesignMatrix& A, int k, double rho,
                      std::uint64_t seed = 1);

double rip_delta(const Matrix& A, int s);
double accumulative_coherence(const Matrix& A, int k);

DualCertificate dual_certificate(const linops::DesignMatrix& A,
                                 const SupportPair& pair);

struct Counterexample {
  Vector x_hat;
  double gap = 0.0;
};
Counterexample necessity_counterexample(const linops::DesignMatrix& A,
                                        const SupportPair& pair);

struct PropertyReport {
  int k = 0;
  WeakRspResult weak_rsp;
  RspResult rsp;
  NspResult nsp;
  double stable_nsp_rho = 0.0;
  bool stable_nsp_rho_infinite = false;
  double mu1_k = 0.0;
  double mu1_k_minus_1 = 0.0;
  std::optional<double> rip_delta_2k;
};
PropertyReport report(const linops::DesignMatrix& A, int k,
                      bool with_rip = true);

// Enumeration helper shared with the tests: all (S1, S2) pairs in the frozen
// order -- sorted by (|S1|+|S2|, S1, S2) -- with the eta <-> -eta symmetry
// removed (only the representative with S1 <= S2 lexicographically is kept).
std::vector<SupportPair> enumerate_pairs(int n, int k);

}  // namespace certify
}  // namespace l1stab

#endif  // L1STAB_CERTIFY_HPP
