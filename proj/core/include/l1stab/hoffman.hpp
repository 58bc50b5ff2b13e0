// Copyright 2026 The l1stab authors
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0

#ifndef L1STAB_HOFFMAN_HPP
#define L1STAB_HOFFMAN_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "l1stab/solvers.hpp"

namespace l1stab {
namespace hoffman {

struct MissingExtras : std::runtime_error {
  explicit MissingExtras(const std::string& what) : std::runtime_error(what) {}
};

// The stacked linear system {M' z <= b, M'' z = d} whose feasible set is the
// KKT solution set of the given problem kind, in the frozen block order.
struct KktSystem {
  solvers::Kind kind = solvers::Kind::Eq;
  Matrix M_ineq;
  Vector b_ineq;
  Matrix M_eq;
  Vector b_eq;
  std::vector<std::string> row_blocks_ineq;  // one label per block row range
  std::vector<std::string> row_blocks_eq;
  std::vector<std::string> col_blocks;       // variable layout, e.g. x,t,u,v,w

  // Flattens a solver tuple into the system's variable layout.
  Vector pack(const Vector& x, const solvers::DualTuple& dual) const;
  // l1 norm of [(M'z - b)^+; M''z - d].
  double residual_l1(const Vector& z) const;
  Vector residual_stack(const Vector& z) const;
};

KktSystem build_kkt(solvers::Kind kind, const linops::DesignMatrix& A,
                    const Vector& y, double eps,
                    const geom::SpherePolytope* P = nullptr);

struct RobinsonEstimate {
  double value = 0.0;
  enum class Semantics { ExactTiny, MonteCarloLowerBound } semantics =
      Semantics::MonteCarloLowerBound;
  int samples = 0;
  std::uint64_t seed = 0;
  bool no_feasible_samples = false;
};

// sigma_{inf,2}(M', M''): max over unit-l2 (b,d) with {M'z<=b, M''z=d}
// feasible of the min-l-inf solution norm.
RobinsonEstimate robinson_estimate(const Matrix& M_ineq, const Matrix& M_eq,
                                   int samples, std::uint64_t seed);

struct HoffmanEmpirical {
  double gamma_emp = 0.0;
  Vector worst_point;
};
HoffmanEmpirical hoffman_empirical(const lp::Polyhedron& F, int points,
                                   std::uint64_t seed);

enum class Theorem { T32, T42, T44, T56 };

struct BoundBreakdown {
  std::vector<std::pair<std::string, double>> terms;
  double total = 0.0;
  // Sum of the terms without the leading gamma factor (the "bound factor"
  // that empirical gamma divides the measured distance by); excludes the
  // additive 2*eps' term of Theorem 5.6 which carries no gamma.
  double factor = 0.0;
};

struct Extras {
  int k = 0;
  int N_hat = 0;          // Theorem 5.6
  double eps_prime = 0.0;  // Theorem 5.6 (measured proxy)
};

BoundBreakdown bound_rhs(Theorem theorem, const linops::DesignMatrix& A,
                         const Vector& y, double eps, const Vector& x,
                         double gamma, const Extras& extras);

// The multiplier tuples the theorem proofs construct from a weak-RSP dual
// certificate at the support of the k largest |x_i|.
solvers::DualTuple dual_construction(Theorem theorem,
                                     const linops::DesignMatrix& A,
                                     const Vector& x, int k,
                                     const geom::SpherePolytope* P = nullptr);

struct StabilityReport {
  int trial = 0;
  Theorem theorem = Theorem::T32;
  double sigma_k = 0.0;
  double epsilon = 0.0;
  double measured_distance = 0.0;
  double bound_factor = 0.0;     // bound_rhs with gamma = 1
  double empirical_gamma = 0.0;  // distance / factor (0 when factor == 0)
  bool feasible = false;
};

struct StabilityConfig {
  int trials = 10;
  std::uint64_t seed = 1;
  double perturbation = 0.0;  // sigma_k ladder driver
  double epsilon = 0.0;       // noisy problems (4.2/4.4/5.6)
};

std::vector<StabilityReport> stability_experiment(Theorem theorem,
                                                  const linops::DesignMatrix& A,
                                                  int k,
                                                  const StabilityConfig& cfg);

}  // namespace hoffman
}  // namespace l1stab

#endif  // L1STAB_HOFFMAN_HPP
