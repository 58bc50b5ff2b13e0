// Copyright 2026 The l1stab authors
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0

#ifndef L1STAB_GEOMETRY_HPP
#define L1STAB_GEOMETRY_HPP

#include <cstdint>
#include <utility>
#include <vector>

#include "l1stab/lp.hpp"

namespace l1stab {
namespace geom {

inline constexpr int kProjCap = 20;  // inequality rows on the exact path

struct BadDim : std::runtime_error {
  explicit BadDim(const std::string& what) : std::runtime_error(what) {}
};
struct EmptyPolyhedron : std::runtime_error {
  explicit EmptyPolyhedron(const std::string& what) : std::runtime_error(what) {}
};
struct Unbounded : std::runtime_error {
  explicit Unbounded(const std::string& what) : std::runtime_error(what) {}
};

// Outer approximation of the unit l2 ball: intersection of {a_i^T z <= 1}
// over the unit normals stored as columns of `normals`.
struct SpherePolytope {
  int dim = 0;
  Matrix normals;  // dim x K, unit columns
  int requested_K = 0;
  std::uint64_t seed = 0;
  bool augmented = false;

  int num_normals() const { return static_cast<int>(normals.cols()); }
  lp::Polyhedron as_polyhedron() const;
};

SpherePolytope dudley_polytope(int m, int K, std::uint64_t seed);
SpherePolytope augment_with_axes(const SpherePolytope& P);
SpherePolytope nest(const std::vector<SpherePolytope>& polytopes);

struct HausdorffValue {
  double value = 0.0;
  bool exact = false;
};
// delta^H(B, P) = max_{z in P} ||z||_2 - 1; exact for dim 2, a sampled
// lower-bound estimate otherwise.
HausdorffValue hausdorff_to_ball(const SpherePolytope& P, int directions = 512,
                                 std::uint64_t seed = 1);

std::pair<int, double> nearest_normal(const SpherePolytope& P, const Vector& z);

struct Projection {
  Vector point;
  double dist = 0.0;
  bool exact = false;
};

// Euclidean projection onto {G z <= h, E z = f}.  Exact active-set path for
// up to kProjCap inequality rows, Dykstra fallback otherwise.
Projection project(const Vector& x, const lp::Polyhedron& F);

// Same, but minimizing sum_i weights_i (z_i - x_i)^2; zero weights admit free
// coordinates (used for distances measured in a sub-block of a lifted space).
Projection project_weighted(const Vector& x, const lp::Polyhedron& F,
                            const Vector& weights);

// Support-function lower bound on delta^H(F1, F2); when f1_subset_f2 the
// one-sided sup_{w in F2} dist(w, F1) is also sampled via vertex projection.
double hausdorff_estimate(const lp::Polyhedron& F1, const lp::Polyhedron& F2,
                          int directions, std::uint64_t seed,
                          bool f1_subset_f2 = false);

// Deterministic low-discrepancy unit directions (Halton + Box-Muller map).
Matrix sample_directions(int dim, int count, std::uint64_t seed);

}  // namespace geom
}  // namespace l1stab

#endif  // L1STAB_GEOMETRY_HPP
