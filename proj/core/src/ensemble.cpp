// Copyright 2026 The l1stab authors
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0

#include "l1stab/ensemble.hpp"

#include <cmath>

#include "l1stab/certify.hpp"
#include "l1stab/matrix_io.hpp"

namespace l1stab {
namespace ensemble {

double Rng::normal() {
  // Box-Muller, hand-rolled so the stream is identical on every platform.
  if (have_spare_) {
    have_spare_ = false;
    return spare_;
  }
  double u1 = 0.0;
  do {
    u1 = uniform();
  } while (u1 <= 0.0);
  const double u2 = uniform();
  const double r = std::sqrt(-2.0 * std::log(u1));
  const double theta = 2.0 * M_PI * u2;
  spare_ = r * std::sin(theta);
  have_spare_ = true;
  return r * std::cos(theta);
}

int Rng::uniform_int(int lo, int hi) {
  const std::uint64_t span = static_cast<std::uint64_t>(hi - lo) + 1;
  return lo + static_cast<int>(gen_() % span);
}

std::vector<linops::DesignMatrix> gen_matrix(const EnsembleSpec& spec) {
  std::vector<linops::DesignMatrix> out;
  if (spec.kind == EnsembleSpec::Kind::File) {
    out.push_back(linops::DesignMatrix::build(read_matrix_file(spec.file)));
    return out;
  }
  if (spec.m >= spec.n || spec.m < 1 || spec.count < 1) {
    throw DimMismatch("gen_matrix: need 1 <= m < n and count >= 1");
  }
  Rng rng(spec.seed);
  const double scale = spec.normalize ? 1.0 / std::sqrt(double(spec.m)) : 1.0;
  for (int c = 0; c < spec.count; ++c) {
    bool ok = false;
    for (int attempt = 0; attempt < 64 && !ok; ++attempt) {
      Matrix A(spec.m, spec.n);
      for (int i = 0; i < spec.m; ++i) {
        for (int j = 0; j < spec.n; ++j) {
          const double e = spec.kind == EnsembleSpec::Kind::Gaussian
                               ? rng.normal()
                               : (rng.uniform() < 0.5 ? -1.0 : 1.0);
          A(i, j) = scale * e;
        }
      }
      try {
        out.push_back(linops::DesignMatrix::build(A));
        ok = true;
      } catch (const RankDeficient&) {
      }
    }
    if (!ok) throw RankRetryExhausted("gen_matrix: rank retries exhausted");
  }
  return out;
}

Vector sparse_vector(int n, int k, Rng& rng) {
  Vector x = Vector::Zero(n);
  std::vector<int> idx(n);
  for (int i = 0; i < n; ++i) idx[i] = i;
  for (int j = 0; j < k; ++j) {  // partial Fisher-Yates
    std::swap(idx[j], idx[rng.uniform_int(j, n - 1)]);
  }
  for (int j = 0; j < k; ++j) {
    const double sign = rng.uniform() < 0.5 ? -1.0 : 1.0;
    double mag = 1.0;
    if (rng.uniform() < 0.5) {
      mag = std::pow(10.0, rng.uniform() * 2.0 - 1.0);  // log-uniform [0.1, 10]
    }
    x(idx[j]) = sign * mag;
  }
  return x;
}

std::vector<PhasePoint> phase_experiment(int n, int k,
                                         const std::vector<int>& m_range,
                                         int per_point, std::uint64_t seed) {
  std::vector<PhasePoint> out;
  for (size_t mi = 0; mi < m_range.size(); ++mi) {
    const int m = m_range[mi];
    EnsembleSpec spec;
    spec.kind = EnsembleSpec::Kind::Gaussian;
    spec.m = m;
    spec.n = n;
    spec.k = k;
    spec.count = per_point;
    spec.seed = seed + 1000003 * mi;
    const auto mats = gen_matrix(spec);
    PhasePoint pt;
    pt.m = m;
    pt.per_point = per_point;
    for (const auto& A : mats) {
      if (certify::certify_weak_rsp(A, k).holds) ++pt.holds;
    }
    pt.frequency = double(pt.holds) / per_point;
    // Wilson 95% interval.
    const double z = 1.959963984540054;
    const double nn = per_point, p = pt.frequency;
    const double den = 1.0 + z * z / nn;
    const double center = (p + z * z / (2 * nn)) / den;
    const double half =
        z * std::sqrt(p * (1 - p) / nn + z * z / (4 * nn * nn)) / den;
    pt.wilson_lo = std::max(0.0, center - half);
    pt.wilson_hi = std::min(1.0, center + half);
    out.push_back(pt);
  }
  return out;
}

}  // namespace ensemble
}  // namespace l1stab
