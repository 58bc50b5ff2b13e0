// Copyright 2026 The l1stab authors
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0

#include "l1stab/certify.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>
#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>

#include "l1stab/ensemble.hpp"
#include "l1stab/solvers.hpp"

namespace l1stab {
namespace certify {

namespace {

// All size-s subsets of {0..n-1} in lexicographic order.
void for_each_subset(int n, int s, const std::function<void(const std::vector<int>&)>& fn) {
  std::vector<int> idx(s);
  for (int i = 0; i < s; ++i) idx[i] = i;
  if (s == 0) {
    fn(idx);
    return;
  }
  while (true) {
    fn(idx);
    int i = s - 1;
    while (i >= 0 && idx[i] == n - s + i) --i;
    if (i < 0) break;
    ++idx[i];
    for (int j = i + 1; j < s; ++j) idx[j] = idx[j - 1] + 1;
  }
}

long pair_count(int n, int k) {
  long total = 0;
  double c = 1.0;  // C(n, j)
  for (int j = 1; j <= k; ++j) {
    c = c * (n - j + 1) / j;
    total += static_cast<long>(c * std::pow(2.0, j));
    if (total > 4 * kEnumCap) return total;  // early out, already hopeless
  }
  return total;
}

void check_enum_cap(int n, int k, const char* who) {
  if (k < 1) throw DimMismatch(std::string(who) + ": k must be >= 1");
  if (pair_count(n, k) > kEnumCap) {
    throw TooLarge(std::string(who) + ": pair enumeration exceeds cap");
  }
}

bool lex_leq(const std::vector<int>& a, const std::vector<int>& b) {
  return !std::lexicographical_compare(b.begin(), b.end(), a.begin(), a.end());
}

// Weak-RSP feasibility system for one pair, in the variable w.
lp::Polyhedron pair_system(const Matrix& A, const SupportPair& p) {
  const int m = static_cast<int>(A.rows());
  const int n = static_cast<int>(A.cols());
  std::vector<char> on(n, 0);
  for (int i : p.S1) on[i] = 1;
  for (int i : p.S2) on[i] = 1;
  const int s = static_cast<int>(p.S1.size() + p.S2.size());
  Matrix E(s, m);
  Vector f(s);
  int r = 0;
  for (int i : p.S1) {
    E.row(r) = A.col(i).transpose();
    f(r++) = 1.0;
  }
  for (int i : p.S2) {
    E.row(r) = A.col(i).transpose();
    f(r++) = -1.0;
  }
  Matrix G(2 * (n - s), m);
  Vector h = Vector::Ones(2 * (n - s));
  r = 0;
  for (int i = 0; i < n; ++i) {
    if (on[i]) continue;
    G.row(r++) = A.col(i).transpose();
    G.row(r++) = -A.col(i).transpose();
  }
  lp::Polyhedron sys;
  sys.G = G;
  sys.h = h;
  sys.E = E;
  sys.f = f;
  sys.dim = m;
  return sys;
}

Matrix null_basis(const Matrix& A) {
  const int m = static_cast<int>(A.rows());
  const int n = static_cast<int>(A.cols());
  Eigen::JacobiSVD<Matrix> svd(A, Eigen::ComputeFullV);
  return svd.matrixV().rightCols(n - m);
}

}  // namespace

std::vector<SupportPair> enumerate_pairs(int n, int k) {
  std::vector<SupportPair> out;
  for (int s = 0; s <= k; ++s) {
    std::vector<SupportPair> level;
    for_each_subset(n, s, [&](const std::vector<int>& T) {
      for (int mask = 0; mask < (1 << s); ++mask) {
        SupportPair p;
        p.n = n;
        p.k = k;
        for (int j = 0; j < s; ++j) {
          if (mask >> j & 1) {
            p.S2.push_back(T[j]);
          } else {
            p.S1.push_back(T[j]);
          }
        }
        if (!lex_leq(p.S1, p.S2)) continue;  // eta <-> -eta symmetry
        level.push_back(std::move(p));
      }
    });
    std::sort(level.begin(), level.end(),
              [](const SupportPair& a, const SupportPair& b) {
                if (a.S1 != b.S1) return a.S1 < b.S1;
                return a.S2 < b.S2;
              });
    out.insert(out.end(), level.begin(), level.end());
  }
  return out;
}

WeakRspResult certify_weak_rsp(const linops::DesignMatrix& A, int k) {
  check_enum_cap(static_cast<int>(A.A.cols()), k, "certify_weak_rsp");
  WeakRspResult res;
  for (const SupportPair& p : enumerate_pairs(static_cast<int>(A.A.cols()), k)) {
    if (p.S1.empty() && p.S2.empty()) continue;  // w = 0 works
    if (!lp::check_feasibility(pair_system(A.A, p)).feasible) {
      res.holds = false;
      res.witness = p;
      return res;
    }
  }
  res.holds = true;
  return res;
}

RspResult certify_rsp(const linops::DesignMatrix& A, int k) {
  const int n = static_cast<int>(A.A.cols());
  const int m = static_cast<int>(A.A.rows());
  check_enum_cap(n, k, "certify_rsp");
  RspResult res;
  res.min_margin = 1.0;
  for (const SupportPair& p : enumerate_pairs(n, k)) {
    // Variables (w, t): maximize t with |(A^T w)_i| <= 1 - t off-support.
    const lp::Polyhedron sys = pair_system(A.A, p);
    lp::LpProblem prob;
    prob.c = Vector::Zero(m + 1);
    prob.c(m) = -1.0;  // maximize t
    const int mi = sys.num_ineq();
    prob.G.resize(mi, m + 1);
    prob.G.leftCols(m) = sys.G;
    prob.G.col(m) = Vector::Ones(mi);
    prob.h = sys.h;
    prob.E.resize(sys.num_eq(), m + 1);
    prob.E.leftCols(m) = sys.E;
    prob.E.col(m).setZero();
    prob.f = sys.f;
    prob.lower = Vector::Constant(m + 1, -lp::kInf);
    prob.upper = Vector::Constant(m + 1, lp::kInf);
    prob.upper(m) = 1.0;
    const lp::LpSolution sol = lp::solve(prob);
    if (sol.status != lp::LpStatus::Optimal) {
      res.holds = false;
      res.witness = p;
      res.min_margin = 0.0;
      return res;
    }
    const double margin = -sol.value;
    if (margin <= kStrictTol) {
      res.holds = false;
      res.witness = p;
      res.min_margin = margin;
      return res;
    }
    res.min_margin = std::min(res.min_margin, margin);
  }
  res.holds = true;
  return res;
}

NspResult certify_nsp(const linops::DesignMatrix& A, int k) {
  const int n = static_cast<int>(A.A.cols());
  const int m = static_cast<int>(A.A.rows());
  check_enum_cap(n, k, "certify_nsp");
  if (n - m < 1) {
    throw DimMismatch("certify_nsp: trivial null space");
  }
  const Matrix B = null_basis(A.A);
  const int d = static_cast<int>(B.cols());

  NspResult res;
  res.holds = true;
  bool witness_set = false;

  for_each_subset(n, k, [&](const std::vector<int>& S) {
    if (res.rho_infinite && witness_set) return;
    std::vector<char> in_S(n, 0);
    for (int i : S) in_S[i] = 1;
    for (int mask = 0; mask < (1 << (k - 1)); ++mask) {
      // First sign fixed +1 (v <-> -v symmetry).
      Vector s(k);
      s(0) = 1.0;
      for (int j = 1; j < k; ++j) s(j) = (mask >> (j - 1) & 1) ? -1.0 : 1.0;

      // Vars (z, q): max s^T (Bz)_S  s.t.  |(Bz)_j| <= q_j off S, sum q <= 1.
      const int nq = n - k;
      lp::LpProblem prob;
      prob.c = Vector::Zero(d + nq);
      for (int j = 0; j < k; ++j) prob.c.head(d) -= s(j) * B.row(S[j]).transpose();
      const int mi = 2 * nq + 1;
      prob.G = Matrix::Zero(mi, d + nq);
      prob.h = Vector::Zero(mi);
      int r = 0, qi = 0;
      for (int i = 0; i < n; ++i) {
        if (in_S[i]) continue;
        prob.G.row(r).head(d) = B.row(i);
        prob.G(r, d + qi) = -1.0;
        ++r;
        prob.G.row(r).head(d) = -B.row(i);
        prob.G(r, d + qi) = -1.0;
        ++r;
        ++qi;
      }
      prob.G.row(r).tail(nq).setOnes();
      prob.h(r) = 1.0;
      prob.E.resize(0, d + nq);
      prob.f.resize(0);
      prob.lower = Vector::Constant(d + nq, -lp::kInf);
      prob.upper = Vector::Constant(d + nq, lp::kInf);
      prob.lower.tail(nq).setZero();

      const lp::LpSolution sol = lp::solve(prob);
      if (sol.status == lp::LpStatus::Unbounded) {
        res.rho_infinite = true;
        res.holds = false;
        if (!witness_set) {
          // Witness: null vector supported inside S with unit mass on S.
          lp::Polyhedron w;
          w.dim = d;
          w.G.resize(0, d);
          w.h.resize(0);
          w.E.resize(nq + 1, d);
          w.f = Vector::Zero(nq + 1);
          int rr = 0;
          for (int i = 0; i < n; ++i) {
            if (!in_S[i]) w.E.row(rr++) = B.row(i);
          }
          Vector sS = Vector::Zero(d);
          for (int j = 0; j < k; ++j) sS += s(j) * B.row(S[j]).transpose();
          w.E.row(nq) = sS.transpose();
          w.f(nq) = 1.0;
          const auto feas = lp::check_feasibility(w);
          if (feas.feasible) {
            res.S = S;
            res.v = B * feas.witness;
            witness_set = true;
          }
        }
        return;
      }
      const double val = -sol.value;
      if (val > res.rho && !res.rho_infinite) res.rho = val;
      if (val >= 1.0 - kStrictTol && res.holds) {
        res.holds = false;
        res.S = S;
        res.v = B * sol.primal.head(d);
        witness_set = true;
      }
    }
  });
  return res;
}

double stable_nsp_rho(const linops::DesignMatrix& A, int k, bool* infinite) {
  const NspResult r = certify_nsp(A, k);
  if (infinite) *infinite = r.rho_infinite;
  return r.rho_infinite ? std::numeric_limits<double>::infinity() : r.rho;
}

double robust_nsp_tau(const linops::DesignMatrix& A, int k, double rho,
                      std::uint64_t seed) {
  if (!(rho > 0.0 && rho < 1.0)) {
    throw DimMismatch("robust_nsp_tau: rho must lie in (0,1)");
  }
  const int n = static_cast<int>(A.A.cols());
  check_enum_cap(n, k, "robust_nsp_tau");

  Eigen::JacobiSVD<Matrix> svd(A.A, Eigen::ComputeFullV);
  const Vector sv = svd.singularValues();
  const Matrix V = svd.matrixV();
  const int m = static_cast<int>(A.A.rows());

  // Euclidean projection onto {v : ||A v||_2 <= 1} in the SVD frame.
  const auto project_ball = [&](Vector v) -> Vector {
    Vector alpha = V.leftCols(m).transpose() * v;
    double norm2 = 0.0;
    for (int i = 0; i < m; ++i) norm2 += sv(i) * sv(i) * alpha(i) * alpha(i);
    if (norm2 <= 1.0) return v;
    double lam = 0.0;
    for (int it = 0; it < 200; ++it) {  // Newton on phi(lam) = 1
      double phi = 0.0, dphi = 0.0;
      for (int i = 0; i < m; ++i) {
        const double s2 = sv(i) * sv(i);
        const double den = 1.0 + lam * s2;
        const double ai = alpha(i) / den;
        phi += s2 * ai * ai;
        dphi += -2.0 * s2 * s2 * alpha(i) * alpha(i) / (den * den * den);
      }
      const double step = (phi - 1.0) / dphi;
      lam -= step;
      if (lam < 0.0) lam = 0.0;
      if (std::abs(phi - 1.0) < 1e-13) break;
    }
    Vector alpha_new(m);
    for (int i = 0; i < m; ++i) alpha_new(i) = alpha(i) / (1.0 + lam * sv(i) * sv(i));
    return v + V.leftCols(m) * (alpha_new - alpha);
  };

  double tau = 0.0;
  ensemble::Rng rng(seed);
  for_each_subset(n, k, [&](const std::vector<int>& S) {
    std::vector<char> in_S(n, 0);
    for (int i : S) in_S[i] = 1;
    for (int mask = 0; mask < (1 << (k - 1)); ++mask) {
      Vector s(k);
      s(0) = 1.0;
      for (int j = 1; j < k; ++j) s(j) = (mask >> (j - 1) & 1) ? -1.0 : 1.0;
      const auto objective = [&](const Vector& v) {
        double f = 0.0;
        for (int j = 0; j < k; ++j) f += s(j) * v(S[j]);
        for (int i = 0; i < n; ++i) {
          if (!in_S[i]) f -= rho * std::abs(v(i));
        }
        return f;
      };
      for (int restart = 0; restart < 20; ++restart) {
        Vector v(n);
        for (int i = 0; i < n; ++i) v(i) = rng.normal();
        v = project_ball(v);
        double best = objective(v);
        Vector v_best = v;
        for (int t = 1; t <= 500; ++t) {
          Vector g = Vector::Zero(n);
          for (int j = 0; j < k; ++j) g(S[j]) += s(j);
          for (int i = 0; i < n; ++i) {
            if (!in_S[i]) g(i) -= rho * ((v(i) > 0) - (v(i) < 0));
          }
          v = project_ball(v + (1.0 / std::sqrt(double(t))) * g);
          const double f = objective(v);
          if (f > best) {
            best = f;
            v_best = v;
          }
        }
        tau = std::max(tau, best);
      }
    }
  });
  return std::max(tau, 0.0);
}

double rip_delta(const Matrix& A, int s) {
  const int n = static_cast<int>(A.cols());
  if (s < 1 || s > n) throw DimMismatch("rip_delta: s out of range");
  double c = 1.0;
  for (int j = 1; j <= s; ++j) c = c * (n - j + 1) / j;
  if (c > kEnumCap) throw TooLarge("rip_delta: support enumeration exceeds cap");
  double delta = 0.0;
  for_each_subset(n, s, [&](const std::vector<int>& T) {
    Matrix AT(A.rows(), s);
    for (int j = 0; j < s; ++j) AT.col(j) = A.col(T[j]);
    Eigen::SelfAdjointEigenSolver<Matrix> es(AT.transpose() * AT);
    const Vector ev = es.eigenvalues();
    delta = std::max({delta, ev.maxCoeff() - 1.0, 1.0 - ev.minCoeff()});
  });
  return delta;
}

double accumulative_coherence(const Matrix& A, int k) {
  if (k == 0) return 0.0;
  const int n = static_cast<int>(A.cols());
  if (k < 0 || k > n - 1) throw DimMismatch("accumulative_coherence: bad k");
  Matrix N = A;
  for (int j = 0; j < n; ++j) {
    const double norm = N.col(j).norm();
    if (std::abs(norm - 1.0) > 1e-8 && norm > 0) N.col(j) /= norm;
  }
  const Matrix Gram = (N.transpose() * N).cwiseAbs();
  double mu = 0.0;
  for (int i = 0; i < n; ++i) {
    std::vector<double> prods;
    prods.reserve(n - 1);
    for (int j = 0; j < n; ++j) {
      if (j != i) prods.push_back(Gram(i, j));
    }
    std::sort(prods.begin(), prods.end(), std::greater<>());
    double sum = 0.0;
    for (int j = 0; j < k; ++j) sum += prods[j];
    mu = std::max(mu, sum);
  }
  return mu;
}

DualCertificate dual_certificate(const linops::DesignMatrix& A,
                                 const SupportPair& pair) {
  const int m = static_cast<int>(A.A.rows());
  DualCertificate cert;
  cert.pair = pair;
  if (pair.S1.empty() && pair.S2.empty()) {
    cert.w = Vector::Zero(m);
    cert.eta = Vector::Zero(A.A.cols());
    return cert;
  }
  const auto feas = lp::check_feasibility(pair_system(A.A, pair));
  if (!feas.feasible) {
    throw NoCertificate("dual_certificate: pair LP infeasible");
  }
  cert.w = feas.witness;
  cert.eta = A.A.transpose() * cert.w;
  return cert;
}

Counterexample necessity_counterexample(const linops::DesignMatrix& A,
                                        const SupportPair& pair) {
  const int n = static_cast<int>(A.A.cols());
  Vector x_hat = Vector::Zero(n);
  for (int i : pair.S1) x_hat(i) = 1.0;
  for (int i : pair.S2) x_hat(i) = -1.0;
  const auto sol = solvers::bp_solve(A, A.A * x_hat);
  Counterexample out;
  out.x_hat = x_hat;
  out.gap = x_hat.lpNorm<1>() - sol.value;
  return out;
}

PropertyReport report(const linops::DesignMatrix& A, int k, bool with_rip) {
  PropertyReport r;
  r.k = k;
  r.weak_rsp = certify_weak_rsp(A, k);
  r.rsp = certify_rsp(A, k);
  r.nsp = certify_nsp(A, k);
  r.stable_nsp_rho_infinite = r.nsp.rho_infinite;
  r.stable_nsp_rho = r.nsp.rho_infinite
                         ? std::numeric_limits<double>::infinity()
                         : r.nsp.rho;
  r.mu1_k = accumulative_coherence(A.A, k);
  r.mu1_k_minus_1 = accumulative_coherence(A.A, k - 1);
  if (with_rip && 2 * k <= A.A.cols()) r.rip_delta_2k = rip_delta(A.A, 2 * k);
  return r;
}

}  // namespace certify
}  // namespace l1stab
