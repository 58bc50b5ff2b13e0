// Copyright 2026 The l1stab authors
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0

#include "l1stab/matrix_io.hpp"

#include <fstream>
#include <iomanip>
#include <sstream>

namespace l1stab {

Matrix read_matrix(std::istream& in) {
  int m = 0, n = 0;
  if (!(in >> m >> n) || m < 0 || n < 0) {
    throw IoError("matrix header: expected \"m n\"");
  }
  Matrix M(m, n);
  for (int i = 0; i < m; ++i) {
    for (int j = 0; j < n; ++j) {
      if (!(in >> M(i, j))) {
        throw IoError("matrix body: short read at row " + std::to_string(i));
      }
    }
  }
  return M;
}

Matrix read_matrix_file(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw IoError("cannot open " + path);
  return read_matrix(f);
}

void write_matrix(std::ostream& out, const Matrix& M) {
  out << M.rows() << ' ' << M.cols() << '\n';
  out << std::setprecision(17);
  for (Eigen::Index i = 0; i < M.rows(); ++i) {
    for (Eigen::Index j = 0; j < M.cols(); ++j) {
      out << M(i, j) << (j + 1 == M.cols() ? '\n' : ' ');
    }
  }
}

void write_matrix_file(const std::string& path, const Matrix& M) {
  std::ofstream f(path);
  if (!f) throw IoError("cannot open " + path + " for writing");
  write_matrix(f, M);
}

Vector read_vector(std::istream& in) {
  std::vector<double> vals;
  double v = 0.0;
  while (in >> v) vals.push_back(v);
  Vector out(static_cast<Eigen::Index>(vals.size()));
  for (size_t i = 0; i < vals.size(); ++i) out(static_cast<Eigen::Index>(i)) = vals[i];
  return out;
}

Vector read_vector_file(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw IoError("cannot open " + path);
  return read_vector(f);
}

void write_vector(std::ostream& out, const Vector& v) {
  out << std::setprecision(17);
  for (Eigen::Index i = 0; i < v.size(); ++i) out << v(i) << '\n';
}

void write_vector_file(const std::string& path, const Vector& v) {
  std::ofstream f(path);
  if (!f) throw IoError("cannot open " + path + " for writing");
  write_vector(f, v);
}

}  // namespace l1stab
