// Copyright 2026 The l1stab authors
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0

#ifndef L1STAB_MATRIX_IO_HPP
#define L1STAB_MATRIX_IO_HPP

#include <iosfwd>
#include <string>

#include "l1stab/linops.hpp"

namespace l1stab {

struct IoError : std::runtime_error {
  explicit IoError(const std::string& what) : std::runtime_error(what) {}
};

// Plain-text matrix format shared by every tool: first line "m n",
// then m lines of n whitespace-separated decimal reals.
Matrix read_matrix(std::istream& in);
Matrix read_matrix_file(const std::string& path);
void write_matrix(std::ostream& out, const Matrix& M);
void write_matrix_file(const std::string& path, const Matrix& M);

// Vectors: one value per line.
Vector read_vector(std::istream& in);
Vector read_vector_file(const std::string& path);
void write_vector(std::ostream& out, const Vector& v);
void write_vector_file(const std::string& path, const Vector& v);

}  // namespace l1stab

#endif  // L1STAB_MATRIX_IO_HPP
