/*
 * Copyright 2026 The mfpt Authors.
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 *
 * SPDX-License-Identifier: Apache-2.0
 */

#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>

#include "mfpt/chain.hpp"
#include "mfpt/error.hpp"

namespace mfpt {
namespace {

bool next_content_line(std::istream& in, std::string& line, std::size_t& lineno) {
  while (std::getline(in, line)) {
    ++lineno;
    if (line.find_first_not_of(" \t\r") != std::string::npos) return true;
  }
  return false;
}

double parse_number(const std::string& token, std::size_t lineno) {
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(token, &used);
  } catch (const std::exception&) {
    throw ParseError(lineno, "not a number: '" + token + "'");
  }
  if (used != token.size()) {
    throw ParseError(lineno, "not a number: '" + token + "'");
  }
  return v;
}

}  // namespace

Matrix read_dense_txt(std::istream& in) {
  std::string line;
  std::size_t lineno = 0;
  if (!next_content_line(in, line, lineno)) {
    throw ParseError(lineno + 1, "missing dimension line");
  }
  long n = 0;
  {
    std::istringstream hdr(line);
    std::string token, extra;
    hdr >> token;
    std::size_t used = 0;
    try {
      n = std::stol(token, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used != token.size() || used == 0 || (hdr >> extra)) {
      throw ParseError(lineno, "expected a single integer dimension");
    }
    if (n < 1) throw ParseError(lineno, "dimension must be positive");
  }

  Matrix m(n, n);
  for (long i = 0; i < n; ++i) {
    if (!next_content_line(in, line, lineno)) {
      throw ParseError(lineno + 1, "expected " + std::to_string(n) +
                                       " rows, found " + std::to_string(i));
    }
    std::istringstream row(line);
    std::string token;
    long j = 0;
    while (row >> token) {
      if (j >= n) {
        throw ParseError(lineno, "too many entries (expected " +
                                     std::to_string(n) + ")");
      }
      m(i, j++) = parse_number(token, lineno);
    }
    if (j != n) {
      throw ParseError(lineno, "expected " + std::to_string(n) +
                                   " entries, found " + std::to_string(j));
    }
  }
  if (next_content_line(in, line, lineno)) {
    throw ParseError(lineno, "trailing content after matrix");
  }
  return m;
}

Matrix read_dense_txt_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::kIo, "cannot open '" + path + "'");
  return read_dense_txt(in);
}

void write_dense_txt(std::ostream& out, const Matrix& m) {
  out << m.rows() << '\n';
  char buf[32];
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      std::snprintf(buf, sizeof buf, "%.17g", m(i, j));
      if (j) out << ' ';
      out << buf;
    }
    out << '\n';
  }
}

void write_dense_txt_file(const std::string& path, const Matrix& m) {
  std::ofstream out(path);
  if (!out) throw Error(ErrorCode::kIo, "cannot write '" + path + "'");
  write_dense_txt(out, m);
  if (!out) throw Error(ErrorCode::kIo, "write to '" + path + "' failed");
}

}  // namespace mfpt
