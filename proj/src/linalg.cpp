// Copyright 2026 The schmidtkit Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "schmidtkit/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

#include "schmidtkit/errors.hpp"

namespace schmidtkit::linalg {

namespace {

void require_square(const ComplexMatrix& m, int dim, const char* what) {
  if (m.rows() != dim || m.cols() != dim) {
    throw DimensionError(std::string(what) + ": expected a " + std::to_string(dim) + "x" +
                         std::to_string(dim) + " matrix, got " + std::to_string(m.rows()) +
                         "x" + std::to_string(m.cols()));
  }
}

// Output flat index -> input flat index for a factor reordering.
std::vector<Eigen::Index> permutation_table(std::span<const int> dims, std::span<const int> perm) {
  const auto n = dims.size();
  if (perm.size() != n || n == 0) {
    throw InvalidArgument("permute_subsystems: permutation length must match the number of factors");
  }
  std::vector<bool> seen(n, false);
  for (int p : perm) {
    if (p < 0 || static_cast<std::size_t>(p) >= n || seen[p]) {
      throw InvalidArgument("permute_subsystems: not a permutation");
    }
    seen[p] = true;
  }
  Eigen::Index total = 1;
  for (int d : dims) {
    if (d <= 0) throw InvalidArgument("permute_subsystems: factor dimensions must be positive");
    total *= d;
  }

  // Row-major strides of the input ordering.
  std::vector<Eigen::Index> in_stride(n, 1);
  for (std::size_t k = n - 1; k > 0; --k) in_stride[k - 1] = in_stride[k] * dims[k];

  std::vector<Eigen::Index> table(total);
  std::vector<int> digits(n, 0);  // output multi-index
  for (Eigen::Index out = 0; out < total; ++out) {
    Eigen::Index in = 0;
    for (std::size_t k = 0; k < n; ++k) in += digits[k] * in_stride[perm[k]];
    table[out] = in;
    for (std::size_t k = n; k-- > 0;) {
      if (++digits[k] < dims[perm[k]]) break;
      digits[k] = 0;
    }
  }
  return table;
}

}  // namespace

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
  ComplexMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

ComplexVector kron(const ComplexVector& a, const ComplexVector& b) {
  ComplexVector out(a.size() * b.size());
  for (Eigen::Index i = 0; i < a.size(); ++i) out.segment(i * b.size(), b.size()) = a(i) * b;
  return out;
}

ComplexMatrix partial_trace(const ComplexMatrix& rho, BipartiteIndex idx, Subsystem traced) {
  require_square(rho, idx.dim(), "partial_trace");
  if (traced == Subsystem::B) {
    ComplexMatrix out = ComplexMatrix::Zero(idx.d_a, idx.d_a);
    for (int i = 0; i < idx.d_a; ++i)
      for (int k = 0; k < idx.d_a; ++k)
        out(i, k) = rho.block(i * idx.d_b, k * idx.d_b, idx.d_b, idx.d_b).trace();
    return out;
  }
  ComplexMatrix out = ComplexMatrix::Zero(idx.d_b, idx.d_b);
  for (int i = 0; i < idx.d_a; ++i) out += rho.block(i * idx.d_b, i * idx.d_b, idx.d_b, idx.d_b);
  return out;
}

ComplexMatrix partial_transpose(const ComplexMatrix& rho, BipartiteIndex idx) {
  require_square(rho, idx.dim(), "partial_transpose");
  ComplexMatrix out(rho.rows(), rho.cols());
  for (int i = 0; i < idx.d_a; ++i)
    for (int k = 0; k < idx.d_a; ++k)
      out.block(i * idx.d_b, k * idx.d_b, idx.d_b, idx.d_b) =
          rho.block(i * idx.d_b, k * idx.d_b, idx.d_b, idx.d_b).transpose();
  return out;
}

ComplexMatrix permute_subsystems(const ComplexMatrix& m, std::span<const int> dims,
                                 std::span<const int> perm) {
  const auto table = permutation_table(dims, perm);
  const auto total = static_cast<Eigen::Index>(table.size());
  require_square(m, static_cast<int>(total), "permute_subsystems");
  ComplexMatrix out(total, total);
  for (Eigen::Index c = 0; c < total; ++c)
    for (Eigen::Index r = 0; r < total; ++r) out(r, c) = m(table[r], table[c]);
  return out;
}

ComplexVector permute_subsystems(const ComplexVector& v, std::span<const int> dims,
                                 std::span<const int> perm) {
  const auto table = permutation_table(dims, perm);
  if (v.size() != static_cast<Eigen::Index>(table.size())) {
    throw DimensionError("permute_subsystems: vector length does not match the factor dimensions");
  }
  ComplexVector out(v.size());
  for (Eigen::Index r = 0; r < v.size(); ++r) out(r) = v(table[r]);
  return out;
}

std::vector<int> inverse_permutation(std::span<const int> perm) {
  std::vector<int> inv(perm.size());
  for (std::size_t k = 0; k < perm.size(); ++k) inv.at(perm[k]) = static_cast<int>(k);
  return inv;
}

double hermitian_deviation(const ComplexMatrix& h) {
  if (h.rows() != h.cols()) return std::numeric_limits<double>::infinity();
  return (h - h.adjoint()).cwiseAbs().maxCoeff();
}

void require_hermitian(const ComplexMatrix& h, double tol) {
  if (h.rows() != h.cols()) throw DimensionError("expected a square matrix");
  if (h.size() == 0) return;
  const double dev = hermitian_deviation(h);
  if (!(dev <= tol)) throw NotHermitianError(dev);
}

EigenDecomposition eigh(const ComplexMatrix& h) {
  require_hermitian(h);
  const ComplexMatrix sym = (h + h.adjoint()) / 2.0;
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(sym);
  if (solver.info() != Eigen::Success) throw NumericalError("eigh: eigensolver did not converge");
  return {solver.eigenvalues(), solver.eigenvectors()};
}

SingularValueDecomposition svd(const ComplexMatrix& m) {
  Eigen::JacobiSVD<ComplexMatrix> solver(m, Eigen::ComputeThinU | Eigen::ComputeThinV);
  return {solver.matrixU(), solver.singularValues(), solver.matrixV()};
}

double min_eigenvalue(const ComplexMatrix& h) {
  require_hermitian(h);
  const ComplexMatrix sym = (h + h.adjoint()) / 2.0;
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(sym, Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) throw NumericalError("min_eigenvalue: eigensolver did not converge");
  return solver.eigenvalues()(0);
}

double norm2(const ComplexMatrix& m) {
  if (m.size() == 0) return 0.0;
  Eigen::JacobiSVD<ComplexMatrix> solver(m);
  return solver.singularValues()(0);
}

ComplexMatrix polar_factor(const ComplexMatrix& m) {
  const auto d = svd(m);
  return d.u * d.v.adjoint();
}

ComplexMatrix projector(const ComplexVector& v) { return v * v.adjoint(); }

}  // namespace schmidtkit::linalg
