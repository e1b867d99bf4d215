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

#pragma once

#include <complex>
#include <span>
#include <vector>

#include <Eigen/Dense>

namespace schmidtkit {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;

/// Entrywise tolerance under which a matrix counts as Hermitian.
inline constexpr double kHermitianTol = 1e-12;

/// Dimensions of a bipartite space H_A (x) H_B.
///
/// Basis state |i>_A (x) |j>_B sits at flat index i * d_b + j. Every module
/// uses this ordering.
struct BipartiteIndex {
  int d_a = 1;
  int d_b = 1;

  constexpr int dim() const { return d_a * d_b; }
  constexpr int flat(int i, int j) const { return i * d_b + j; }
  constexpr bool square() const { return d_a == d_b; }
  friend constexpr bool operator==(const BipartiteIndex&, const BipartiteIndex&) = default;
};

enum class Subsystem { A, B };

namespace linalg {

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b);
ComplexVector kron(const ComplexVector& a, const ComplexVector& b);

/// Traces out `traced` and returns the reduced matrix on the other factor.
ComplexMatrix partial_trace(const ComplexMatrix& rho, BipartiteIndex idx, Subsystem traced);

/// Transposes the B indices only.
ComplexMatrix partial_transpose(const ComplexMatrix& rho, BipartiteIndex idx);

/// Reorders tensor factors. Output factor `k` is input factor `perm[k]`, so
/// for dims {dA1, dA2, dB1, dB2} the permutation {0, 2, 1, 3} maps the order
/// A1 A2 B1 B2 to A1 B1 A2 B2.
ComplexMatrix permute_subsystems(const ComplexMatrix& m, std::span<const int> dims,
                                 std::span<const int> perm);
ComplexVector permute_subsystems(const ComplexVector& v, std::span<const int> dims,
                                 std::span<const int> perm);
std::vector<int> inverse_permutation(std::span<const int> perm);

/// Largest entrywise |H - H^dagger|.
double hermitian_deviation(const ComplexMatrix& h);

/// Throws NotHermitianError when the deviation exceeds `tol`.
void require_hermitian(const ComplexMatrix& h, double tol = kHermitianTol);

struct EigenDecomposition {
  RealVector values;     // ascending
  ComplexMatrix vectors; // orthonormal columns
};

/// Hermitian eigendecomposition. The input is symmetrized as (H + H^dagger)/2
/// after the Hermiticity check.
EigenDecomposition eigh(const ComplexMatrix& h);

struct SingularValueDecomposition {
  ComplexMatrix u;
  RealVector singular_values;  // descending
  ComplexMatrix v;
};

/// Thin SVD, M = U diag(s) V^dagger.
SingularValueDecomposition svd(const ComplexMatrix& m);

double min_eigenvalue(const ComplexMatrix& h);

/// Spectral norm.
double norm2(const ComplexMatrix& m);

/// Closest matrix with orthonormal columns (or rows, when wide) in Frobenius
/// norm: U V^dagger from the thin SVD.
ComplexMatrix polar_factor(const ComplexMatrix& m);

ComplexMatrix projector(const ComplexVector& v);

}  // namespace linalg
}  // namespace schmidtkit
