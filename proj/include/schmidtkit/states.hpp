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

#include <optional>

#include "schmidtkit/errors.hpp"
#include "schmidtkit/linalg.hpp"

namespace schmidtkit {

/// Unit-norm vector on H_A (x) H_B.
class PureBipartiteState {
 public:
  /// Throws InvariantViolation unless |amplitudes| = 1 within 1e-10.
  PureBipartiteState(ComplexVector amplitudes, BipartiteIndex idx);

  /// Rescales `v` to unit norm. Throws on the zero vector.
  static PureBipartiteState normalized(const ComplexVector& v, BipartiteIndex idx);

  const ComplexVector& amplitudes() const { return amplitudes_; }
  BipartiteIndex index() const { return idx_; }

  /// d_a x d_b coefficient matrix, entry (i, j) = <i j|psi>.
  ComplexMatrix coefficient_matrix() const;
  ComplexMatrix projector() const { return linalg::projector(amplitudes_); }

 private:
  ComplexVector amplitudes_;
  BipartiteIndex idx_;
};

/// Hermitian, unit trace, positive semidefinite matrix on H_A (x) H_B.
class DensityMatrix {
 public:
  /// Validates every invariant; throws InvariantViolation (or
  /// DimensionError/NotHermitianError) naming the first one that fails.
  DensityMatrix(ComplexMatrix matrix, BipartiteIndex idx);
  explicit DensityMatrix(const PureBipartiteState& psi);

  /// Returns the first failing invariant without throwing.
  static std::optional<InvariantViolation> check(const ComplexMatrix& matrix, BipartiteIndex idx);

  const ComplexMatrix& matrix() const { return matrix_; }
  BipartiteIndex index() const { return idx_; }
  int dim() const { return idx_.dim(); }

 private:
  ComplexMatrix matrix_;
  BipartiteIndex idx_;
};

/// Schmidt form psi = sum_i sqrt(lambda_i) |a_i> (x) |b_i>. All min(d_a, d_b)
/// terms are kept, zero coefficients included.
struct SchmidtDecomposition {
  RealVector coefficients;  // lambda_i, descending, summing to one
  ComplexMatrix left;       // columns a_i
  ComplexMatrix right;      // columns b_i

  /// Number of terms with sqrt(lambda_i) > rank_tol * sqrt(lambda_max).
  int rank(double rank_tol = 1e-9) const;
  ComplexVector reconstruct() const;
};

namespace states {

SchmidtDecomposition schmidt_decompose(const PureBipartiteState& psi);

/// Count of singular values above rank_tol * sigma_max.
int schmidt_rank(const PureBipartiteState& psi, double rank_tol = 1e-9);

/// Same relative threshold as schmidt_rank, applied to an arbitrary
/// (possibly unnormalized) coefficient vector.
int schmidt_rank(const ComplexVector& v, BipartiteIndex idx, double rank_tol = 1e-9);

/// (1/sqrt(N)) sum_i |ii>.
PureBipartiteState max_entangled(int n);

/// (1/sqrt(k)) sum_{i<k} |ii> inside H_N (x) H_N.
PureBipartiteState psi_k(int n, int k);

/// F P+ + (1 - F)/(N^2 - 1) (1 - P+).
DensityMatrix isotropic(int n, double fidelity);

/// (1/N) (sum_i sqrt(lambda_i))^2 for a state on H_N (x) H_N.
double fully_entangled_fraction_pure(const PureBipartiteState& psi);

/// <psi| rho |psi>, real part.
double overlap(const ComplexMatrix& rho, const ComplexVector& psi);

/// rho (x) sigma with factors regrouped as (A1 A2) : (B1 B2).
DensityMatrix tensor(const DensityMatrix& rho, const DensityMatrix& sigma);

/// rho^{(x) m}, ordered A1..Am : B1..Bm.
DensityMatrix tensor_power(const DensityMatrix& rho, int copies);

/// Maximally mixed state 1/(d_a d_b).
DensityMatrix maximally_mixed(BipartiteIndex idx);

}  // namespace states
}  // namespace schmidtkit
