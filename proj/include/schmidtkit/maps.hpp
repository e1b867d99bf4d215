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

#include <cstdint>
#include <functional>
#include <optional>

#include "schmidtkit/states.hpp"

namespace schmidtkit {

/// Linear Hermiticity-preserving map M_{N_in} -> M_{N_out}, stored by its
/// Choi matrix C = (1 (x) L)(|Psi+><Psi+|) with |Psi+> on H_{N_in} (x) H_{N_in}.
/// C carries the bipartite index (N_in, N_out).
class MatrixMap {
 public:
  /// Throws NotHermitianError if C is not Hermitian within 1e-12.
  MatrixMap(ComplexMatrix choi, int n_in, int n_out);

  int n_in() const { return n_in_; }
  int n_out() const { return n_out_; }
  const ComplexMatrix& choi() const { return choi_; }
  BipartiteIndex choi_index() const { return {n_in_, n_out_}; }

  /// L(X) = N_in Tr_A[(X^T (x) 1) C].
  ComplexMatrix operator()(const ComplexMatrix& x) const;

 private:
  ComplexMatrix choi_;
  int n_in_;
  int n_out_;
};

struct PositivityClass {
  int k_positive_up_to = 0;
  bool completely_positive = false;
};

namespace maps {

MatrixMap map_from_choi(const ComplexMatrix& choi, int n_in, int n_out);

/// Builds the Choi matrix by evaluating `action` on every matrix unit |i><j|.
MatrixMap map_from_action(int n_in, int n_out,
                          const std::function<ComplexMatrix(const ComplexMatrix&)>& action);

MatrixMap identity_map(int n);

/// X -> Tr(X) 1 - p X.
MatrixMap reduction_family(int n, double p);

/// X -> X^T in the computational basis.
MatrixMap transpose_map(int n);

ComplexMatrix apply_map(const MatrixMap& map, const ComplexMatrix& x);

/// (1 (x) L) on an operator over H_A (x) H_{N_in}: each d_b x d_b block is
/// replaced by its image. Returns an operator with index (d_a, N_out).
ComplexMatrix apply_id_tensor_map(const MatrixMap& map, const ComplexMatrix& rho, BipartiteIndex idx);
ComplexMatrix apply_id_tensor_map(const MatrixMap& map, const DensityMatrix& rho);

/// Hilbert-Schmidt adjoint: Tr[A^dagger L(B)] = Tr[L^dagger(A^dagger) B].
MatrixMap adjoint_map(const MatrixMap& map);

/// Positivity range of the reduction family: k-positive exactly for
/// 1/(k+1) < p <= 1/k, capped at N (N-positive means completely positive).
PositivityClass lambda_p_class(int n, double p);

/// sum_{n,m} sqrt(mu_n mu_m) <b_n| L(|a_n><a_m|) |b_m>. `a` and `b` hold the
/// vectors as orthonormal columns; `mu` is a probability vector.
double kpos_form(const MatrixMap& map, const ComplexMatrix& a, const ComplexMatrix& b,
                 const RealVector& mu);

struct ProbeOptions {
  int restarts = 50;
  int max_iters = 500;
  double step = 0.5;  // initial step length for the backtracking line search
  std::uint64_t seed = 0;
};

struct KPositivityViolation {
  PureBipartiteState state;  // maximally entangled Schmidt rank k, on H_{N_in} (x) H_{N_in}
  double min_eigenvalue;     // of (1 (x) L)(|state><state|)
  int restart;               // restart that produced it
};

/// Eigenvalues below this count as a violation of positivity.
inline constexpr double kNegativityThreshold = -1e-8;

/// One-sided search for a maximally entangled Schmidt rank k vector Psi_k with
/// (1 (x) L)(|Psi_k><Psi_k|) not positive. Minimizes the smallest eigenvalue
/// over pairs of N_in x k isometries by projected gradient descent with a
/// polar retraction. Returns the most negative value over all restarts when
/// it is below kNegativityThreshold. std::nullopt proves nothing.
std::optional<KPositivityViolation> kpositivity_probe(const MatrixMap& map, int k,
                                                      const ProbeOptions& opts = {});

}  // namespace maps
}  // namespace schmidtkit
