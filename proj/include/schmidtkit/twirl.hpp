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
#include <vector>

#include "schmidtkit/states.hpp"

namespace schmidtkit {

/// Weighted list of pure states, sum_i p_i |psi_i><psi_i|.
struct PureEnsemble {
  struct Member {
    double probability;
    PureBipartiteState state;
  };
  std::vector<Member> members;

  double total_probability() const;
  /// Unnormalized mixture sum_i p_i |psi_i><psi_i|.
  ComplexMatrix mixture() const;
  /// Largest member Schmidt rank.
  int max_schmidt_rank(double rank_tol = 1e-9) const;
  /// Throws InvariantViolation unless the weights form a probability vector
  /// (1e-10) and all members share one bipartition.
  void validate() const;
};

/// Equal-weight finite set of N x N unitaries.
struct UnitaryEnsemble {
  std::vector<ComplexMatrix> unitaries;
  bool two_design = false;

  int dim() const { return unitaries.empty() ? 0 : int(unitaries.front().rows()); }
};

namespace twirl {

/// Projection of any operator on H_N (x) H_N onto span{P+, 1 - P+}; this is
/// the exact U (x) U* Haar average.
ComplexMatrix twirl_projection(const ComplexMatrix& x, int n);

/// Exact U (x) U* twirl; the result is isotropic(N, <Psi+|rho|Psi+>).
DensityMatrix twirl_exact(const DensityMatrix& rho);

ComplexMatrix haar_unitary(int n, std::uint64_t seed);

/// Monte-Carlo Haar average over `samples` unitaries. Sample s is drawn from
/// its own generator seeded by derive_seed(seed, s), accumulated in order.
DensityMatrix twirl_mc(const DensityMatrix& rho, int samples, std::uint64_t seed);

/// The 24 single-qubit Clifford unitaries modulo global phase. Element 0 is
/// the identity.
UnitaryEnsemble clifford_ensemble_qubit();

/// Average of (U (x) U*) X (U (x) U*)^dagger over the ensemble.
ComplexMatrix twirl_with_ensemble(const ComplexMatrix& x, const UnitaryEnsemble& ens);
DensityMatrix twirl_with_ensemble(const DensityMatrix& rho, const UnitaryEnsemble& ens);

/// {(1/|ens|, (U (x) U*) psi)}. Each member keeps the Schmidt rank of psi.
PureEnsemble twirl_pure_ensemble(const PureBipartiteState& psi, const UnitaryEnsemble& ens);

/// (rho + S rho S^dagger)/2 on (A1 A2):(B1 B2), S swapping A1<->A2 and B1<->B2.
DensityMatrix symmetrize_copies(const DensityMatrix& rho);
PureEnsemble symmetrize_copies(const PureEnsemble& ens);

/// Coefficients of a P (x) Q decomposition of a two-pair state,
/// rho = a Q(x)Q + b_pq P(x)Q + b_qp Q(x)P + c P(x)P, with P = |Psi+><Psi+|,
/// Q = 1 - P, each factor acting on one (A_i, B_i) pair. Only meaningful for
/// states already twirled pairwise; read off by trace overlaps.
struct PairCoefficients {
  double a = 0.0;
  double b_pq = 0.0;
  double b_qp = 0.0;
  double c = 0.0;
};
PairCoefficients pair_coefficients(const DensityMatrix& rho);

/// Operator assembled from PairCoefficients, ordered A1 A2 B1 B2.
ComplexMatrix pair_operator(const PairCoefficients& coeffs, int n);

/// (1/sqrt 2)[|0,psi0>|0,psi0> + |1,0>|1,0>] on (A1 A2):(B1 B2) with
/// psi0 = sqrt(2) sqrt(sqrt(2) - 1)|0> + (1 - sqrt(2))|1>.
PureBipartiteState two_copy_seed_state();

struct TwoCopyConstruction {
  PureEnsemble ensemble;  // 24 * 24 * 2 members
  DensityMatrix mixture;  // obtained from the density matrix directly
};

/// Independent Clifford twirls on (A1, B1) and (A2, B2) of the seed state,
/// followed by copy symmetrization. Both the density matrix and the explicit
/// ensemble are carried through.
TwoCopyConstruction two_copy_construction();

}  // namespace twirl
}  // namespace schmidtkit
