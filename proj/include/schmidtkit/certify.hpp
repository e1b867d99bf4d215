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
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "schmidtkit/maps.hpp"
#include "schmidtkit/twirl.hpp"

namespace schmidtkit {

/// (1 (x) L)(rho) has a negative eigenvalue for a map L known to be
/// k-positive, so rho has Schmidt number at least k + 1.
struct MapWitness {
  std::string map;           // "reduction" (L_p) or "transpose"
  int n = 0;
  std::optional<double> p;   // set for the reduction family
  int k = 1;
  double min_eigenvalue = 0.0;

  int implied_lower_bound() const { return k + 1; }
};

/// <Psi|rho|Psi> = f_hat for a maximally entangled Psi; f_hat <= f(rho).
struct FidelityBound {
  double f_hat = 0.0;
  PureBipartiteState maximizer;
  int implied_lower_bound = 1;
};

/// Explicit decomposition of rho into Schmidt rank <= k vectors.
struct EnsembleUpper {
  PureEnsemble ensemble;
  int k = 1;
  double residual = 0.0;   // Frobenius distance of the mixture to rho
  double tolerance = 0.0;  // acceptance threshold the residual was held to
};

/// rho is isotropic with fidelity F, whose Schmidt number is known exactly.
struct IsotropicExact {
  int n = 0;
  double fidelity = 0.0;
  int k = 1;
};

using Certificate = std::variant<MapWitness, FidelityBound, EnsembleUpper, IsotropicExact>;

std::string certificate_kind(const Certificate& cert);

struct SnReport {
  int lower_bound = 1;
  std::optional<int> upper_bound;
  std::vector<Certificate> certificates;
};

namespace certify {

/// Applies L_{p=1/k} to the B side. Returns a witness for SN >= k + 1 iff the
/// smallest eigenvalue is below kNegativityThreshold. Requires 1 <= k < N.
std::optional<MapWitness> sn_lower_via_map(const DensityMatrix& rho, int k);

/// Partial transpose test; a witness certifies SN >= 2.
std::optional<MapWitness> peres_witness(const DensityMatrix& rho);

struct FidelityOptions {
  int restarts = 20;
  int max_iters = 500;
  double tol = 1e-10;
  std::uint64_t seed = 0;
};

/// Multi-start ascent of <Psi_U|rho|Psi_U>, Psi_U = (1 (x) U)|Psi+>, over the
/// unitary group with a polar retraction. The best value found is a lower
/// bound on the fully entangled fraction; optimality is not claimed.
FidelityBound fidelity_max(const DensityMatrix& rho, const FidelityOptions& opts = {});

/// Smallest k with f_hat <= k/N + 1e-9. Schmidt number is at least this k.
int fidelity_to_sn_bound(double f_hat, int n);

/// Schmidt number of isotropic(N, F): the k with (k-1)/N < F <= k/N, right
/// boundary inclusive within 1e-12.
int isotropic_sn(int n, double fidelity);

/// Clifford twirl of psi_k(2, k): Schmidt rank k vectors mixing to
/// isotropic(2, k/2). Only N = 2, k in {1, 2} is supported.
EnsembleUpper isotropic_decomposition(int n, int k);

/// fidelity_to_sn_bound(F^m, N^m): a lower bound on SN(rho_F^{(x) m}).
int tensor_copy_bound(double fidelity, int n, int copies);

struct SearchOptions {
  std::optional<int> m_vectors;  // default 2 N^2, never below rank(rho)
  int restarts = 10;
  int max_iters = 2000;
  double tol = 1e-4;
  std::uint64_t seed = 0;
};

struct SearchOutcome {
  std::optional<EnsembleUpper> certificate;  // set iff a verified decomposition was found
  double best_residual = 0.0;
  int restarts_run = 0;
};

/// Looks for rho = sum_i p_i |psi_i><psi_i| with every psi_i of Schmidt rank
/// <= k. Writing rho = B B^dagger, every ensemble is B times a matrix with
/// orthonormal rows; sweeps alternate between truncating each column to rank
/// k and the Procrustes update of that matrix, and weights are refit by
/// simplex-constrained least squares. Failure proves nothing.
SearchOutcome ensemble_search(const DensityMatrix& rho, int k, const SearchOptions& opts = {});

/// Weights sum to one, the mixture is within `tol` of rho (Frobenius) and
/// every member has Schmidt rank <= k.
bool verify_decomposition(const PureEnsemble& ens, const DensityMatrix& rho, int k, double tol);

/// Recomputes the numeric evidence of a certificate against rho.
bool verify_certificate(const Certificate& cert, const DensityMatrix& rho);

struct AnalyzeOptions {
  std::uint64_t seed = 0;
  FidelityOptions fidelity{};
  std::optional<int> search_upper;  // try decompositions with k = lower..search_upper
  SearchOptions search{};
};

/// Lower bound from the Peres test, the L_{1/k} witnesses and the fidelity
/// route; upper bound from ensemble_search when requested.
SnReport analyze(const DensityMatrix& rho, const AnalyzeOptions& opts = {});

}  // namespace certify
}  // namespace schmidtkit
