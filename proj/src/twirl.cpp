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

#include "schmidtkit/twirl.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <deque>
#include <string>

#include "schmidtkit/random.hpp"

namespace schmidtkit {

double PureEnsemble::total_probability() const {
  double total = 0.0;
  for (const auto& m : members) total += m.probability;
  return total;
}

ComplexMatrix PureEnsemble::mixture() const {
  if (members.empty()) throw InvalidArgument("PureEnsemble: empty ensemble");
  const int d = members.front().state.index().dim();
  ComplexMatrix out = ComplexMatrix::Zero(d, d);
  for (const auto& m : members) {
    const auto& v = m.state.amplitudes();
    out.noalias() += m.probability * (v * v.adjoint());
  }
  return out;
}

int PureEnsemble::max_schmidt_rank(double rank_tol) const {
  int r = 0;
  for (const auto& m : members) r = std::max(r, states::schmidt_rank(m.state, rank_tol));
  return r;
}

void PureEnsemble::validate() const {
  if (members.empty()) throw InvariantViolation("nonempty_ensemble", 1.0);
  const auto idx = members.front().state.index();
  for (const auto& m : members) {
    if (!(m.probability >= 0.0)) throw InvariantViolation("nonnegative_weights", -m.probability);
    if (!(m.state.index() == idx)) throw InvariantViolation("common_bipartition", 1.0);
  }
  const double dev = std::abs(total_probability() - 1.0);
  if (dev > 1e-10) throw InvariantViolation("weights_sum_to_one", dev);
}

namespace twirl {

namespace {

int require_square_bipartition(const DensityMatrix& rho, const char* what) {
  const auto idx = rho.index();
  if (!idx.square()) throw DimensionError(std::string(what) + ": needs d_a = d_b");
  return idx.d_a;
}

int isqrt_exact(int v) {
  int r = static_cast<int>(std::lround(std::sqrt(double(v))));
  return r * r == v ? r : -1;
}

// Pair routing for two copies: A1 A2 B1 B2 <-> A1 B1 A2 B2 (self-inverse).
constexpr std::array<int, 4> kPairOrder{0, 2, 1, 3};
// Simultaneous A1<->A2, B1<->B2 swap.
constexpr std::array<int, 4> kCopySwap{1, 0, 3, 2};

ComplexMatrix local_pair(const ComplexMatrix& u) { return linalg::kron(u, ComplexMatrix(u.conjugate())); }

ComplexMatrix canonical_phase(ComplexMatrix u) {
  for (Eigen::Index c = 0; c < u.cols(); ++c)
    for (Eigen::Index r = 0; r < u.rows(); ++r)
      if (std::abs(u(r, c)) > 1e-9) {
        const Complex z = u(r, c);
        u *= std::conj(z) / std::abs(z);
        return u;
      }
  return u;
}

}  // namespace

ComplexMatrix twirl_projection(const ComplexMatrix& x, int n) {
  if (n < 2) throw InvalidArgument("twirl: N must be at least 2");
  const int d = n * n;
  if (x.rows() != d || x.cols() != d) throw DimensionError("twirl: operator must be N^2 x N^2");
  const ComplexMatrix p = states::max_entangled(n).projector();
  const Complex on_p = (p * x).trace();
  const Complex rest = (x.trace() - on_p) / double(d - 1);
  return on_p * p + rest * (ComplexMatrix::Identity(d, d) - p);
}

DensityMatrix twirl_exact(const DensityMatrix& rho) {
  const int n = require_square_bipartition(rho, "twirl_exact");
  double f = states::overlap(rho.matrix(), states::max_entangled(n).amplitudes());
  f = std::clamp(f, 0.0, 1.0);
  return states::isotropic(n, f);
}

ComplexMatrix haar_unitary(int n, std::uint64_t seed) {
  if (n < 1) throw InvalidArgument("haar_unitary: N must be positive");
  Rng rng(seed);
  return random_haar_unitary(n, rng);
}

DensityMatrix twirl_mc(const DensityMatrix& rho, int samples, std::uint64_t seed) {
  const int n = require_square_bipartition(rho, "twirl_mc");
  if (samples < 1) throw InvalidArgument("twirl_mc: need at least one sample");
  const int d = n * n;
  ComplexMatrix acc = ComplexMatrix::Zero(d, d);
  for (int s = 0; s < samples; ++s) {
    Rng rng(derive_seed(seed, static_cast<std::uint64_t>(s)));
    const ComplexMatrix v = local_pair(random_haar_unitary(n, rng));
    acc.noalias() += v * rho.matrix() * v.adjoint();
  }
  acc /= double(samples);
  return DensityMatrix(std::move(acc), rho.index());
}

UnitaryEnsemble clifford_ensemble_qubit() {
  const double h = 1.0 / std::sqrt(2.0);
  ComplexMatrix hadamard(2, 2);
  hadamard << h, h, h, -h;
  ComplexMatrix phase(2, 2);
  phase << 1.0, 0.0, 0.0, Complex(0.0, 1.0);
  const std::array<ComplexMatrix, 2> generators{hadamard, phase};

  UnitaryEnsemble ens;
  ens.unitaries.push_back(ComplexMatrix::Identity(2, 2));
  std::deque<std::size_t> frontier{0};
  while (!frontier.empty()) {
    const ComplexMatrix g = ens.unitaries[frontier.front()];
    frontier.pop_front();
    for (const auto& gen : generators) {
      const ComplexMatrix next = canonical_phase(gen * g);
      bool known = false;
      for (const auto& u : ens.unitaries)
        if ((u - next).cwiseAbs().maxCoeff() < 1e-9) {
          known = true;
          break;
        }
      if (!known) {
        ens.unitaries.push_back(next);
        frontier.push_back(ens.unitaries.size() - 1);
      }
    }
  }
  if (ens.unitaries.size() != 24) throw NumericalError("clifford_ensemble_qubit: group closure failed");
  ens.two_design = true;
  return ens;
}

ComplexMatrix twirl_with_ensemble(const ComplexMatrix& x, const UnitaryEnsemble& ens) {
  const int n = ens.dim();
  if (n < 1) throw InvalidArgument("twirl_with_ensemble: empty ensemble");
  if (x.rows() != n * n || x.cols() != n * n) throw DimensionError("twirl_with_ensemble: dimension mismatch");
  ComplexMatrix acc = ComplexMatrix::Zero(x.rows(), x.cols());
  for (const auto& u : ens.unitaries) {
    const ComplexMatrix v = local_pair(u);
    acc.noalias() += v * x * v.adjoint();
  }
  return acc / double(ens.unitaries.size());
}

DensityMatrix twirl_with_ensemble(const DensityMatrix& rho, const UnitaryEnsemble& ens) {
  require_square_bipartition(rho, "twirl_with_ensemble");
  return DensityMatrix(twirl_with_ensemble(rho.matrix(), ens), rho.index());
}

PureEnsemble twirl_pure_ensemble(const PureBipartiteState& psi, const UnitaryEnsemble& ens) {
  const auto idx = psi.index();
  const int n = ens.dim();
  if (n < 1) throw InvalidArgument("twirl_pure_ensemble: empty ensemble");
  if (!idx.square() || idx.d_a != n) throw DimensionError("twirl_pure_ensemble: dimension mismatch with ensemble");
  PureEnsemble out;
  const double w = 1.0 / double(ens.unitaries.size());
  out.members.reserve(ens.unitaries.size());
  for (const auto& u : ens.unitaries)
    out.members.push_back({w, PureBipartiteState::normalized(local_pair(u) * psi.amplitudes(), idx)});
  return out;
}

DensityMatrix symmetrize_copies(const DensityMatrix& rho) {
  const auto idx = rho.index();
  const int n = idx.square() ? isqrt_exact(idx.d_a) : -1;
  if (n < 1) throw DimensionError("symmetrize_copies: needs dims (N^2, N^2)");
  const std::array<int, 4> dims{n, n, n, n};
  const ComplexMatrix swapped = linalg::permute_subsystems(rho.matrix(), dims, kCopySwap);
  return DensityMatrix((rho.matrix() + swapped) / 2.0, idx);
}

PureEnsemble symmetrize_copies(const PureEnsemble& ens) {
  if (ens.members.empty()) throw InvalidArgument("symmetrize_copies: empty ensemble");
  const auto idx = ens.members.front().state.index();
  const int n = idx.square() ? isqrt_exact(idx.d_a) : -1;
  if (n < 1) throw DimensionError("symmetrize_copies: needs dims (N^2, N^2)");
  const std::array<int, 4> dims{n, n, n, n};
  PureEnsemble out;
  out.members.reserve(2 * ens.members.size());
  for (const auto& m : ens.members) out.members.push_back({m.probability / 2.0, m.state});
  for (const auto& m : ens.members)
    out.members.push_back({m.probability / 2.0,
                           PureBipartiteState(linalg::permute_subsystems(m.state.amplitudes(), dims, kCopySwap), idx)});
  return out;
}

PairCoefficients pair_coefficients(const DensityMatrix& rho) {
  const auto idx = rho.index();
  const int n = idx.square() ? isqrt_exact(idx.d_a) : -1;
  if (n < 2) throw DimensionError("pair_coefficients: needs dims (N^2, N^2) with N >= 2");
  const std::array<int, 4> dims{n, n, n, n};
  const int d = n * n;
  const ComplexMatrix p = states::max_entangled(n).projector();
  const ComplexMatrix q = ComplexMatrix::Identity(d, d) - p;
  auto weight = [&](const ComplexMatrix& first, const ComplexMatrix& second) {
    const ComplexMatrix op = linalg::permute_subsystems(linalg::kron(first, second), dims, kPairOrder);
    return (op * rho.matrix()).trace().real();
  };
  const double dq = d - 1;
  return {weight(q, q) / (dq * dq), weight(p, q) / dq, weight(q, p) / dq, weight(p, p)};
}

ComplexMatrix pair_operator(const PairCoefficients& c, int n) {
  const int d = n * n;
  const ComplexMatrix p = states::max_entangled(n).projector();
  const ComplexMatrix q = ComplexMatrix::Identity(d, d) - p;
  const ComplexMatrix pair_ordered = c.a * linalg::kron(q, q) + c.b_pq * linalg::kron(p, q) +
                                     c.b_qp * linalg::kron(q, p) + c.c * linalg::kron(p, p);
  const std::array<int, 4> dims{n, n, n, n};
  return linalg::permute_subsystems(pair_ordered, dims, kPairOrder);
}

PureBipartiteState two_copy_seed_state() {
  const double r2 = std::sqrt(2.0);
  ComplexVector psi0(2);
  psi0 << std::sqrt(2.0) * std::sqrt(r2 - 1.0), 1.0 - r2;
  ComplexVector e0 = ComplexVector::Zero(2);
  ComplexVector e1 = ComplexVector::Zero(2);
  e0(0) = 1.0;
  e1(1) = 1.0;
  const ComplexVector first = linalg::kron(e0, psi0);  // |0, psi0> on A1 A2 (or B1 B2)
  const ComplexVector second = linalg::kron(e1, e0);   // |1, 0>
  const ComplexVector v = (linalg::kron(first, first) + linalg::kron(second, second)) / r2;
  return PureBipartiteState::normalized(v, {4, 4});
}

TwoCopyConstruction two_copy_construction() {
  const UnitaryEnsemble cliff = clifford_ensemble_qubit();
  const PureBipartiteState seed = two_copy_seed_state();
  const BipartiteIndex idx = seed.index();
  const std::array<int, 4> dims{2, 2, 2, 2};
  const ComplexMatrix id4 = ComplexMatrix::Identity(4, 4);

  // Explicit ensemble: (U1 (x) U1*) on (A1,B1) and (U2 (x) U2*) on (A2,B2).
  const ComplexVector routed = linalg::permute_subsystems(seed.amplitudes(), dims, kPairOrder);
  PureEnsemble pairwise;
  const double w = 1.0 / double(cliff.unitaries.size() * cliff.unitaries.size());
  pairwise.members.reserve(cliff.unitaries.size() * cliff.unitaries.size());
  for (const auto& u1 : cliff.unitaries) {
    const ComplexMatrix v1 = local_pair(u1);
    for (const auto& u2 : cliff.unitaries) {
      const ComplexVector moved = linalg::kron(v1, local_pair(u2)) * routed;
      pairwise.members.push_back(
          {w, PureBipartiteState::normalized(linalg::permute_subsystems(moved, dims, kPairOrder), idx)});
    }
  }

  // Density matrix route: the two pair twirls are applied one after another.
  ComplexMatrix rho = linalg::permute_subsystems(seed.projector(), dims, kPairOrder);
  for (int pair = 0; pair < 2; ++pair) {
    ComplexMatrix acc = ComplexMatrix::Zero(16, 16);
    for (const auto& u : cliff.unitaries) {
      const ComplexMatrix local = pair == 0 ? linalg::kron(local_pair(u), id4) : linalg::kron(id4, local_pair(u));
      acc.noalias() += local * rho * local.adjoint();
    }
    rho = acc / double(cliff.unitaries.size());
  }
  rho = linalg::permute_subsystems(rho, dims, kPairOrder);

  return {symmetrize_copies(pairwise), symmetrize_copies(DensityMatrix(std::move(rho), idx))};
}

}  // namespace twirl
}  // namespace schmidtkit
