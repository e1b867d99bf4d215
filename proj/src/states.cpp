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

#include "schmidtkit/states.hpp"

#include <array>
#include <cmath>
#include <string>

namespace schmidtkit {

namespace {

constexpr double kNormTol = 1e-10;
constexpr double kTraceTol = 1e-10;
constexpr double kPsdTol = 1e-10;

void require_index(BipartiteIndex idx) {
  if (idx.d_a < 1 || idx.d_b < 1) throw DimensionError("bipartite dimensions must be positive");
}

RealVector singular_values_of(const ComplexVector& v, BipartiteIndex idx) {
  using RowMajor = Eigen::Matrix<Complex, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
  const ComplexMatrix m = Eigen::Map<const RowMajor>(v.data(), idx.d_a, idx.d_b);
  return Eigen::JacobiSVD<ComplexMatrix>(m).singularValues();
}

}  // namespace

PureBipartiteState::PureBipartiteState(ComplexVector amplitudes, BipartiteIndex idx)
    : amplitudes_(std::move(amplitudes)), idx_(idx) {
  require_index(idx_);
  if (amplitudes_.size() != idx_.dim()) {
    throw DimensionError("state has " + std::to_string(amplitudes_.size()) +
                         " amplitudes, bipartition needs " + std::to_string(idx_.dim()));
  }
  const double deviation = std::abs(amplitudes_.norm() - 1.0);
  if (!(deviation <= kNormTol)) throw InvariantViolation("unit_norm", deviation);
}

PureBipartiteState PureBipartiteState::normalized(const ComplexVector& v, BipartiteIndex idx) {
  const double n = v.norm();
  if (!(n > 0.0) || !std::isfinite(n)) throw InvalidArgument("cannot normalize the zero vector");
  return PureBipartiteState(v / n, idx);
}

ComplexMatrix PureBipartiteState::coefficient_matrix() const {
  using RowMajor = Eigen::Matrix<Complex, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
  return Eigen::Map<const RowMajor>(amplitudes_.data(), idx_.d_a, idx_.d_b);
}

DensityMatrix::DensityMatrix(ComplexMatrix matrix, BipartiteIndex idx) : idx_(idx) {
  if (auto violation = check(matrix, idx)) throw *violation;
  matrix_ = (matrix + matrix.adjoint()) / 2.0;
}

DensityMatrix::DensityMatrix(const PureBipartiteState& psi)
    : matrix_(psi.projector()), idx_(psi.index()) {}

std::optional<InvariantViolation> DensityMatrix::check(const ComplexMatrix& matrix,
                                                       BipartiteIndex idx) {
  if (idx.d_a < 1 || idx.d_b < 1 || matrix.rows() != idx.dim() || matrix.cols() != idx.dim()) {
    return InvariantViolation("dimensions", std::abs(double(matrix.rows() - idx.dim())));
  }
  if (!matrix.allFinite()) return InvariantViolation("finite_entries", 0.0);
  const double herm = linalg::hermitian_deviation(matrix);
  if (herm > kHermitianTol) return InvariantViolation("hermitian", herm);
  const double trace_dev = std::abs(matrix.trace().real() - 1.0);
  if (trace_dev > kTraceTol) return InvariantViolation("unit_trace", trace_dev);
  const double min_eig = linalg::min_eigenvalue(matrix);
  if (min_eig < -kPsdTol) return InvariantViolation("positive_semidefinite", -min_eig);
  return std::nullopt;
}

int SchmidtDecomposition::rank(double rank_tol) const {
  if (coefficients.size() == 0) return 0;
  const double top = std::sqrt(std::max(coefficients(0), 0.0));
  int r = 0;
  for (Eigen::Index i = 0; i < coefficients.size(); ++i)
    if (std::sqrt(std::max(coefficients(i), 0.0)) > rank_tol * top) ++r;
  return r;
}

ComplexVector SchmidtDecomposition::reconstruct() const {
  ComplexVector out = ComplexVector::Zero(left.rows() * right.rows());
  for (Eigen::Index i = 0; i < coefficients.size(); ++i)
    out += std::sqrt(std::max(coefficients(i), 0.0)) *
           linalg::kron(ComplexVector(left.col(i)), ComplexVector(right.col(i)));
  return out;
}

namespace states {

SchmidtDecomposition schmidt_decompose(const PureBipartiteState& psi) {
  const auto d = linalg::svd(psi.coefficient_matrix());
  // M = U S V^dagger  =>  psi = sum_k s_k u_k (x) conj(v_k).
  return {d.singular_values.array().square().matrix(), d.u, d.v.conjugate()};
}

int schmidt_rank(const PureBipartiteState& psi, double rank_tol) {
  return schmidt_rank(psi.amplitudes(), psi.index(), rank_tol);
}

int schmidt_rank(const ComplexVector& v, BipartiteIndex idx, double rank_tol) {
  require_index(idx);
  if (v.size() != idx.dim()) throw DimensionError("schmidt_rank: vector does not match bipartition");
  const RealVector s = singular_values_of(v, idx);
  if (!(s(0) > 0.0)) throw InvalidArgument("schmidt_rank: zero vector");
  return static_cast<int>((s.array() > rank_tol * s(0)).count());
}

PureBipartiteState max_entangled(int n) {
  if (n < 1) throw InvalidArgument("max_entangled: N must be positive");
  return psi_k(n, n);
}

PureBipartiteState psi_k(int n, int k) {
  if (n < 1) throw InvalidArgument("psi_k: N must be positive");
  if (k < 1 || k > n) throw InvalidArgument("psi_k: need 1 <= k <= N");
  const BipartiteIndex idx{n, n};
  ComplexVector v = ComplexVector::Zero(idx.dim());
  const double amp = 1.0 / std::sqrt(static_cast<double>(k));
  for (int i = 0; i < k; ++i) v(idx.flat(i, i)) = amp;
  return PureBipartiteState(std::move(v), idx);
}

DensityMatrix isotropic(int n, double fidelity) {
  if (n < 2) throw InvalidArgument("isotropic: N must be at least 2");
  if (!(fidelity >= 0.0 && fidelity <= 1.0)) {
    throw InvalidArgument("isotropic: F must lie in [0, 1], got " + std::to_string(fidelity));
  }
  const int d = n * n;
  const ComplexMatrix p = max_entangled(n).projector();
  const double rest = (1.0 - fidelity) / (d - 1);
  ComplexMatrix rho = fidelity * p + rest * (ComplexMatrix::Identity(d, d) - p);
  return DensityMatrix(std::move(rho), {n, n});
}

double fully_entangled_fraction_pure(const PureBipartiteState& psi) {
  const auto idx = psi.index();
  if (!idx.square()) throw DimensionError("fully_entangled_fraction_pure: needs d_a = d_b");
  const double s = singular_values_of(psi.amplitudes(), idx).sum();
  return s * s / idx.d_a;
}

double overlap(const ComplexMatrix& rho, const ComplexVector& psi) {
  return psi.dot(rho * psi).real();
}

DensityMatrix tensor(const DensityMatrix& rho, const DensityMatrix& sigma) {
  const auto r = rho.index();
  const auto s = sigma.index();
  const std::array<int, 4> dims{r.d_a, r.d_b, s.d_a, s.d_b};
  const std::array<int, 4> perm{0, 2, 1, 3};
  ComplexMatrix m = linalg::permute_subsystems(linalg::kron(rho.matrix(), sigma.matrix()), dims, perm);
  return DensityMatrix(std::move(m), {r.d_a * s.d_a, r.d_b * s.d_b});
}

DensityMatrix tensor_power(const DensityMatrix& rho, int copies) {
  if (copies < 1) throw InvalidArgument("tensor_power: need at least one copy");
  DensityMatrix acc = rho;
  for (int c = 1; c < copies; ++c) acc = tensor(acc, rho);
  return acc;
}

DensityMatrix maximally_mixed(BipartiteIndex idx) {
  require_index(idx);
  return DensityMatrix(ComplexMatrix::Identity(idx.dim(), idx.dim()) / double(idx.dim()), idx);
}

}  // namespace states
}  // namespace schmidtkit
