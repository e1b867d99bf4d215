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

#include "schmidtkit/maps.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "schmidtkit/random.hpp"

namespace schmidtkit {

MatrixMap::MatrixMap(ComplexMatrix choi, int n_in, int n_out) : n_in_(n_in), n_out_(n_out) {
  if (n_in < 1 || n_out < 1) throw DimensionError("MatrixMap: dimensions must be positive");
  if (choi.rows() != n_in * n_out || choi.cols() != n_in * n_out) {
    throw DimensionError("MatrixMap: Choi matrix must be (N_in N_out) square");
  }
  linalg::require_hermitian(choi);
  choi_ = (choi + choi.adjoint()) / 2.0;
}

ComplexMatrix MatrixMap::operator()(const ComplexMatrix& x) const {
  if (x.rows() != n_in_ || x.cols() != n_in_) {
    throw DimensionError("apply_map: input must be " + std::to_string(n_in_) + "x" +
                         std::to_string(n_in_));
  }
  ComplexMatrix out = ComplexMatrix::Zero(n_out_, n_out_);
  for (int r = 0; r < n_in_; ++r)
    for (int s = 0; s < n_in_; ++s)
      if (x(r, s) != Complex(0.0))
        out += x(r, s) * choi_.block(r * n_out_, s * n_out_, n_out_, n_out_);
  return double(n_in_) * out;
}

namespace maps {

MatrixMap map_from_choi(const ComplexMatrix& choi, int n_in, int n_out) {
  return MatrixMap(choi, n_in, n_out);
}

MatrixMap map_from_action(int n_in, int n_out,
                          const std::function<ComplexMatrix(const ComplexMatrix&)>& action) {
  ComplexMatrix choi = ComplexMatrix::Zero(n_in * n_out, n_in * n_out);
  for (int i = 0; i < n_in; ++i)
    for (int j = 0; j < n_in; ++j) {
      ComplexMatrix unit = ComplexMatrix::Zero(n_in, n_in);
      unit(i, j) = 1.0;
      const ComplexMatrix image = action(unit);
      if (image.rows() != n_out || image.cols() != n_out) {
        throw DimensionError("map_from_action: image has the wrong shape");
      }
      choi.block(i * n_out, j * n_out, n_out, n_out) = image / double(n_in);
    }
  return MatrixMap(std::move(choi), n_in, n_out);
}

MatrixMap identity_map(int n) {
  return map_from_action(n, n, [](const ComplexMatrix& x) { return x; });
}

MatrixMap reduction_family(int n, double p) {
  if (n < 2) throw InvalidArgument("reduction_family: N must be at least 2");
  return map_from_action(n, n, [n, p](const ComplexMatrix& x) {
    return ComplexMatrix(x.trace() * ComplexMatrix::Identity(n, n) - p * x);
  });
}

MatrixMap transpose_map(int n) {
  if (n < 2) throw InvalidArgument("transpose_map: N must be at least 2");
  return map_from_action(n, n, [](const ComplexMatrix& x) { return ComplexMatrix(x.transpose()); });
}

ComplexMatrix apply_map(const MatrixMap& map, const ComplexMatrix& x) { return map(x); }

ComplexMatrix apply_id_tensor_map(const MatrixMap& map, const ComplexMatrix& rho, BipartiteIndex idx) {
  if (idx.d_b != map.n_in()) {
    throw DimensionError("apply_id_tensor_map: B dimension " + std::to_string(idx.d_b) +
                         " does not match map input dimension " + std::to_string(map.n_in()));
  }
  if (rho.rows() != idx.dim() || rho.cols() != idx.dim()) {
    throw DimensionError("apply_id_tensor_map: operator does not match its bipartition");
  }
  const int d_in = idx.d_b;
  const int d_out = map.n_out();
  ComplexMatrix out(idx.d_a * d_out, idx.d_a * d_out);
  for (int i = 0; i < idx.d_a; ++i)
    for (int j = 0; j < idx.d_a; ++j)
      out.block(i * d_out, j * d_out, d_out, d_out) = map(rho.block(i * d_in, j * d_in, d_in, d_in));
  return out;
}

ComplexMatrix apply_id_tensor_map(const MatrixMap& map, const DensityMatrix& rho) {
  return apply_id_tensor_map(map, rho.matrix(), rho.index());
}

MatrixMap adjoint_map(const MatrixMap& map) {
  const int n_in = map.n_in();
  const int n_out = map.n_out();
  const ComplexMatrix& c = map.choi();
  // <i| L^dagger(|k><l|) |j> = N_in C[(j,l),(i,k)], and the adjoint's Choi
  // entry at ((k,i),(l,j)) is that value over N_out.
  ComplexMatrix adj(n_in * n_out, n_in * n_out);
  const double scale = double(n_in) / double(n_out);
  for (int k = 0; k < n_out; ++k)
    for (int i = 0; i < n_in; ++i)
      for (int l = 0; l < n_out; ++l)
        for (int j = 0; j < n_in; ++j)
          adj(k * n_in + i, l * n_in + j) = scale * c(j * n_out + l, i * n_out + k);
  return MatrixMap(std::move(adj), n_out, n_in);
}

PositivityClass lambda_p_class(int n, double p) {
  if (n < 1) throw InvalidArgument("lambda_p_class: N must be positive");
  if (!(p > 0.0 && p <= 1.0)) {
    throw InvalidArgument("lambda_p_class: p must lie in (0, 1], got " + std::to_string(p));
  }
  // Largest k with p <= 1/k.
  long k = static_cast<long>(std::floor(1.0 / p));
  while (k > 1 && p * double(k) > 1.0) --k;
  while (p * double(k + 1) <= 1.0 && k < n) ++k;
  PositivityClass cls;
  cls.k_positive_up_to = static_cast<int>(std::min<long>(k, n));
  cls.completely_positive = k >= n;
  return cls;
}

namespace {

double orthonormality_defect(const ComplexMatrix& v) {
  const auto k = v.cols();
  return (v.adjoint() * v - ComplexMatrix::Identity(k, k)).cwiseAbs().maxCoeff();
}

constexpr double kOrthonormalTol = 1e-8;

}  // namespace

double kpos_form(const MatrixMap& map, const ComplexMatrix& a, const ComplexMatrix& b,
                 const RealVector& mu) {
  const auto k = a.cols();
  if (b.cols() != k || mu.size() != k || k < 1) {
    throw DimensionError("kpos_form: a, b and mu must have the same length k >= 1");
  }
  if (a.rows() != map.n_in() || b.rows() != map.n_out()) {
    throw DimensionError("kpos_form: vectors do not match the map dimensions");
  }
  if (k > std::min(map.n_in(), map.n_out())) throw DimensionError("kpos_form: k exceeds N");
  if (orthonormality_defect(a) > kOrthonormalTol || orthonormality_defect(b) > kOrthonormalTol) {
    throw InvalidArgument("kpos_form: vector sets must be orthonormal");
  }
  if ((mu.array() < -1e-12).any() || std::abs(mu.sum() - 1.0) > 1e-10) {
    throw InvalidArgument("kpos_form: mu must be a probability vector");
  }
  Complex total = 0.0;
  for (Eigen::Index n = 0; n < k; ++n)
    for (Eigen::Index m = 0; m < k; ++m) {
      const double w = std::sqrt(std::max(mu(n), 0.0) * std::max(mu(m), 0.0));
      if (w == 0.0) continue;
      const ComplexMatrix image = map(a.col(n) * a.col(m).adjoint());
      total += w * b.col(n).dot(image * b.col(m));
    }
  return total.real();
}

namespace {

struct ProbePoint {
  ComplexMatrix a;  // N_in x k
  ComplexMatrix b;  // N_in x k
};

ComplexVector probe_state(const ProbePoint& pt) {
  const auto n = pt.a.rows();
  const double scale = 1.0 / std::sqrt(double(pt.a.cols()));
  ComplexVector psi = ComplexVector::Zero(n * n);
  for (Eigen::Index c = 0; c < pt.a.cols(); ++c)
    psi += scale * linalg::kron(ComplexVector(pt.a.col(c)), ComplexVector(pt.b.col(c)));
  return psi;
}

struct ProbeEval {
  double value;
  double gap;
  ComplexVector eigvec;
};

ProbeEval evaluate(const MatrixMap& map, const ComplexVector& psi) {
  const int n = map.n_in();
  const ComplexMatrix out = apply_id_tensor_map(map, linalg::projector(psi), {n, n});
  const auto eig = linalg::eigh(out);
  const double gap = eig.values.size() > 1 ? eig.values(1) - eig.values(0)
                                           : std::numeric_limits<double>::infinity();
  return {eig.values(0), gap, eig.vectors.col(0)};
}

ProbePoint perturb(const ProbePoint& pt, Rng& rng, double scale) {
  ProbePoint q;
  q.a = linalg::polar_factor(pt.a + scale * random_ginibre(int(pt.a.rows()), int(pt.a.cols()), rng));
  q.b = linalg::polar_factor(pt.b + scale * random_ginibre(int(pt.b.rows()), int(pt.b.cols()), rng));
  return q;
}

struct ProbeRun {
  ComplexVector psi;
  double value;
};

ProbeRun probe_descent(const MatrixMap& map, const MatrixMap& adjoint, int k, const ProbeOptions& opts,
                       Rng& rng) {
  const int n = map.n_in();
  const double inv_sqrt_k = 1.0 / std::sqrt(double(k));
  using RowMajor = Eigen::Matrix<Complex, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

  ProbePoint pt{random_isometry(n, k, rng), random_isometry(n, k, rng)};
  ComplexVector psi = probe_state(pt);
  ProbeEval cur = evaluate(map, psi);
  double step = opts.step;

  for (int iter = 0; iter < opts.max_iters && step > 1e-12; ++iter) {
    if (cur.gap < 1e-10) {
      // Eigenvalue crossing: the min-eigenvalue gradient is ambiguous here.
      pt = perturb(pt, rng, 1e-8);
      psi = probe_state(pt);
      cur = evaluate(map, psi);
    }
    // d lambda_min = 2 Re <W psi, d psi>, W = (1 (x) L^dagger)(v v^dagger).
    const ComplexMatrix w = apply_id_tensor_map(adjoint, linalg::projector(cur.eigvec), {n, map.n_out()});
    const ComplexVector g = w * psi;
    const ComplexMatrix gm = Eigen::Map<const RowMajor>(g.data(), n, n);
    const ComplexMatrix grad_a = inv_sqrt_k * gm * pt.b.conjugate();
    const ComplexMatrix grad_b = inv_sqrt_k * gm.transpose() * pt.a.conjugate();

    bool accepted = false;
    while (step > 1e-12) {
      ProbePoint trial{linalg::polar_factor(pt.a - step * grad_a), linalg::polar_factor(pt.b - step * grad_b)};
      const ComplexVector trial_psi = probe_state(trial);
      const ProbeEval next = evaluate(map, trial_psi);
      if (next.value < cur.value - 1e-15) {
        pt = std::move(trial);
        psi = trial_psi;
        cur = next;
        step = std::min(step * 2.0, 1e3);
        accepted = true;
        break;
      }
      step *= 0.5;
    }
    if (!accepted) break;
  }
  return {psi, cur.value};
}

}  // namespace

std::optional<KPositivityViolation> kpositivity_probe(const MatrixMap& map, int k,
                                                      const ProbeOptions& opts) {
  if (map.n_in() < 1) throw InvalidArgument("kpositivity_probe: empty map");
  if (k < 1 || k > map.n_in()) throw InvalidArgument("kpositivity_probe: need 1 <= k <= N");
  if (opts.restarts < 1) throw InvalidArgument("kpositivity_probe: need at least one restart");
  const MatrixMap adjoint = adjoint_map(map);
  const int n = map.n_in();

  std::optional<KPositivityViolation> best;
  for (int r = 0; r < opts.restarts; ++r) {
    Rng rng(derive_seed(opts.seed, static_cast<std::uint64_t>(r)));
    ProbeRun run = probe_descent(map, adjoint, k, opts, rng);
    if (run.value < kNegativityThreshold && (!best || run.value < best->min_eigenvalue)) {
      best = KPositivityViolation{PureBipartiteState::normalized(run.psi, {n, n}), run.value, r};
    }
  }
  return best;
}

}  // namespace maps
}  // namespace schmidtkit
