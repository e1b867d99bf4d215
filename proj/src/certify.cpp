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

#include "schmidtkit/certify.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "schmidtkit/random.hpp"

namespace schmidtkit {

std::string certificate_kind(const Certificate& cert) {
  struct Visitor {
    std::string operator()(const MapWitness&) const { return "MapWitness"; }
    std::string operator()(const FidelityBound&) const { return "FidelityBound"; }
    std::string operator()(const EnsembleUpper&) const { return "EnsembleUpper"; }
    std::string operator()(const IsotropicExact&) const { return "IsotropicExact"; }
  };
  return std::visit(Visitor{}, cert);
}

namespace certify {

namespace {

int require_square(const DensityMatrix& rho, const char* what) {
  if (!rho.index().square()) throw DimensionError(std::string(what) + ": needs d_a = d_b");
  return rho.index().d_a;
}

using RowMajor = Eigen::Matrix<Complex, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

// (1 (x) U)|Psi+> has coefficient matrix U^T / sqrt(N).
ComplexVector rotated_max_entangled(const ComplexMatrix& u) {
  const auto n = u.rows();
  const double scale = 1.0 / std::sqrt(double(n));
  ComplexVector v(n * n);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j) v(i * n + j) = scale * u(j, i);
  return v;
}

struct Ascent {
  ComplexMatrix u;
  double value;
};

Ascent fidelity_ascent(const ComplexMatrix& rho, ComplexMatrix u, const FidelityOptions& opts) {
  const auto n = u.rows();
  const double scale = 1.0 / std::sqrt(double(n));
  ComplexVector psi = rotated_max_entangled(u);
  double value = states::overlap(rho, psi);
  double step = 1.0;
  for (int iter = 0; iter < opts.max_iters && step > 1e-14; ++iter) {
    // d<psi|rho|psi> = 2 Re <rho psi, d psi>; d psi has coefficient matrix dU^T / sqrt(N).
    const ComplexVector g = rho * psi;
    const ComplexMatrix grad = scale * Eigen::Map<const RowMajor>(g.data(), n, n).transpose();
    bool accepted = false;
    while (step > 1e-14) {
      ComplexMatrix trial = linalg::polar_factor(u + step * grad);
      ComplexVector trial_psi = rotated_max_entangled(trial);
      const double trial_value = states::overlap(rho, trial_psi);
      if (trial_value > value) {
        const double gain = trial_value - value;
        u = std::move(trial);
        psi = std::move(trial_psi);
        value = trial_value;
        step = std::min(2.0 * step, 1e6);
        accepted = gain >= opts.tol;
        break;
      }
      step *= 0.5;
    }
    if (!accepted) break;
  }
  return {u, value};
}

// Euclidean projection onto the probability simplex.
RealVector project_simplex(const RealVector& v) {
  std::vector<double> s(v.data(), v.data() + v.size());
  std::sort(s.begin(), s.end(), std::greater<>());
  double cumulative = 0.0;
  double theta = 0.0;
  for (std::size_t i = 0; i < s.size(); ++i) {
    cumulative += s[i];
    const double t = (cumulative - 1.0) / double(i + 1);
    if (s[i] - t > 0.0) theta = t;
  }
  return (v.array() - theta).max(0.0).matrix();
}

// min_p ||rho - sum_i p_i |psi_i><psi_i|||_F^2 over the simplex (FISTA).
RealVector refit_weights(const ComplexMatrix& rho, const std::vector<ComplexVector>& psis, RealVector p) {
  const auto m = static_cast<Eigen::Index>(psis.size());
  Eigen::MatrixXd gram(m, m);
  RealVector lin(m);
  for (Eigen::Index i = 0; i < m; ++i) {
    lin(i) = states::overlap(rho, psis[i]);
    for (Eigen::Index j = 0; j <= i; ++j) gram(i, j) = gram(j, i) = std::norm(psis[i].dot(psis[j]));
  }
  const double lipschitz = 2.0 * gram.cwiseAbs().rowwise().sum().maxCoeff();
  if (!(lipschitz > 0.0)) return p;
  RealVector y = p;
  double t = 1.0;
  for (int it = 0; it < 500; ++it) {
    const RealVector grad = 2.0 * (gram * y - lin);
    const RealVector next = project_simplex(y - grad / lipschitz);
    const double t_next = 0.5 * (1.0 + std::sqrt(1.0 + 4.0 * t * t));
    y = next + ((t - 1.0) / t_next) * (next - p);
    p = next;
    t = t_next;
  }
  return p;
}

ComplexVector truncate_rank(const ComplexVector& w, BipartiteIndex idx, int k) {
  const ComplexMatrix m = Eigen::Map<const RowMajor>(w.data(), idx.d_a, idx.d_b);
  const auto d = linalg::svd(m);
  const int keep = std::min<int>(k, int(d.singular_values.size()));
  const RowMajor t = d.u.leftCols(keep) * d.singular_values.head(keep).asDiagonal() * d.v.leftCols(keep).adjoint();
  return Eigen::Map<const ComplexVector>(t.data(), w.size());
}

struct Candidate {
  PureEnsemble ensemble;
  double residual;
};

Candidate build_candidate(const DensityMatrix& rho, const ComplexMatrix& truncated) {
  const auto idx = rho.index();
  std::vector<ComplexVector> psis;
  std::vector<double> weights;
  for (Eigen::Index c = 0; c < truncated.cols(); ++c) {
    const double w = truncated.col(c).squaredNorm();
    if (w <= 1e-14) continue;
    psis.push_back(truncated.col(c) / std::sqrt(w));
    weights.push_back(w);
  }
  const double total = std::accumulate(weights.begin(), weights.end(), 0.0);
  RealVector p = Eigen::Map<RealVector>(weights.data(), Eigen::Index(weights.size())) / total;

  auto residual_of = [&](const RealVector& q) {
    ComplexMatrix mix = ComplexMatrix::Zero(rho.dim(), rho.dim());
    for (std::size_t i = 0; i < psis.size(); ++i) mix.noalias() += q(Eigen::Index(i)) * (psis[i] * psis[i].adjoint());
    return (mix - rho.matrix()).norm();
  };
  double residual = residual_of(p);
  const RealVector refit = refit_weights(rho.matrix(), psis, p);
  const double refit_residual = residual_of(refit);
  if (refit_residual < residual) {
    p = refit / refit.sum();
    residual = residual_of(p);
  }

  Candidate out{{}, residual};
  for (std::size_t i = 0; i < psis.size(); ++i) {
    if (p(Eigen::Index(i)) <= 0.0) continue;
    out.ensemble.members.push_back({p(Eigen::Index(i)), PureBipartiteState::normalized(psis[i], idx)});
  }
  // Renormalize after dropping zero weights.
  const double kept = out.ensemble.total_probability();
  for (auto& member : out.ensemble.members) member.probability /= kept;
  return out;
}

// Levenberg-Marquardt on rho ~ sum_i v_i v_i^dagger with v_i = vec(X_i Y_i^T),
// X_i: d_a x k, Y_i: d_b x k. The rank bound holds by construction.
class FactorPolish {
 public:
  FactorPolish(const DensityMatrix& rho, int k, const ComplexMatrix& start)
      : rho_(rho.matrix()), idx_(rho.index()), k_(k), m_(int(start.cols())) {
    const int per = k_ * (idx_.d_a + idx_.d_b);
    theta_ = Eigen::VectorXd::Zero(2 * per * m_);
    for (int i = 0; i < m_; ++i) {
      const ComplexMatrix w = Eigen::Map<const RowMajor>(start.col(i).data(), idx_.d_a, idx_.d_b);
      const auto d = linalg::svd(w);
      const int keep = std::min<int>(k_, int(d.singular_values.size()));
      ComplexMatrix x = ComplexMatrix::Zero(idx_.d_a, k_);
      ComplexMatrix y = ComplexMatrix::Zero(idx_.d_b, k_);
      for (int c = 0; c < keep; ++c) {
        const double s = std::sqrt(d.singular_values(c));
        x.col(c) = s * d.u.col(c);
        y.col(c) = s * d.v.col(c).conjugate();
      }
      store(i, x, y);
    }
  }

  ComplexMatrix vectors() const {
    ComplexMatrix out(idx_.dim(), m_);
    for (int i = 0; i < m_; ++i) out.col(i) = vector_of(theta_, i);
    return out;
  }

  void run(int max_iters, double target) {
    Eigen::VectorXd r = residual(theta_);
    double cost = r.squaredNorm();
    double mu = 1e-3;
    for (int it = 0; it < max_iters && std::sqrt(cost) > target; ++it) {
      const Eigen::MatrixXd j = jacobian(theta_);
      bool improved = false;
      for (int attempt = 0; attempt < 12; ++attempt) {
        Eigen::VectorXd delta;
        if (j.rows() <= j.cols()) {
          Eigen::MatrixXd jjt = j * j.transpose();
          jjt.diagonal().array() += mu;
          delta = -j.transpose() * jjt.ldlt().solve(r);
        } else {
          Eigen::MatrixXd jtj = j.transpose() * j;
          jtj.diagonal().array() += mu;
          delta = -jtj.ldlt().solve(j.transpose() * r);
        }
        const Eigen::VectorXd trial = theta_ + delta;
        const Eigen::VectorXd trial_r = residual(trial);
        const double trial_cost = trial_r.squaredNorm();
        if (std::isfinite(trial_cost) && trial_cost < cost) {
          theta_ = trial;
          r = trial_r;
          cost = trial_cost;
          mu = std::max(mu / 3.0, 1e-15);
          improved = true;
          break;
        }
        mu *= 4.0;
      }
      if (!improved) break;
    }
  }

 private:
  int per_vector() const { return 2 * k_ * (idx_.d_a + idx_.d_b); }

  void store(int i, const ComplexMatrix& x, const ComplexMatrix& y) {
    const int off = i * per_vector();
    const int nx = idx_.d_a * k_;
    const int ny = idx_.d_b * k_;
    for (int t = 0; t < nx; ++t) {
      theta_(off + t) = x(t % idx_.d_a, t / idx_.d_a).real();
      theta_(off + nx + t) = x(t % idx_.d_a, t / idx_.d_a).imag();
    }
    for (int t = 0; t < ny; ++t) {
      theta_(off + 2 * nx + t) = y(t % idx_.d_b, t / idx_.d_b).real();
      theta_(off + 2 * nx + ny + t) = y(t % idx_.d_b, t / idx_.d_b).imag();
    }
  }

  void load(const Eigen::VectorXd& theta, int i, ComplexMatrix& x, ComplexMatrix& y) const {
    const int off = i * per_vector();
    const int nx = idx_.d_a * k_;
    const int ny = idx_.d_b * k_;
    x.resize(idx_.d_a, k_);
    y.resize(idx_.d_b, k_);
    for (int t = 0; t < nx; ++t) x(t % idx_.d_a, t / idx_.d_a) = Complex(theta(off + t), theta(off + nx + t));
    for (int t = 0; t < ny; ++t)
      y(t % idx_.d_b, t / idx_.d_b) = Complex(theta(off + 2 * nx + t), theta(off + 2 * nx + ny + t));
  }

  ComplexVector vector_of(const Eigen::VectorXd& theta, int i) const {
    ComplexMatrix x, y;
    load(theta, i, x, y);
    const RowMajor w = x * y.transpose();
    return Eigen::Map<const ComplexVector>(w.data(), idx_.dim());
  }

  // Hermitian d x d -> real d^2 vector with the Frobenius norm preserved.
  Eigen::VectorXd flatten(const ComplexMatrix& h) const {
    const int d = idx_.dim();
    Eigen::VectorXd out(d * d);
    int t = 0;
    const double r2 = std::sqrt(2.0);
    for (int p = 0; p < d; ++p) {
      out(t++) = h(p, p).real();
      for (int q = p + 1; q < d; ++q) {
        out(t++) = r2 * h(p, q).real();
        out(t++) = r2 * h(p, q).imag();
      }
    }
    return out;
  }

  Eigen::VectorXd residual(const Eigen::VectorXd& theta) const {
    ComplexMatrix mix = -rho_;
    for (int i = 0; i < m_; ++i) {
      const ComplexVector v = vector_of(theta, i);
      mix.noalias() += v * v.adjoint();
    }
    return flatten(mix);
  }

  Eigen::MatrixXd jacobian(const Eigen::VectorXd& theta) const {
    const int d = idx_.dim();
    Eigen::MatrixXd j(d * d, theta.size());
    const int nx = idx_.d_a * k_;
    const int ny = idx_.d_b * k_;
    const Complex unit_i(0.0, 1.0);
    for (int i = 0; i < m_; ++i) {
      ComplexMatrix x, y;
      load(theta, i, x, y);
      const ComplexVector v = vector_of(theta, i);
      const int off = i * per_vector();
      auto column = [&](const ComplexVector& dv) { return flatten(dv * v.adjoint() + v * dv.adjoint()); };
      for (int t = 0; t < nx; ++t) {
        const int a = t % idx_.d_a;
        const int c = t / idx_.d_a;
        ComplexVector dv = ComplexVector::Zero(d);
        dv.segment(a * idx_.d_b, idx_.d_b) = y.col(c);
        j.col(off + t) = column(dv);
        j.col(off + nx + t) = column(unit_i * dv);
      }
      for (int t = 0; t < ny; ++t) {
        const int b = t % idx_.d_b;
        const int c = t / idx_.d_b;
        ComplexVector dv = ComplexVector::Zero(d);
        for (int a = 0; a < idx_.d_a; ++a) dv(a * idx_.d_b + b) = x(a, c);
        j.col(off + 2 * nx + t) = column(dv);
        j.col(off + 2 * nx + ny + t) = column(unit_i * dv);
      }
    }
    return j;
  }

  const ComplexMatrix& rho_;
  BipartiteIndex idx_;
  int k_;
  int m_;
  Eigen::VectorXd theta_;
};

double ensemble_residual(const PureEnsemble& ens, const DensityMatrix& rho) {
  return (ens.mixture() - rho.matrix()).norm();
}

}  // namespace

std::optional<MapWitness> sn_lower_via_map(const DensityMatrix& rho, int k) {
  const int n = require_square(rho, "sn_lower_via_map");
  if (k < 1 || k >= n) throw InvalidArgument("sn_lower_via_map: need 1 <= k < N");
  const double p = 1.0 / double(k);
  const double min_eig = linalg::min_eigenvalue(maps::apply_id_tensor_map(maps::reduction_family(n, p), rho));
  if (!(min_eig < maps::kNegativityThreshold)) return std::nullopt;
  return MapWitness{"reduction", n, p, k, min_eig};
}

std::optional<MapWitness> peres_witness(const DensityMatrix& rho) {
  const int n = require_square(rho, "peres_witness");
  const double min_eig = linalg::min_eigenvalue(linalg::partial_transpose(rho.matrix(), rho.index()));
  if (!(min_eig < maps::kNegativityThreshold)) return std::nullopt;
  return MapWitness{"transpose", n, std::nullopt, 1, min_eig};
}

FidelityBound fidelity_max(const DensityMatrix& rho, const FidelityOptions& opts) {
  const int n = require_square(rho, "fidelity_max");
  if (opts.restarts < 1) throw InvalidArgument("fidelity_max: need at least one restart");
  std::optional<Ascent> best;
  for (int r = 0; r < opts.restarts; ++r) {
    Rng rng(derive_seed(opts.seed, static_cast<std::uint64_t>(r)));
    Ascent run = fidelity_ascent(rho.matrix(), random_haar_unitary(n, rng), opts);
    if (!best || run.value > best->value) best = std::move(run);
  }
  PureBipartiteState maximizer = PureBipartiteState::normalized(rotated_max_entangled(best->u), {n, n});
  const double f_hat = std::clamp(states::overlap(rho.matrix(), maximizer.amplitudes()), 0.0, 1.0);
  return FidelityBound{f_hat, std::move(maximizer), fidelity_to_sn_bound(f_hat, n)};
}

int fidelity_to_sn_bound(double f_hat, int n) {
  if (n < 1) throw InvalidArgument("fidelity_to_sn_bound: N must be positive");
  if (!(f_hat >= 0.0 && f_hat <= 1.0 + 1e-9)) {
    throw InvalidArgument("fidelity_to_sn_bound: fidelity outside [0, 1]: " + std::to_string(f_hat));
  }
  for (int k = 1; k < n; ++k)
    if (f_hat <= double(k) / n + 1e-9) return k;
  return n;
}

int isotropic_sn(int n, double fidelity) {
  if (n < 2) throw InvalidArgument("isotropic_sn: N must be at least 2");
  if (!(fidelity >= 0.0 && fidelity <= 1.0)) {
    throw InvalidArgument("isotropic_sn: F must lie in [0, 1], got " + std::to_string(fidelity));
  }
  for (int k = 1; k < n; ++k)
    if (fidelity <= double(k) / n + 1e-12) return k;
  return n;
}

EnsembleUpper isotropic_decomposition(int n, int k) {
  if (n != 2 || k < 1 || k > 2) {
    throw InvalidArgument("isotropic_decomposition: only N = 2 with k in {1, 2} has an explicit ensemble");
  }
  PureEnsemble ens = twirl::twirl_pure_ensemble(states::psi_k(n, k), twirl::clifford_ensemble_qubit());
  const DensityMatrix target = states::isotropic(n, double(k) / n);
  const double residual = ensemble_residual(ens, target);
  return EnsembleUpper{std::move(ens), k, residual, 1e-10};
}

int tensor_copy_bound(double fidelity, int n, int copies) {
  if (copies < 1) throw InvalidArgument("tensor_copy_bound: need at least one copy");
  if (!(fidelity >= 0.0 && fidelity <= 1.0)) throw InvalidArgument("tensor_copy_bound: F must lie in [0, 1]");
  const double f = std::pow(fidelity, copies);
  long long dim = 1;
  for (int c = 0; c < copies; ++c) dim *= n;
  if (dim > std::numeric_limits<int>::max()) throw InvalidArgument("tensor_copy_bound: dimension overflow");
  return fidelity_to_sn_bound(f, int(dim));
}

SearchOutcome ensemble_search(const DensityMatrix& rho, int k, const SearchOptions& opts) {
  const auto idx = rho.index();
  if (k < 1 || k > std::min(idx.d_a, idx.d_b)) throw InvalidArgument("ensemble_search: need 1 <= k <= min(d_a, d_b)");
  if (opts.restarts < 1) throw InvalidArgument("ensemble_search: need at least one restart");

  // rho = B B^dagger from the eigendecomposition.
  const auto eig = linalg::eigh(rho.matrix());
  const double cutoff = 1e-13 * std::max(eig.values.maxCoeff(), 1e-300);
  std::vector<Eigen::Index> kept;
  for (Eigen::Index i = 0; i < eig.values.size(); ++i)
    if (eig.values(i) > cutoff) kept.push_back(i);
  const auto rank = static_cast<int>(kept.size());
  ComplexMatrix b(rho.dim(), rank);
  for (int c = 0; c < rank; ++c) b.col(c) = std::sqrt(eig.values(kept[c])) * eig.vectors.col(kept[c]);

  const int local = std::min(idx.d_a, idx.d_b);
  const int m = std::max(opts.m_vectors.value_or(2 * local * local), rank);

  SearchOutcome outcome;
  outcome.best_residual = std::numeric_limits<double>::infinity();
  constexpr int kCheckEvery = 10;
  constexpr int kStallWindow = 100;
  constexpr int kPolishIters = 200;
  auto try_accept = [&](Candidate& cand) {
    if (!(cand.residual < opts.tol) || !verify_decomposition(cand.ensemble, rho, k, opts.tol)) return false;
    outcome.best_residual = cand.residual;
    outcome.certificate = EnsembleUpper{std::move(cand.ensemble), k, cand.residual, opts.tol};
    return true;
  };
  for (int r = 0; r < opts.restarts; ++r) {
    ++outcome.restarts_run;
    Rng rng(derive_seed(opts.seed, static_cast<std::uint64_t>(r)));
    // Rows orthonormal: B * coeffs reproduces rho exactly before truncation.
    ComplexMatrix coeffs = random_isometry(m, rank, rng).adjoint();
    ComplexMatrix truncated(rho.dim(), m);
    double window_start = std::numeric_limits<double>::infinity();
    for (int iter = 1; iter <= opts.max_iters; ++iter) {
      const ComplexMatrix w = b * coeffs;
      for (int c = 0; c < m; ++c) truncated.col(c) = truncate_rank(w.col(c), idx, k);
      if (iter % kCheckEvery == 0 || iter == opts.max_iters) {
        Candidate cand = build_candidate(rho, truncated);
        outcome.best_residual = std::min(outcome.best_residual, cand.residual);
        if (try_accept(cand)) return outcome;
        // Sublinear stall: hand over to the second-order polish.
        if (iter % kStallWindow == 0) {
          if (cand.residual > 0.98 * window_start) break;
          window_start = cand.residual;
        }
      }
      coeffs = linalg::polar_factor(b.adjoint() * truncated);
    }

    FactorPolish polish(rho, k, truncated);
    polish.run(kPolishIters, 0.01 * opts.tol);
    Candidate cand = build_candidate(rho, polish.vectors());
    outcome.best_residual = std::min(outcome.best_residual, cand.residual);
    if (try_accept(cand)) return outcome;
  }
  return outcome;
}

bool verify_decomposition(const PureEnsemble& ens, const DensityMatrix& rho, int k, double tol) {
  if (ens.members.empty()) return false;
  try {
    ens.validate();
  } catch (const InvalidArgument&) {
    return false;
  }
  if (!(ens.members.front().state.index() == rho.index())) return false;
  if (!(ensemble_residual(ens, rho) <= tol)) return false;
  return ens.max_schmidt_rank() <= k;
}

bool verify_certificate(const Certificate& cert, const DensityMatrix& rho) {
  const auto idx = rho.index();
  struct Visitor {
    const DensityMatrix& rho;
    BipartiteIndex idx;

    bool operator()(const MapWitness& w) const {
      if (!idx.square() || idx.d_a != w.n || !(w.min_eigenvalue < maps::kNegativityThreshold)) return false;
      double recomputed = 0.0;
      if (w.map == "reduction") {
        if (!w.p || w.k < 1 || w.k >= w.n) return false;
        if (maps::lambda_p_class(w.n, *w.p).k_positive_up_to < w.k) return false;
        recomputed = linalg::min_eigenvalue(maps::apply_id_tensor_map(maps::reduction_family(w.n, *w.p), rho));
      } else if (w.map == "transpose") {
        if (w.k != 1) return false;
        recomputed = linalg::min_eigenvalue(linalg::partial_transpose(rho.matrix(), idx));
      } else {
        return false;
      }
      return std::abs(recomputed - w.min_eigenvalue) <= 1e-10;
    }

    bool operator()(const FidelityBound& f) const {
      if (!idx.square() || !(f.maximizer.index() == idx)) return false;
      const int n = idx.d_a;
      const ComplexMatrix reduced = linalg::partial_trace(f.maximizer.projector(), idx, Subsystem::B);
      const ComplexMatrix mixed = ComplexMatrix::Identity(n, n) / double(n);
      if ((reduced - mixed).cwiseAbs().maxCoeff() > 1e-8) return false;
      if (std::abs(states::overlap(rho.matrix(), f.maximizer.amplitudes()) - f.f_hat) > 1e-10) return false;
      return f.implied_lower_bound == fidelity_to_sn_bound(f.f_hat, n);
    }

    bool operator()(const EnsembleUpper& e) const {
      if (!verify_decomposition(e.ensemble, rho, e.k, e.tolerance)) return false;
      return std::abs(ensemble_residual(e.ensemble, rho) - e.residual) <= 1e-9;
    }

    bool operator()(const IsotropicExact& iso) const {
      if (!idx.square() || idx.d_a != iso.n) return false;
      if (!(iso.fidelity >= 0.0 && iso.fidelity <= 1.0)) return false;
      if ((states::isotropic(iso.n, iso.fidelity).matrix() - rho.matrix()).norm() > 1e-10) return false;
      return iso.k == isotropic_sn(iso.n, iso.fidelity);
    }
  };
  return std::visit(Visitor{rho, idx}, cert);
}

SnReport analyze(const DensityMatrix& rho, const AnalyzeOptions& opts) {
  const int n = require_square(rho, "analyze");
  SnReport report;

  if (n >= 2) {
    if (auto w = peres_witness(rho)) {
      report.lower_bound = std::max(report.lower_bound, w->implied_lower_bound());
      report.certificates.emplace_back(std::move(*w));
    }
    for (int k = 1; k < n; ++k) {
      if (auto w = sn_lower_via_map(rho, k)) {
        report.lower_bound = std::max(report.lower_bound, w->implied_lower_bound());
        report.certificates.emplace_back(std::move(*w));
      }
    }
  }

  FidelityOptions fid = opts.fidelity;
  fid.seed = derive_seed(opts.seed, 1);
  FidelityBound bound = fidelity_max(rho, fid);
  report.lower_bound = std::max(report.lower_bound, bound.implied_lower_bound);
  report.certificates.emplace_back(std::move(bound));

  if (n >= 2) {
    const double f = std::clamp(states::overlap(rho.matrix(), states::max_entangled(n).amplitudes()), 0.0, 1.0);
    if ((states::isotropic(n, f).matrix() - rho.matrix()).norm() <= 1e-10) {
      report.certificates.emplace_back(IsotropicExact{n, f, isotropic_sn(n, f)});
    }
  }

  if (opts.search_upper) {
    const int top = std::min(*opts.search_upper, n);
    for (int k = report.lower_bound; k <= top; ++k) {
      SearchOptions search = opts.search;
      search.seed = derive_seed(opts.seed, 100 + static_cast<std::uint64_t>(k));
      SearchOutcome outcome = ensemble_search(rho, k, search);
      if (outcome.certificate) {
        report.upper_bound = k;
        report.certificates.emplace_back(std::move(*outcome.certificate));
        break;
      }
    }
  }
  return report;
}

}  // namespace certify
}  // namespace schmidtkit
