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

#include <gtest/gtest.h>

#include <cmath>

#include "schmidtkit/certify.hpp"
#include "schmidtkit/errors.hpp"
#include "schmidtkit/maps.hpp"
#include "schmidtkit/states.hpp"
#include "schmidtkit/twirl.hpp"
#include "test_support.hpp"

namespace schmidtkit {
namespace {

using testing::max_abs_diff;

DensityMatrix random_separable(int n, int terms, std::mt19937_64& rng) {
  ComplexMatrix rho = ComplexMatrix::Zero(n * n, n * n);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  double total = 0.0;
  for (int t = 0; t < terms; ++t) {
    const double w = u(rng);
    const ComplexVector v = testing::kron_oracle(testing::random_vector(n, rng), testing::random_vector(n, rng));
    rho += w * v * v.adjoint();
    total += w;
  }
  return DensityMatrix(rho / total, {n, n});
}

TEST(MapWitness, IsotropicExamples) {
  const DensityMatrix rho = states::isotropic(4, 0.6);
  const auto w = certify::sn_lower_via_map(rho, 2);
  ASSERT_TRUE(w.has_value());
  EXPECT_NEAR(w->min_eigenvalue, 0.25 - 0.3, 1e-12);
  EXPECT_EQ(w->implied_lower_bound(), 3);
  EXPECT_EQ(w->map, "reduction");
  EXPECT_FALSE(certify::sn_lower_via_map(rho, 3).has_value());
  EXPECT_THROW(certify::sn_lower_via_map(rho, 4), InvalidArgument);
  EXPECT_THROW(certify::sn_lower_via_map(rho, 0), InvalidArgument);
}

TEST(MapWitness, NoneOnSeparable) {
  std::mt19937_64 rng(71);
  for (int trial = 0; trial < 10; ++trial) {
    const DensityMatrix rho = random_separable(3, 5, rng);
    EXPECT_FALSE(certify::sn_lower_via_map(rho, 1).has_value());
    EXPECT_FALSE(certify::peres_witness(rho).has_value());
  }
}

TEST(MapWitness, WitnessScalarIdentity) {
  for (int n = 2; n <= 4; ++n) {
    for (double p : {0.1, 0.4, 1.0}) {
      for (double f : {0.0, 0.5, 1.0}) {
        const Complex t = (maps::reduction_family(n, p).choi() * states::isotropic(n, f).matrix()).trace();
        EXPECT_NEAR(t.real(), 1.0 / n - p * f, 1e-12);
        EXPECT_NEAR(t.imag(), 0.0, 1e-12);
      }
    }
  }
}

TEST(Peres, ThresholdAtHalf) {
  EXPECT_FALSE(certify::peres_witness(states::isotropic(2, 0.5)).has_value());
  const auto w = certify::peres_witness(states::isotropic(2, 0.75));
  ASSERT_TRUE(w.has_value());
  EXPECT_EQ(w->map, "transpose");
  EXPECT_NEAR(w->min_eigenvalue, 0.5 - 0.75, 1e-12);
}

TEST(Fidelity, IsotropicReachesF) {
  certify::FidelityOptions opts;
  opts.seed = 5;
  for (int n = 2; n <= 3; ++n) {
    for (double f : {1.0 / (n * n), 0.5, 0.9}) {
      const auto b = certify::fidelity_max(states::isotropic(n, f), opts);
      EXPECT_GE(b.f_hat, f - 1e-6);
      EXPECT_LE(b.f_hat, f + 1e-9);
      EXPECT_NEAR(states::overlap(states::isotropic(n, f).matrix(), b.maximizer.amplitudes()), b.f_hat, 1e-10);
    }
  }
}

TEST(Fidelity, IsotropicBelowMixedPoint) {
  // Below F = 1/N^2 the best maximally entangled vector is orthogonal to Psi+.
  for (int n = 2; n <= 3; ++n) {
    const double f = 0.05;
    const auto b = certify::fidelity_max(states::isotropic(n, f));
    EXPECT_NEAR(b.f_hat, (1.0 - f) / (n * n - 1), 1e-8);
    EXPECT_EQ(b.implied_lower_bound, 1);
  }
}

TEST(Fidelity, PureStates) {
  ComplexVector v = ComplexVector::Zero(4);
  v(0) = std::sqrt(0.9);
  v(3) = std::sqrt(0.1);
  const auto b = certify::fidelity_max(DensityMatrix(PureBipartiteState(v, {2, 2})));
  EXPECT_NEAR(b.f_hat, 0.8, 1e-8);
  EXPECT_EQ(b.implied_lower_bound, 2);
  EXPECT_NEAR(certify::fidelity_max(DensityMatrix(states::max_entangled(3))).f_hat, 1.0, 1e-9);
}

TEST(Fidelity, NeverExceedsPureOptimum) {
  std::mt19937_64 rng(72);
  certify::FidelityOptions opts;
  opts.restarts = 5;
  for (int trial = 0; trial < 20; ++trial) {
    const int n = 2 + trial % 2;
    const PureBipartiteState psi(testing::random_vector(n * n, rng), {n, n});
    const auto s = states::schmidt_decompose(psi);
    const double root = s.coefficients.cwiseMax(0.0).cwiseSqrt().sum();
    opts.seed = trial;
    const double f_hat = certify::fidelity_max(DensityMatrix(psi), opts).f_hat;
    EXPECT_LE(f_hat, root * root / n + 1e-9);
    EXPECT_GE(f_hat, root * root / n - 1e-6);
  }
}

TEST(Fidelity, RejectsNonSquare) {
  EXPECT_THROW(certify::fidelity_max(states::maximally_mixed({2, 3})), DimensionError);
}

TEST(Bounds, FidelityToSn) {
  EXPECT_EQ(certify::fidelity_to_sn_bound(0.5, 2), 1);
  EXPECT_EQ(certify::fidelity_to_sn_bound(1.0 / 3.0, 3), 1);
  EXPECT_EQ(certify::fidelity_to_sn_bound(1.0, 4), 4);
  EXPECT_EQ(certify::fidelity_to_sn_bound(0.51, 2), 2);
  EXPECT_EQ(certify::fidelity_to_sn_bound(0.0, 3), 1);
  EXPECT_THROW(certify::fidelity_to_sn_bound(1.1, 2), InvalidArgument);
  EXPECT_THROW(certify::fidelity_to_sn_bound(-0.1, 2), InvalidArgument);
  for (int n = 2; n <= 5; ++n)
    for (int k = 1; k <= n; ++k)
      for (double f : {(k - 1 + 0.01) / double(n), (k - 0.5) / double(n), double(k) / n})
        EXPECT_EQ(certify::fidelity_to_sn_bound(f, n), k);
}

TEST(Bounds, IsotropicSn) {
  EXPECT_EQ(certify::isotropic_sn(2, 0.75), 2);
  EXPECT_EQ(certify::isotropic_sn(4, 0.6), 3);
  EXPECT_EQ(certify::isotropic_sn(3, 1.0 / 3.0), 1);
  EXPECT_EQ(certify::isotropic_sn(3, 0.1), 1);
  EXPECT_EQ(certify::isotropic_sn(3, 1.0), 3);
  EXPECT_EQ(certify::isotropic_sn(4, 0.5), 2);
  EXPECT_EQ(certify::isotropic_sn(4, 0.5 + 1e-11), 3);
  EXPECT_THROW(certify::isotropic_sn(2, 1.5), InvalidArgument);
}

TEST(Bounds, TensorCopy) {
  EXPECT_EQ(certify::tensor_copy_bound(1.0 / std::sqrt(2.0), 2, 2), 2);
  EXPECT_EQ(certify::tensor_copy_bound(0.9, 2, 2), 4);
  for (int n = 2; n <= 4; ++n) {
    for (int i = 0; i <= 40; ++i) {
      const double f = i / 40.0;
      EXPECT_EQ(certify::tensor_copy_bound(f, n, 1), certify::isotropic_sn(n, f));
      for (int m = 2; m <= 3; ++m) EXPECT_GE(certify::tensor_copy_bound(f, n, m), certify::isotropic_sn(n, f));
    }
  }
}

TEST(IsotropicDecomposition, QubitCases) {
  const EnsembleUpper one = certify::isotropic_decomposition(2, 1);
  EXPECT_EQ(one.ensemble.members.size(), 24u);
  EXPECT_EQ(one.ensemble.max_schmidt_rank(), 1);
  EXPECT_LT(one.residual, 1e-10);
  EXPECT_TRUE(certify::verify_decomposition(one.ensemble, states::isotropic(2, 0.5), 1, 1e-10));
  const EnsembleUpper two = certify::isotropic_decomposition(2, 2);
  EXPECT_EQ(two.ensemble.max_schmidt_rank(), 2);
  EXPECT_TRUE(certify::verify_decomposition(two.ensemble, states::isotropic(2, 1.0), 2, 1e-10));
  EXPECT_THROW(certify::isotropic_decomposition(3, 1), InvalidArgument);
  EXPECT_THROW(certify::isotropic_decomposition(2, 3), InvalidArgument);
}

TEST(IsotropicDecomposition, MixingWithIdentity) {
  // rho_F for F < 1/2 is a mix of rho_{1/2} and 1/4, with product members only.
  const EnsembleUpper one = certify::isotropic_decomposition(2, 1);
  for (double f : {0.25, 0.3, 0.45}) {
    const double t = (f - 0.25) / 0.25;
    PureEnsemble e;
    for (const auto& m : one.ensemble.members) e.members.push_back({t * m.probability, m.state});
    for (int i = 0; i < 4; ++i) {
      ComplexVector v = ComplexVector::Zero(4);
      v(i) = 1.0;
      e.members.push_back({(1.0 - t) / 4.0, PureBipartiteState(v, {2, 2})});
    }
    EXPECT_TRUE(certify::verify_decomposition(e, states::isotropic(2, f), 1, 1e-10));
  }
}

TEST(VerifyDecomposition, Gates) {
  ComplexVector v = ComplexVector::Zero(4);
  v(0) = 1.0;
  const PureBipartiteState p00(v, {2, 2});
  PureEnsemble e;
  e.members.push_back({1.0, p00});
  EXPECT_TRUE(certify::verify_decomposition(e, DensityMatrix(p00), 1, 1e-12));
  EXPECT_FALSE(certify::verify_decomposition(e, states::isotropic(2, 0.5), 1, 1e-4));

  PureEnsemble r3;
  r3.members.push_back({1.0, states::max_entangled(3)});
  EXPECT_FALSE(certify::verify_decomposition(r3, states::isotropic(3, 1.0), 2, 1e-8));
  EXPECT_TRUE(certify::verify_decomposition(r3, states::isotropic(3, 1.0), 3, 1e-8));

  PureEnsemble light;
  light.members.push_back({0.5, p00});
  EXPECT_FALSE(certify::verify_decomposition(light, DensityMatrix(p00), 1, 1.0));

  const auto tc = twirl::two_copy_construction();
  EXPECT_TRUE(certify::verify_decomposition(
      tc.ensemble, states::tensor_power(states::isotropic(2, 1.0 / std::sqrt(2.0)), 2), 2, 1e-8));
}

TEST(EnsembleSearch, SeparableBoundary) {
  certify::SearchOptions opts;
  opts.seed = 1;
  const DensityMatrix rho = states::isotropic(2, 0.5);
  const auto out = certify::ensemble_search(rho, 1, opts);
  ASSERT_TRUE(out.certificate.has_value());
  EXPECT_LT(out.certificate->residual, 1e-4);
  EXPECT_TRUE(certify::verify_decomposition(out.certificate->ensemble, rho, 1, 1e-4));
  EXPECT_TRUE(certify::verify_certificate(*out.certificate, rho));
}

TEST(EnsembleSearch, PureMaximallyEntangled) {
  const DensityMatrix rho = states::isotropic(2, 1.0);
  const auto out = certify::ensemble_search(rho, 2);
  ASSERT_TRUE(out.certificate.has_value());
  EXPECT_TRUE(certify::verify_decomposition(out.certificate->ensemble, rho, 2, 1e-4));
}

TEST(EnsembleSearch, EntangledStateFailsAtRankOne) {
  certify::SearchOptions opts;
  opts.restarts = 2;
  opts.max_iters = 200;
  const auto out = certify::ensemble_search(states::isotropic(2, 0.9), 1, opts);
  EXPECT_FALSE(out.certificate.has_value());
  EXPECT_GT(out.best_residual, 1e-4);
  EXPECT_EQ(out.restarts_run, 2);
}

TEST(EnsembleSearch, RejectsBadRank) {
  EXPECT_THROW(certify::ensemble_search(states::isotropic(2, 0.5), 3), InvalidArgument);
  EXPECT_THROW(certify::ensemble_search(states::isotropic(2, 0.5), 0), InvalidArgument);
}

TEST(Analyze, IsotropicExamples) {
  const SnReport r = certify::analyze(states::isotropic(3, 0.8));
  EXPECT_EQ(r.lower_bound, 3);
  EXPECT_FALSE(r.upper_bound.has_value());
  bool has_exact = false;
  for (const auto& c : r.certificates) {
    EXPECT_TRUE(certify::verify_certificate(c, states::isotropic(3, 0.8))) << certificate_kind(c);
    has_exact = has_exact || certificate_kind(c) == "IsotropicExact";
  }
  EXPECT_TRUE(has_exact);
}

TEST(Analyze, MaximallyMixedWithSearch) {
  certify::AnalyzeOptions opts;
  opts.search_upper = 1;
  const DensityMatrix rho = states::maximally_mixed({2, 2});
  const SnReport r = certify::analyze(rho, opts);
  EXPECT_EQ(r.lower_bound, 1);
  ASSERT_TRUE(r.upper_bound.has_value());
  EXPECT_EQ(*r.upper_bound, 1);
  for (const auto& c : r.certificates) EXPECT_TRUE(certify::verify_certificate(c, rho));
}

TEST(Analyze, RandomSeparableStatesHaveLowerBoundOne) {
  std::mt19937_64 rng(73);
  certify::AnalyzeOptions opts;
  opts.fidelity.restarts = 4;
  for (int trial = 0; trial < 50; ++trial) {
    const int n = 2 + trial % 2;
    const DensityMatrix rho = random_separable(n, 1 + trial % 6, rng);
    opts.seed = trial;
    const SnReport r = certify::analyze(rho, opts);
    EXPECT_EQ(r.lower_bound, 1) << "trial " << trial;
    for (const auto& c : r.certificates) EXPECT_TRUE(certify::verify_certificate(c, rho));
  }
}

TEST(Analyze, CertificatesDoNotTransfer) {
  const SnReport r = certify::analyze(states::isotropic(3, 0.8));
  const DensityMatrix other = states::isotropic(3, 0.2);
  for (const auto& c : r.certificates) {
    if (certificate_kind(c) == "MapWitness" || certificate_kind(c) == "IsotropicExact")
      EXPECT_FALSE(certify::verify_certificate(c, other)) << certificate_kind(c);
  }
}

TEST(Analyze, RejectsNonSquare) {
  EXPECT_THROW(certify::analyze(states::maximally_mixed({2, 3})), DimensionError);
}

}  // namespace
}  // namespace schmidtkit
