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

// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any
// failure. Informational lines start with "INFO" and never affect the result.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <iomanip>
#include <filesystem>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "schmidtkit/certify.hpp"
#include "schmidtkit/cli.hpp"
#include "schmidtkit/io.hpp"
#include "schmidtkit/maps.hpp"
#include "schmidtkit/random.hpp"
#include "schmidtkit/states.hpp"
#include "schmidtkit/twirl.hpp"
#include "test_support.hpp"

namespace sk = schmidtkit;
using sk::ComplexMatrix;
using sk::ComplexVector;
using sk::DensityMatrix;

namespace {

struct Criterion {
  int id;
  std::string title;
  bool pass = true;
  std::vector<std::string> failures;

  void check(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      if (failures.size() < 5) failures.push_back(what);
    }
  }
};

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.3e", v);
  return buf;
}

std::vector<double> linspace(double lo, double hi, int count) {
  std::vector<double> out;
  for (int i = 0; i < count; ++i) out.push_back(lo + (hi - lo) * i / (count - 1));
  return out;
}

// Every ensemble the suite accepts goes through this gate as well.
int g_successes = 0;
int g_successes_verified = 0;
void record_success(const sk::EnsembleUpper& e, const DensityMatrix& rho) {
  ++g_successes;
  if (sk::certify::verify_decomposition(e.ensemble, rho, e.k, e.tolerance)) ++g_successes_verified;
}
void record_report(const sk::SnReport& r, const DensityMatrix& rho) {
  for (const auto& c : r.certificates)
    if (const auto* e = std::get_if<sk::EnsembleUpper>(&c)) record_success(*e, rho);
}

int map_lower_bound(const DensityMatrix& rho, int n) {
  int lb = 1;
  for (int k = 1; k < n; ++k)
    if (const auto w = sk::certify::sn_lower_via_map(rho, k)) lb = std::max(lb, w->implied_lower_bound());
  return lb;
}

Criterion witness_tightness() {
  Criterion c{1, "map-witness lower bound equals the exact isotropic Schmidt number"};
  int cases = 0;
  for (int n = 2; n <= 4; ++n) {
    std::vector<double> fs = linspace(0.0, 1.0, 50);
    for (int k = 1; k < n; ++k) {
      fs.push_back(double(k) / n + 1e-13);
      fs.push_back(double(k) / n - 1e-13);
      fs.push_back(double(k) / n);
    }
    for (double f : fs) {
      const int lb = map_lower_bound(sk::states::isotropic(n, f), n);
      const int exact = sk::certify::isotropic_sn(n, f);
      c.check(lb == exact, "N=" + std::to_string(n) + " F=" + std::to_string(f) + ": map " + std::to_string(lb) +
                               " vs exact " + std::to_string(exact));
      ++cases;
    }
    // Right-inclusive boundaries.
    for (int k = 1; k < n; ++k) {
      c.check(sk::certify::isotropic_sn(n, double(k) / n) == k, "boundary k/N not classified as k");
      c.check(sk::certify::isotropic_sn(n, double(k) / n + 1e-13) == k, "k/N + 1e-13 not within tolerance");
      c.check(sk::certify::isotropic_sn(n, double(k) / n - 1e-13) == k, "k/N - 1e-13 not classified as k");
    }
  }
  c.title += " (" + std::to_string(cases) + " states)";
  return c;
}

Criterion witness_scalar() {
  Criterion c{2, "Tr[choi(L_p) rho_F] = 1/N - pF"};
  double worst = 0.0;
  for (int n = 2; n <= 6; ++n)
    for (double p : linspace(0.0, 1.0, 5))
      for (double f : linspace(0.0, 1.0, 5)) {
        const sk::Complex t = (sk::maps::reduction_family(n, p).choi() * sk::states::isotropic(n, f).matrix()).trace();
        worst = std::max(worst, std::abs(t - sk::Complex(1.0 / n - p * f, 0.0)));
      }
  c.check(worst <= 1e-10, "max deviation " + fmt(worst));
  c.title += " (5x5x5 grid, max deviation " + fmt(worst) + ", tol 1e-10)";
  return c;
}

Criterion twirl_correctness() {
  Criterion c{3, "twirl: exact, Monte Carlo and Clifford agree with the isotropic form"};
  double worst_exact = 0.0;
  for (int n = 2; n <= 4; ++n)
    for (int k = 1; k <= n; ++k) {
      const DensityMatrix t = sk::twirl::twirl_exact(DensityMatrix(sk::states::psi_k(n, k)));
      worst_exact = std::max(worst_exact, (t.matrix() - sk::testing::isotropic_oracle(n, double(k) / n)).cwiseAbs().maxCoeff());
    }
  c.check(worst_exact <= 1e-12, "exact twirl deviation " + fmt(worst_exact));

  double worst_mc = 0.0;
  for (int n = 2; n <= 3; ++n) {
    const DensityMatrix rho(sk::states::psi_k(n, 1));
    const DensityMatrix mc = sk::twirl::twirl_mc(rho, 100000, sk::derive_seed(3, n));
    worst_mc = std::max(worst_mc, (mc.matrix() - sk::twirl::twirl_exact(rho).matrix()).norm());
  }
  c.check(worst_mc < 1e-2, "MC distance " + fmt(worst_mc));

  const sk::UnitaryEnsemble cliff = sk::twirl::clifford_ensemble_qubit();
  std::mt19937_64 rng(303);
  double worst_cliff = 0.0;
  std::vector<DensityMatrix> inputs{DensityMatrix(sk::states::psi_k(2, 1)), DensityMatrix(sk::states::psi_k(2, 2))};
  for (int i = 0; i < 20; ++i) inputs.emplace_back(sk::testing::random_density(4, rng), sk::BipartiteIndex{2, 2});
  for (const auto& rho : inputs)
    worst_cliff = std::max(worst_cliff, (sk::twirl::twirl_with_ensemble(rho, cliff).matrix() -
                                         sk::twirl::twirl_exact(rho).matrix()).cwiseAbs().maxCoeff());
  c.check(worst_cliff <= 1e-10, "Clifford deviation " + fmt(worst_cliff));
  c.title += " (exact " + fmt(worst_exact) + " tol 1e-12; MC 1e5 samples " + fmt(worst_mc) +
             " tol 1e-2; Clifford " + fmt(worst_cliff) + " tol 1e-10)";
  return c;
}

Criterion nonadditivity() {
  Criterion c{4, "two-copy construction and bounds (2, 2) at F = 1/sqrt2"};
  const double r = std::sqrt(2.0) - 1.0;
  const auto tc = sk::twirl::two_copy_construction();
  const auto coeffs = sk::twirl::pair_coefficients(tc.mixture);
  c.check(std::abs(coeffs.a - r * r / 18.0) < 1e-10, "a = " + std::to_string(coeffs.a));
  c.check(std::abs(coeffs.b_pq - r / 6.0) < 1e-10, "b(P x Q)");
  c.check(std::abs(coeffs.b_qp - r / 6.0) < 1e-10, "b(Q x P)");
  c.check(std::abs(coeffs.c - 0.5) < 1e-10, "c");

  const DensityMatrix one = sk::states::isotropic(2, 1.0 / std::sqrt(2.0));
  const DensityMatrix two = sk::states::tensor_power(one, 2);
  const double d_mix = (tc.mixture.matrix() - two.matrix()).norm();
  const double d_ens = (tc.ensemble.mixture() - two.matrix()).norm();
  c.check(d_mix < 1e-10, "mixture distance " + fmt(d_mix));
  c.check(d_ens < 1e-10, "ensemble distance " + fmt(d_ens));
  int max_rank = 0;
  for (const auto& m : tc.ensemble.members) max_rank = std::max(max_rank, sk::states::schmidt_rank(m.state, 1e-9));
  c.check(max_rank <= 2, "member rank " + std::to_string(max_rank));
  c.check(sk::certify::verify_decomposition(tc.ensemble, two, 2, 1e-8), "construction does not verify");

  sk::certify::AnalyzeOptions opts;
  opts.seed = 2026;
  opts.search_upper = 2;
  std::string bounds;
  for (const DensityMatrix* rho : {&one, &two}) {
    const sk::SnReport rep = sk::certify::analyze(*rho, opts);
    record_report(rep, *rho);
    const int up = rep.upper_bound.value_or(-1);
    c.check(rep.lower_bound == 2 && up == 2,
            "analyze bounds (" + std::to_string(rep.lower_bound) + ", " + std::to_string(up) + ")");
    bounds += " (" + std::to_string(rep.lower_bound) + ", " + std::to_string(up) + ")";
  }
  c.title += " (mixture " + fmt(d_mix) + ", max rank " + std::to_string(max_rank) + ", bounds" + bounds + ")";
  return c;
}

Criterion probe_agreement() {
  Criterion c{5, "k-positivity probe finds violations iff p > 1/k at eigenvalue 1/k - p"};
  double worst = 0.0;
  int cases = 0;
  for (int n = 2; n <= 4; ++n)
    for (double p : {0.3, 0.45, 0.6, 0.8, 1.0})
      for (int k = 1; k <= n; ++k) {
        sk::maps::ProbeOptions opts;
        opts.restarts = 50;
        opts.seed = sk::derive_seed(5, std::uint64_t(n * 100 + k));
        const auto v = sk::maps::kpositivity_probe(sk::maps::reduction_family(n, p), k, opts);
        const bool expect = p > 1.0 / k;
        ++cases;
        c.check(v.has_value() == expect, "N=" + std::to_string(n) + " p=" + std::to_string(p) + " k=" +
                                             std::to_string(k) + (expect ? ": missed" : ": spurious"));
        if (v && expect) {
          const double err = std::abs(v->min_eigenvalue - (1.0 / k - p));
          worst = std::max(worst, err);
          c.check(err <= 1e-6, "eigenvalue error " + fmt(err));
        }
      }
  c.title += " (" + std::to_string(cases) + " cases, 50 restarts, max error " + fmt(worst) + " tol 1e-6)";
  return c;
}

Criterion schmidt_properties() {
  Criterion c{6, "Schmidt-coefficient bounds and fidelity maximization"};
  std::mt19937_64 rng(606);
  double worst_sq = -1.0, worst_fef = -1.0;
  for (int trial = 0; trial < 500; ++trial) {
    const int n = 1 + int(rng() % 5);
    const sk::PureBipartiteState psi(sk::testing::random_rank_k(n, n, 1 + int(rng() % n), rng), {n, n});
    const auto s = sk::states::schmidt_decompose(psi);
    const int rank = s.rank();
    const double root = s.coefficients.cwiseMax(0.0).cwiseSqrt().sum();
    worst_sq = std::max(worst_sq, root * root - rank);
    worst_fef = std::max(worst_fef, sk::states::fully_entangled_fraction_pure(psi) - double(rank) / n);
  }
  c.check(worst_sq <= 1e-12, "(sum sqrt lambda)^2 - rank = " + fmt(worst_sq));
  c.check(worst_fef <= 1e-12, "fef - rank/N = " + fmt(worst_fef));

  double worst_fid = 0.0;
  for (int n = 2; n <= 3; ++n) {
    const double floor = 1.0 / (n * n);
    std::vector<double> fs = linspace(floor, 1.0, 11);
    for (double f : linspace(0.0, floor, 4)) fs.push_back(f);
    for (double f : fs) {
      sk::certify::FidelityOptions opts;
      opts.restarts = 20;
      opts.seed = sk::derive_seed(6, std::uint64_t(n * 1000 + int(f * 997)));
      const double f_hat = sk::certify::fidelity_max(sk::states::isotropic(n, f), opts).f_hat;
      if (f >= floor) {
        worst_fid = std::max(worst_fid, std::abs(f_hat - f));
        c.check(std::abs(f_hat - f) <= 1e-6, "N=" + std::to_string(n) + " F=" + std::to_string(f) +
                                                   ": f_hat " + std::to_string(f_hat));
      } else {
        c.check(f_hat >= f - 1e-6, "f_hat below F at F=" + std::to_string(f));
      }
    }
  }
  c.title += " (500 states; fidelity max deviation " + fmt(worst_fid) + " tol 1e-6)";
  return c;
}

Criterion peres_baseline() {
  Criterion c{7, "partial transpose of rho_F is negative iff F > 1/2"};
  std::vector<double> fs = linspace(0.0, 1.0, 50);
  fs.push_back(0.5);
  for (double f : fs) {
    const double m = sk::linalg::min_eigenvalue(sk::linalg::partial_transpose(sk::states::isotropic(2, f).matrix(), {2, 2}));
    c.check((m < -1e-10) == (f > 0.5), "F=" + std::to_string(f) + " min eig " + fmt(m));
  }
  c.title += " (" + std::to_string(fs.size()) + " values, threshold 1e-10)";
  return c;
}

Criterion search_soundness() {
  Criterion c{8, "ensemble search rediscovers the separable boundary; every success verifies"};
  const DensityMatrix half = sk::states::isotropic(2, 0.5);
  sk::certify::SearchOptions opts;
  opts.seed = 808;
  const auto out = sk::certify::ensemble_search(half, 1, opts);
  c.check(out.certificate.has_value() && out.certificate->residual < 1e-4,
          "isotropic(2, 1/2), k=1: best residual " + fmt(out.best_residual));
  if (out.certificate) record_success(*out.certificate, half);

  const DensityMatrix pure = sk::states::isotropic(2, 1.0);
  const auto trivial = sk::certify::ensemble_search(pure, 2, opts);
  c.check(trivial.certificate.has_value(), "isotropic(2, 1), k=2 failed");
  if (trivial.certificate) record_success(*trivial.certificate, pure);

  // Informational: two copies at F = sqrt3/2 with rank-3 vectors.
  const DensityMatrix two = sk::states::tensor_power(sk::states::isotropic(2, std::sqrt(3.0) / 2.0), 2);
  sk::certify::SearchOptions info_opts;
  info_opts.seed = 809;
  info_opts.restarts = 2;
  const auto t0 = std::chrono::steady_clock::now();
  const auto info = sk::certify::ensemble_search(two, 3, info_opts);
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  if (info.certificate) record_success(*info.certificate, two);
  std::cout << "INFO  [8] two copies at F = sqrt3/2, rank-3 search (" << info.restarts_run << " restarts, "
            << std::fixed << std::setprecision(1) << secs << std::defaultfloat << " s): "
            << (info.certificate ? "decomposition found" : "no decomposition found")
            << ", best residual " << fmt(info.best_residual) << "\n";

  c.check(g_successes == g_successes_verified, std::to_string(g_successes - g_successes_verified) +
                                                   " successful searches failed verification");
  c.title += " (residual " + (out.certificate ? fmt(out.certificate->residual) : std::string("n/a")) +
             " tol 1e-4; " + std::to_string(g_successes_verified) + "/" + std::to_string(g_successes) + " verified)";
  return c;
}

struct Row {
  double f;
  int one;
  int two;
};

std::vector<Row> parse_csv(const std::string& csv, bool two_copies) {
  std::vector<Row> rows;
  std::istringstream in(csv);
  std::string line;
  std::getline(in, line);
  while (std::getline(in, line)) {
    std::vector<std::string> cells;
    std::stringstream ls(line);
    std::string cell;
    while (std::getline(ls, cell, ',')) cells.push_back(cell);
    if (line.back() == ',') cells.emplace_back();
    if (!cells.back().empty()) continue;  // marker rows
    rows.push_back({std::stod(cells[0]), std::stoi(cells[1]), two_copies ? std::stoi(cells[2]) : 0});
  }
  return rows;
}

// F values at which a column increases: the last row carrying the old value.
std::vector<double> steps(const std::vector<Row>& rows, bool two) {
  std::vector<double> out;
  for (std::size_t i = 1; i < rows.size(); ++i) {
    const int a = two ? rows[i - 1].two : rows[i - 1].one;
    const int b = two ? rows[i].two : rows[i].one;
    if (b != a) out.push_back(rows[i - 1].f);
  }
  return out;
}

Criterion figure_data() {
  Criterion c{9, "figure data steps at F = 1/2 (one copy) and F^2 in {1/4, 1/2, 3/4} (two copies)"};
  const auto one_rows = parse_csv(sk::cli::figure_step_csv(2, 1, 400), false);
  const auto two_rows = parse_csv(sk::cli::figure_step_csv(2, 2, 400), true);
  const auto s1 = steps(one_rows, false);
  c.check(s1.size() == 1 && s1[0] == 0.5, "one-copy steps wrong");
  const auto s1b = steps(two_rows, false);
  c.check(s1b == s1, "one-copy column differs between the two files");
  const auto s2 = steps(two_rows, true);
  c.check(s2.size() == 3, std::to_string(s2.size()) + " two-copy steps");
  for (std::size_t j = 0; j < s2.size() && j < 3; ++j)
    c.check(std::abs(s2[j] * s2[j] - (j + 1) / 4.0) < 1e-15, "step " + std::to_string(j) + " at F=" + fmt(s2[j]));
  c.check(!two_rows.empty() && two_rows.back().f == 1.0 && two_rows.back().one == 2 && two_rows.back().two == 4,
          "F=1 row");
  for (std::size_t i = 1; i < two_rows.size(); ++i) {
    c.check(two_rows[i].two >= two_rows[i].one, "two-copy bound below one-copy value");
    c.check(two_rows[i].two - two_rows[i - 1].two <= 1, "jump larger than one");
  }
  const std::string csv = sk::cli::figure_step_csv(2, 2, 400);
  c.check(csv.find(",2,tight\n") != std::string::npos && csv.find(",3,conjectured\n") != std::string::npos,
          "marker rows missing");
  return c;
}

std::string run_cli(const std::vector<std::string>& args, int* code = nullptr) {
  std::ostringstream out, err;
  const int rc = sk::cli::run(args, out, err);
  if (code) *code = rc;
  return out.str();
}

Criterion determinism() {
  Criterion c{10, "identical seeds give byte-identical JSON reports"};
  namespace fs = std::filesystem;
  const fs::path dir = fs::temp_directory_path() / "schmidtkit_acceptance";
  fs::remove_all(dir);
  fs::create_directories(dir);
  std::mt19937_64 rng(1010);
  std::vector<std::pair<std::string, DensityMatrix>> inputs{
      {"iso38", sk::states::isotropic(3, 0.8)},
      {"two_copy", sk::states::tensor_power(sk::states::isotropic(2, 1.0 / std::sqrt(2.0)), 2)},
      {"random", DensityMatrix(sk::testing::random_density(9, rng), {3, 3})},
  };
  int reports = 0;
  for (const auto& [name, rho] : inputs) {
    const std::string path = (dir / (name + ".json")).string();
    sk::io::write_matrix_file(path, rho.matrix(), rho.index());
    const std::vector<std::string> args{"analyze", "--input", path, "--seed", "77", "--search-upper", "2"};
    int rc1 = -1, rc2 = -1;
    const std::string a = run_cli(args, &rc1);
    const std::string b = run_cli(args, &rc2);
    c.check(rc1 == 0 && rc2 == 0, name + ": nonzero exit");
    c.check(!a.empty() && a == b, name + ": reports differ");
    ++reports;
  }
  const auto choi = sk::maps::reduction_family(3, 1.0);
  const std::string choi_path = (dir / "choi.json").string();
  sk::io::write_matrix_file(choi_path, choi.choi(), choi.choi_index());
  const std::vector<std::string> probe{"probe-map", "--choi", choi_path, "--k", "2", "--seed", "3", "--json"};
  c.check(run_cli(probe) == run_cli(probe), "probe-map JSON differs");
  const std::string mc1 = (dir / "mc1.json").string(), mc2 = (dir / "mc2.json").string();
  run_cli({"twirl", "--input", (dir / "random.json").string(), "--mode", "mc", "--samples", "2000", "--seed", "9", "--out", mc1});
  run_cli({"twirl", "--input", (dir / "random.json").string(), "--mode", "mc", "--samples", "2000", "--seed", "9", "--out", mc2});
  c.check(sk::io::read_json_file(mc1).dump() == sk::io::read_json_file(mc2).dump(), "twirl mc output differs");
  fs::remove_all(dir);
  c.title += " (" + std::to_string(reports) + " analyze reports, probe-map, twirl mc)";
  return c;
}

}  // namespace

int main() {
  using Fn = Criterion (*)();
  const Fn criteria[] = {witness_tightness, witness_scalar,   twirl_correctness, nonadditivity, probe_agreement,
                         schmidt_properties, peres_baseline, search_soundness,  figure_data,   determinism};
  int failed = 0;
  int id = 0;
  for (Fn fn : criteria) {
    Criterion c{++id, "criterion aborted"};
    try {
      c = fn();
    } catch (const std::exception& e) {
      c.pass = false;
      c.failures.push_back(std::string("exception: ") + e.what());
    }
    std::cout << (c.pass ? "PASS" : "FAIL") << "  [" << c.id << "] " << c.title << "\n";
    for (const auto& f : c.failures) std::cout << "        " << f << "\n";
    std::cout.flush();
    failed += c.pass ? 0 : 1;
  }
  std::cout << (failed == 0 ? "all criteria passed" : std::to_string(failed) + " criteria failed") << "\n";
  return failed == 0 ? 0 : 1;
}
