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

#include "schmidtkit/cli.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <ostream>
#include <set>
#include <sstream>

#include "CLI11.hpp"
#include "schmidtkit/certify.hpp"
#include "schmidtkit/io.hpp"

namespace schmidtkit::cli {

namespace {

std::string fmt17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string fmt6(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

std::uint64_t resolve_seed(const CLI::Option* flag, std::uint64_t value) {
  if (flag->count() > 0) return value;
  if (const char* env = std::getenv("SCHMIDTKIT_SEED")) {
    char* end = nullptr;
    const unsigned long long parsed = std::strtoull(env, &end, 10);
    if (end != env && *end == '\0') return parsed;
    throw InvalidArgument("SCHMIDTKIT_SEED is not an unsigned integer");
  }
  return 0;
}

DensityMatrix load_state(const std::string& path) {
  io::MatrixFile file = io::read_matrix_file(path);
  return DensityMatrix(std::move(file.matrix), file.idx);
}

void emit(std::ostream& out, const std::string& path, const std::string& text) {
  if (path.empty()) {
    out << text;
  } else {
    io::write_text_file(path, text);
  }
}

std::string describe(const Certificate& cert) {
  struct Visitor {
    std::string operator()(const MapWitness& w) const {
      std::string s = "MapWitness " + w.map;
      if (w.p) s += " p=" + fmt6(*w.p);
      return s + " k=" + std::to_string(w.k) + ": min eigenvalue " + fmt6(w.min_eigenvalue) +
             " => SN >= " + std::to_string(w.implied_lower_bound());
    }
    std::string operator()(const FidelityBound& f) const {
      return "FidelityBound: f_hat = " + fmt17(f.f_hat) + " => SN >= " + std::to_string(f.implied_lower_bound);
    }
    std::string operator()(const EnsembleUpper& e) const {
      return "EnsembleUpper: " + std::to_string(e.ensemble.members.size()) + " members of Schmidt rank <= " +
             std::to_string(e.k) + ", residual " + fmt6(e.residual) + " => SN <= " + std::to_string(e.k);
    }
    std::string operator()(const IsotropicExact& iso) const {
      return "IsotropicExact: N=" + std::to_string(iso.n) + " F=" + fmt17(iso.fidelity) +
             " => SN = " + std::to_string(iso.k);
    }
  };
  return std::visit(Visitor{}, cert);
}

struct Check {
  std::string label;
  bool pass;
};

}  // namespace

std::string figure_step_csv(int n, int copies, int grid) {
  if (n < 2) throw InvalidArgument("figure-step: N must be at least 2");
  if (copies != 1 && copies != 2) throw InvalidArgument("figure-step: copies must be 1 or 2");
  if (grid < 2) throw InvalidArgument("figure-step: grid needs at least two points");

  std::set<double> points;
  for (int i = 0; i < grid; ++i) points.insert(double(i) / double(grid - 1));
  for (int k = 1; k < n; ++k) points.insert(double(k) / n);
  if (copies == 2) {
    for (int j = 1; j < n * n; ++j) points.insert(std::sqrt(double(j)) / n);
  }

  std::ostringstream csv;
  csv << (copies == 2 ? "F,sn_one_copy,sn_two_copy_lower,marker\n" : "F,sn_one_copy,marker\n");
  for (double f : points) {
    csv << fmt17(f) << ',' << certify::isotropic_sn(n, f);
    if (copies == 2) csv << ',' << certify::tensor_copy_bound(f, n, 2);
    csv << ",\n";
  }
  if (copies == 2 && n == 2) {
    const double tight = std::sqrt(2.0) / 2.0;
    const double conjectured = std::sqrt(3.0) / 2.0;
    csv << fmt17(tight) << ',' << certify::isotropic_sn(n, tight) << ",2,tight\n";
    csv << fmt17(conjectured) << ',' << certify::isotropic_sn(n, conjectured) << ",3,conjectured\n";
  }
  return csv.str();
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Certified Schmidt-number bounds for bipartite density matrices", "schmidtkit"};
  app.require_subcommand(1);

  // analyze
  std::string input;
  std::string out_path;
  int search_upper = 0;
  std::uint64_t seed = 0;
  int restarts = 0;
  bool as_text = false;
  auto* analyze = app.add_subcommand("analyze", "Lower/upper Schmidt-number bounds with certificates");
  analyze->add_option("--input", input, "MatrixFile holding the density matrix")->required();
  auto* analyze_search = analyze->add_option("--search-upper", search_upper, "Search decompositions up to rank K");
  auto* analyze_seed = analyze->add_option("--seed", seed, "Random seed");
  auto* analyze_restarts = analyze->add_option("--restarts", restarts, "Restarts for every randomized search");
  analyze->add_flag("--text", as_text, "Human-readable summary instead of JSON");
  analyze->add_flag("--json", "JSON report (default)");
  analyze->add_option("--out", out_path, "Write the report here instead of stdout");

  // isotropic
  int iso_n = 2;
  double iso_f = 0.0;
  int iso_copies = 1;
  std::string emit_state;
  bool iso_json = false;
  auto* isotropic = app.add_subcommand("isotropic", "Schmidt number of the isotropic state rho_F");
  isotropic->add_option("--n", iso_n, "Local dimension N")->required();
  isotropic->add_option("--f", iso_f, "Fidelity F in [0, 1]")->required();
  isotropic->add_option("--emit-state", emit_state, "Write rho_F (or its tensor power) as a MatrixFile");
  isotropic->add_option("--copies", iso_copies, "Tensor copies written by --emit-state")->check(CLI::PositiveNumber);
  isotropic->add_flag("--json", iso_json, "JSON output");

  // demo-nonadditivity
  std::string dump_path;
  auto* demo = app.add_subcommand("demo-nonadditivity", "Two-copy construction with Schmidt rank 2 vectors");
  demo->add_option("--dump", dump_path, "Write the explicit ensemble as JSON");

  // figure-step
  int fig_n = 2;
  int fig_copies = 2;
  int fig_grid = 400;
  std::string fig_out;
  auto* figure = app.add_subcommand("figure-step", "Schmidt number of one and two copies of rho_F as CSV");
  figure->add_option("--n", fig_n, "Local dimension N");
  figure->add_option("--copies", fig_copies, "1 or 2")->check(CLI::IsMember({1, 2}));
  figure->add_option("--grid", fig_grid, "Number of evenly spaced F values");
  figure->add_option("--out", fig_out, "CSV path (stdout when omitted)");

  // probe-map
  std::string choi_path;
  int probe_k = 1;
  int probe_restarts = 50;
  std::uint64_t probe_seed = 0;
  bool probe_json = false;
  auto* probe = app.add_subcommand("probe-map", "Search for a k-positivity violation of a map given by its Choi matrix");
  probe->add_option("--choi", choi_path, "MatrixFile with the Choi matrix (d_a = N_in, d_b = N_out)")->required();
  probe->add_option("--k", probe_k, "Schmidt rank of the probing vectors")->required();
  probe->add_option("--restarts", probe_restarts, "Random restarts");
  auto* probe_seed_opt = probe->add_option("--seed", probe_seed, "Random seed");
  probe->add_flag("--json", probe_json, "JSON output");

  // twirl
  std::string twirl_in;
  std::string twirl_mode = "exact";
  int twirl_samples = 100000;
  std::uint64_t twirl_seed = 0;
  std::string twirl_out;
  auto* twirl_cmd = app.add_subcommand("twirl", "U (x) U* twirl of a state");
  twirl_cmd->add_option("--input", twirl_in, "MatrixFile with the state")->required();
  twirl_cmd->add_option("--mode", twirl_mode, "exact or mc")->check(CLI::IsMember({"exact", "mc"}));
  twirl_cmd->add_option("--samples", twirl_samples, "Haar samples for --mode mc")->check(CLI::PositiveNumber);
  auto* twirl_seed_opt = twirl_cmd->add_option("--seed", twirl_seed, "Random seed");
  twirl_cmd->add_option("--out", twirl_out, "Write the twirled state as a MatrixFile");

  // verify
  std::string verify_input;
  std::string verify_report;
  auto* verify = app.add_subcommand("verify", "Re-check every certificate of a saved report");
  verify->add_option("--input", verify_input, "MatrixFile the report was produced from")->required();
  verify->add_option("--report", verify_report, "Report JSON")->required();

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitInvalidInput;
  }

  try {
    if (analyze->parsed()) {
      const DensityMatrix rho = load_state(input);
      certify::AnalyzeOptions opts;
      opts.seed = resolve_seed(analyze_seed, seed);
      if (analyze_restarts->count() > 0) {
        if (restarts < 1) throw InvalidArgument("--restarts must be positive");
        opts.fidelity.restarts = restarts;
        opts.search.restarts = restarts;
      }
      if (analyze_search->count() > 0) {
        if (search_upper < 1) throw InvalidArgument("--search-upper must be positive");
        opts.search_upper = search_upper;
      }
      const SnReport report = certify::analyze(rho, opts);
      if (as_text) {
        std::ostringstream text;
        text << "Schmidt number >= " << report.lower_bound;
        if (report.upper_bound) text << ", <= " << *report.upper_bound;
        text << "\n";
        for (const auto& c : report.certificates) text << "  " << describe(c) << "\n";
        emit(out, out_path, text.str());
      } else {
        emit(out, out_path, io::dump(io::report_to_json(report)));
      }
      return kExitOk;
    }

    if (isotropic->parsed()) {
      const int k = certify::isotropic_sn(iso_n, iso_f);
      const double lo = k == 1 ? 0.0 : double(k - 1) / iso_n;
      const double hi = double(k) / iso_n;
      if (!emit_state.empty()) {
        const DensityMatrix rho = states::tensor_power(states::isotropic(iso_n, iso_f), iso_copies);
        io::write_matrix_file(emit_state, rho.matrix(), rho.index());
      }
      if (iso_json) {
        io::Json j{{"n", iso_n}, {"f", iso_f}, {"k", k}, {"interval", {lo, hi}}, {"left_closed", k == 1}};
        out << io::dump(j);
      } else {
        out << "N=" << iso_n << " F=" << fmt17(iso_f) << ": Schmidt number k=" << k << " (F in "
            << (k == 1 ? "[" : "(") << fmt17(lo) << ", " << fmt17(hi) << "])\n";
      }
      return kExitOk;
    }

    if (demo->parsed()) {
      const auto construction = twirl::two_copy_construction();
      const auto coeffs = twirl::pair_coefficients(construction.mixture);
      const double r2 = std::sqrt(2.0);
      const double a_ref = (r2 - 1.0) * (r2 - 1.0) / 18.0;
      const double b_ref = (r2 - 1.0) / 6.0;
      const double c_ref = 0.5;
      constexpr double tol = 1e-10;
      const DensityMatrix one = states::isotropic(2, 1.0 / r2);
      const DensityMatrix target = states::tensor(one, one);
      const double dist_target = (construction.mixture.matrix() - target.matrix()).norm();
      const double dist_ensemble = (construction.ensemble.mixture() - construction.mixture.matrix()).norm();
      const int max_rank = construction.ensemble.max_schmidt_rank(1e-9);
      const bool verified = certify::verify_decomposition(construction.ensemble, target, 2, 1e-8);

      std::vector<Check> checks{
          {"a = " + fmt17(coeffs.a) + " vs (sqrt2-1)^2/18 = " + fmt17(a_ref), std::abs(coeffs.a - a_ref) < tol},
          {"b(P+ x Q) = " + fmt17(coeffs.b_pq) + " vs (sqrt2-1)/6 = " + fmt17(b_ref), std::abs(coeffs.b_pq - b_ref) < tol},
          {"b(Q x P+) = " + fmt17(coeffs.b_qp) + " vs (sqrt2-1)/6 = " + fmt17(b_ref), std::abs(coeffs.b_qp - b_ref) < tol},
          {"c = " + fmt17(coeffs.c) + " vs 1/2", std::abs(coeffs.c - c_ref) < tol},
          {"mixture vs rho_F (x) rho_F at F = 1/sqrt2: distance " + fmt6(dist_target), dist_target < tol},
          {"ensemble mixture vs construction: distance " + fmt6(dist_ensemble), dist_ensemble < tol},
          {"largest member Schmidt rank across (A1A2):(B1B2): " + std::to_string(max_rank), max_rank <= 2},
          {"decomposition verified (k = 2, tol = 1e-8)", verified},
      };
      out << "two-copy construction: " << construction.ensemble.members.size() << " members\n";
      bool all = true;
      for (const auto& c : checks) {
        out << (c.pass ? "PASS  " : "FAIL  ") << c.label << "\n";
        all = all && c.pass;
      }
      out << (all ? "PASS" : "FAIL") << "\n";
      if (!dump_path.empty()) io::write_text_file(dump_path, io::dump(io::ensemble_to_json(construction.ensemble)));
      return all ? kExitOk : kExitNumeric;
    }

    if (figure->parsed()) {
      emit(out, fig_out, figure_step_csv(fig_n, fig_copies, fig_grid));
      return kExitOk;
    }

    if (probe->parsed()) {
      io::MatrixFile file = io::read_matrix_file(choi_path);
      const MatrixMap map(std::move(file.matrix), file.idx.d_a, file.idx.d_b);
      maps::ProbeOptions opts;
      opts.restarts = probe_restarts;
      opts.seed = resolve_seed(probe_seed_opt, probe_seed);
      const auto violation = maps::kpositivity_probe(map, probe_k, opts);
      if (probe_json) {
        io::Json j{{"k", probe_k}, {"violation", violation.has_value()}};
        if (violation) {
          j["min_eigenvalue"] = violation->min_eigenvalue;
          j["state"] = io::state_to_json(violation->state);
        }
        out << io::dump(j);
      } else if (violation) {
        out << "violation: (1 x L)(|Psi_k><Psi_k|) has eigenvalue " << fmt17(violation->min_eigenvalue)
            << " for a Schmidt rank " << probe_k << " vector; the map is not " << probe_k << "-positive\n";
      } else {
        out << "no violation found (not a certificate)\n";
      }
      return kExitOk;
    }

    if (twirl_cmd->parsed()) {
      const DensityMatrix rho = load_state(twirl_in);
      const std::uint64_t s = resolve_seed(twirl_seed_opt, twirl_seed);
      const DensityMatrix exact = twirl::twirl_exact(rho);
      const int n = rho.index().d_a;
      const double f = states::overlap(rho.matrix(), states::max_entangled(n).amplitudes());
      out << "F = " << fmt17(f) << "\n";
      const DensityMatrix result = twirl_mode == "mc" ? twirl::twirl_mc(rho, twirl_samples, s) : exact;
      if (twirl_mode == "mc") {
        out << "distance to exact twirl (" << twirl_samples
            << " samples) = " << fmt6((result.matrix() - exact.matrix()).norm()) << "\n";
      }
      if (!twirl_out.empty()) io::write_matrix_file(twirl_out, result.matrix(), result.index());
      return kExitOk;
    }

    if (verify->parsed()) {
      const DensityMatrix rho = load_state(verify_input);
      const SnReport report = io::report_from_json(io::read_json_file(verify_report));
      bool all = true;
      for (const auto& c : report.certificates) {
        const bool ok = certify::verify_certificate(c, rho);
        out << (ok ? "OK    " : "FAIL  ") << describe(c) << "\n";
        all = all && ok;
      }
      return all ? kExitOk : kExitNumeric;
    }
  } catch (const InvalidArgument& e) {
    err << "invalid input: " << e.what() << "\n";
    return kExitInvalidInput;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitNumeric;
  }
  return kExitInvalidInput;
}

}  // namespace schmidtkit::cli
