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

#include "schmidtkit/io.hpp"

#include <fstream>
#include <sstream>

namespace schmidtkit::io {

namespace {

Json vector_parts(const ComplexVector& v, bool imag) {
  Json arr = Json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) arr.push_back(imag ? v(i).imag() : v(i).real());
  return arr;
}

ComplexVector vector_from_parts(const Json& re, const Json& im, const char* what) {
  if (!re.is_array() || !im.is_array() || re.size() != im.size()) {
    throw InputError(std::string(what) + ": \"re\" and \"im\" must be arrays of equal length");
  }
  ComplexVector v(static_cast<Eigen::Index>(re.size()));
  for (std::size_t i = 0; i < re.size(); ++i) {
    if (!re[i].is_number() || !im[i].is_number()) throw InputError(std::string(what) + ": entries must be numbers");
    v(Eigen::Index(i)) = Complex(re[i].get<double>(), im[i].get<double>());
  }
  return v;
}

int positive_int(const Json& j, const char* key) {
  if (!j.contains(key) || !j.at(key).is_number_integer() || j.at(key).get<long long>() < 1) {
    throw InputError(std::string("missing or invalid positive integer \"") + key + "\"");
  }
  return j.at(key).get<int>();
}

double number(const Json& j, const char* key) {
  if (!j.contains(key) || !j.at(key).is_number()) {
    throw InputError(std::string("missing or invalid number \"") + key + "\"");
  }
  return j.at(key).get<double>();
}

const Json& field(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) throw InputError(std::string("missing field \"") + key + "\"");
  return j.at(key);
}

}  // namespace

Json matrix_to_json(const ComplexMatrix& m, BipartiteIndex idx) {
  Json re = Json::array();
  Json im = Json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    Json row_re = Json::array();
    Json row_im = Json::array();
    for (Eigen::Index c = 0; c < m.cols(); ++c) {
      row_re.push_back(m(r, c).real());
      row_im.push_back(m(r, c).imag());
    }
    re.push_back(std::move(row_re));
    im.push_back(std::move(row_im));
  }
  return Json{{"d_a", idx.d_a}, {"d_b", idx.d_b}, {"re", std::move(re)}, {"im", std::move(im)}};
}

MatrixFile matrix_from_json(const Json& j) {
  if (!j.is_object()) throw InputError("matrix file must hold a JSON object");
  const BipartiteIndex idx{positive_int(j, "d_a"), positive_int(j, "d_b")};
  const Json& re = field(j, "re");
  const Json& im = field(j, "im");
  const auto dim = static_cast<std::size_t>(idx.dim());
  if (!re.is_array() || !im.is_array() || re.size() != dim || im.size() != dim) {
    throw InputError("matrix must have d_a*d_b = " + std::to_string(dim) + " rows in \"re\" and \"im\"");
  }
  ComplexMatrix m(idx.dim(), idx.dim());
  for (std::size_t r = 0; r < dim; ++r) {
    if (!re[r].is_array() || !im[r].is_array() || re[r].size() != dim || im[r].size() != dim) {
      throw InputError("row " + std::to_string(r) + " does not have " + std::to_string(dim) + " entries");
    }
    for (std::size_t c = 0; c < dim; ++c) {
      if (!re[r][c].is_number() || !im[r][c].is_number()) {
        throw InputError("entry (" + std::to_string(r) + ", " + std::to_string(c) + ") is not a number");
      }
      m(Eigen::Index(r), Eigen::Index(c)) = Complex(re[r][c].get<double>(), im[r][c].get<double>());
    }
  }
  return {std::move(m), idx};
}

Json read_json_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open " + path.string());
  try {
    return Json::parse(in);
  } catch (const Json::parse_error& e) {
    throw InputError("malformed JSON in " + path.string() + ": " + e.what());
  }
}

void write_text_file(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InputError("cannot write " + path.string());
  out << text;
  if (!out) throw InputError("failed writing " + path.string());
}

MatrixFile read_matrix_file(const std::filesystem::path& path) { return matrix_from_json(read_json_file(path)); }

void write_matrix_file(const std::filesystem::path& path, const ComplexMatrix& m, BipartiteIndex idx) {
  write_text_file(path, dump(matrix_to_json(m, idx)));
}

Json state_to_json(const PureBipartiteState& psi) {
  return Json{{"d_a", psi.index().d_a},
              {"d_b", psi.index().d_b},
              {"re", vector_parts(psi.amplitudes(), false)},
              {"im", vector_parts(psi.amplitudes(), true)}};
}

PureBipartiteState state_from_json(const Json& j) {
  const BipartiteIndex idx{positive_int(j, "d_a"), positive_int(j, "d_b")};
  return PureBipartiteState(vector_from_parts(field(j, "re"), field(j, "im"), "state"), idx);
}

Json ensemble_to_json(const PureEnsemble& ens) {
  Json members = Json::array();
  for (const auto& m : ens.members) {
    members.push_back(Json{{"p", m.probability},
                           {"re", vector_parts(m.state.amplitudes(), false)},
                           {"im", vector_parts(m.state.amplitudes(), true)}});
  }
  const BipartiteIndex idx = ens.members.empty() ? BipartiteIndex{} : ens.members.front().state.index();
  return Json{{"d_a", idx.d_a}, {"d_b", idx.d_b}, {"members", std::move(members)}};
}

PureEnsemble ensemble_from_json(const Json& j) {
  const BipartiteIndex idx{positive_int(j, "d_a"), positive_int(j, "d_b")};
  const Json& members = field(j, "members");
  if (!members.is_array()) throw InputError("\"members\" must be an array");
  PureEnsemble ens;
  ens.members.reserve(members.size());
  for (const auto& m : members) {
    ens.members.push_back(
        {number(m, "p"), PureBipartiteState(vector_from_parts(field(m, "re"), field(m, "im"), "member"), idx)});
  }
  return ens;
}

Json certificate_to_json(const Certificate& cert) {
  struct Visitor {
    Json operator()(const MapWitness& w) const {
      Json params{{"map", w.map}, {"n", w.n}, {"k", w.k}, {"p", w.p ? Json(*w.p) : Json(nullptr)}};
      return Json{{"kind", "MapWitness"},
                  {"parameters", std::move(params)},
                  {"evidence", {{"min_eigenvalue", w.min_eigenvalue}, {"implied_lower_bound", w.implied_lower_bound()}}}};
    }
    Json operator()(const FidelityBound& f) const {
      return Json{{"kind", "FidelityBound"},
                  {"parameters", {{"n", f.maximizer.index().d_a}}},
                  {"evidence",
                   {{"f_hat", f.f_hat},
                    {"implied_lower_bound", f.implied_lower_bound},
                    {"maximizer", state_to_json(f.maximizer)}}}};
    }
    Json operator()(const EnsembleUpper& e) const {
      return Json{{"kind", "EnsembleUpper"},
                  {"parameters", {{"k", e.k}, {"tolerance", e.tolerance}}},
                  {"evidence", {{"residual", e.residual}, {"ensemble", ensemble_to_json(e.ensemble)}}}};
    }
    Json operator()(const IsotropicExact& iso) const {
      return Json{{"kind", "IsotropicExact"},
                  {"parameters", {{"n", iso.n}, {"fidelity", iso.fidelity}}},
                  {"evidence", {{"k", iso.k}}}};
    }
  };
  return std::visit(Visitor{}, cert);
}

Certificate certificate_from_json(const Json& j) {
  const Json& kind = field(j, "kind");
  if (!kind.is_string()) throw InputError("certificate kind must be a string");
  const Json& params = field(j, "parameters");
  const Json& evidence = field(j, "evidence");
  const std::string name = kind.get<std::string>();
  if (name == "MapWitness") {
    MapWitness w;
    const Json& map = field(params, "map");
    if (!map.is_string()) throw InputError("MapWitness map must be a string");
    w.map = map.get<std::string>();
    w.n = positive_int(params, "n");
    w.k = positive_int(params, "k");
    if (params.contains("p") && !params.at("p").is_null()) w.p = number(params, "p");
    w.min_eigenvalue = number(evidence, "min_eigenvalue");
    return w;
  }
  if (name == "FidelityBound") {
    const Json& bound = field(evidence, "implied_lower_bound");
    if (!bound.is_number_integer()) throw InputError("implied_lower_bound must be an integer");
    return FidelityBound{number(evidence, "f_hat"), state_from_json(field(evidence, "maximizer")), bound.get<int>()};
  }
  if (name == "EnsembleUpper") {
    return EnsembleUpper{ensemble_from_json(field(evidence, "ensemble")), positive_int(params, "k"),
                         number(evidence, "residual"), number(params, "tolerance")};
  }
  if (name == "IsotropicExact") {
    return IsotropicExact{positive_int(params, "n"), number(params, "fidelity"), positive_int(evidence, "k")};
  }
  throw InputError("unknown certificate kind \"" + name + "\"");
}

Json report_to_json(const SnReport& report) {
  Json certs = Json::array();
  for (const auto& c : report.certificates) certs.push_back(certificate_to_json(c));
  return Json{{"lower_bound", report.lower_bound},
              {"upper_bound", report.upper_bound ? Json(*report.upper_bound) : Json(nullptr)},
              {"certificates", std::move(certs)}};
}

SnReport report_from_json(const Json& j) {
  SnReport report;
  report.lower_bound = positive_int(j, "lower_bound");
  const Json& upper = field(j, "upper_bound");
  if (!upper.is_null()) report.upper_bound = positive_int(j, "upper_bound");
  const Json& certs = field(j, "certificates");
  if (!certs.is_array()) throw InputError("\"certificates\" must be an array");
  for (const auto& c : certs) report.certificates.push_back(certificate_from_json(c));
  return report;
}

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

}  // namespace schmidtkit::io
